"""Angle structures and the curvature certificates built from them.

All angles and curvatures are rational multiples of pi and are stored as the
rational coefficient. A face with area A, n corners and angle sum alpha has
curvature ``2A - n + alpha``; the ratio ``c / 2A`` is what bounds average
curvature from above.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import links as lk
from .core import BranchedTwoComplex, Morphism, total_curvature
from .lp import Infeasible, LinearProgram  # noqa: F401  (Infeasible is re-exported)


class SystoleTooSmall(ValueError):
    def __init__(self, vertex: int, cycle: list, length):
        super().__init__(f"link of vertex {vertex} has a cycle of length {length}*pi < 2*pi")
        self.vertex, self.cycle, self.length = vertex, cycle, length


class InfiniteGirth(ValueError):
    def __init__(self, vertex: int):
        super().__init__(f"link of vertex {vertex} is a forest")
        self.vertex = vertex


class BudgetExceeded(RuntimeError):
    pass


class SectionCapExceeded(RuntimeError):
    """A link is too large to enumerate its sections."""


@dataclass(frozen=True)
class AngleStructure:
    angles: tuple  # angles[f][i] is the angle at corner (f, i), in units of pi

    def __getitem__(self, corner):
        f, i = corner
        return self.angles[f][i]

    @classmethod
    def uniform(cls, X: BranchedTwoComplex, value) -> "AngleStructure":
        v = Fraction(value)
        return cls(tuple((v,) * len(w) for w in X.faces))

    @classmethod
    def from_function(cls, X: BranchedTwoComplex, fn) -> "AngleStructure":
        return cls(tuple(tuple(Fraction(fn((f, i))) for i in range(len(w))) for f, w in enumerate(X.faces)))

    def problems(self, X: BranchedTwoComplex) -> list[str]:
        if len(self.angles) != X.n_faces or any(
            len(a) != len(w) for a, w in zip(self.angles, X.faces)
        ):
            return ["angle structure does not cover every corner"]
        return [f"corner {(f, i)}: negative angle" for f, a in enumerate(self.angles)
                for i, x in enumerate(a) if x < 0]


def pullback(A: AngleStructure, phi: Morphism) -> AngleStructure:
    X = phi.target
    out = []
    for f, w in enumerate(phi.source.faces):
        g, o = phi.face_map[f], phi.offset[f]
        ng = len(X.faces[g])
        out.append(tuple(A[(g, (i + o) % ng)] for i in range(len(w))))
    return AngleStructure(tuple(out))


def face_curvature(X: BranchedTwoComplex, A: AngleStructure, f: int) -> Fraction:
    return 2 * X.areas[f] - len(X.faces[f]) + sum(A.angles[f], Fraction(0))


def vertex_curvature(S, A: AngleStructure) -> Fraction:
    """For a link or a section: 2 - #nodes + sum over edges of (1 - angle)."""
    return 2 - len(S.nodes) + sum((1 - A[c] for c, _, _ in S.edges), Fraction(0))


def gauss_bonnet_identity(X: BranchedTwoComplex, A: AngleStructure):
    lhs = sum((face_curvature(X, A, f) for f in range(X.n_faces)), Fraction(0))
    lhs += sum((vertex_curvature(L, A) for L in lk.all_links(X)), Fraction(0))
    return lhs, Fraction(2 * total_curvature(X))


def min_systole(X: BranchedTwoComplex, A: AngleStructure):
    """Smallest link systole as ``(value, vertex, cycle corners)``."""
    best = (math.inf, None, [])
    for L in lk.all_links(X):
        value, path = lk.shortest_cycle(L, A)
        if value < best[0]:
            best = (value, L.vertex, [L.edges[k][0] for k in path])
    return best


def is_nonpositively_curved(X: BranchedTwoComplex, A: AngleStructure) -> bool:
    return min_systole(X, A)[0] >= 2 and all(face_curvature(X, A, f) <= 0 for f in range(X.n_faces))


def is_negatively_curved(X: BranchedTwoComplex, A: AngleStructure) -> bool:
    return min_systole(X, A)[0] >= 2 and all(face_curvature(X, A, f) < 0 for f in range(X.n_faces))


def face_bound(X: BranchedTwoComplex, A: AngleStructure) -> Fraction:
    """max over faces of c(f) / (2 Area(f))."""
    if not X.faces:
        raise ValueError("complex has no faces")
    return max(face_curvature(X, A, f) / (2 * X.areas[f]) for f in range(X.n_faces))


def sigma_upper_bound_angles(X: BranchedTwoComplex, A: AngleStructure) -> Fraction:
    value, v, cycle = min_systole(X, A)
    if value < 2:
        raise SystoleTooSmall(v, cycle, value)
    return face_bound(X, A)


def girth_angles(X: BranchedTwoComplex, per_vertex: bool = True) -> AngleStructure:
    """Angle 2/girth at every corner (per vertex, or the global minimum girth)."""
    g = {}
    for L in lk.all_links(X):
        value = lk.girth(L)
        if value == math.inf:
            raise InfiniteGirth(L.vertex)
        g[L.vertex] = value
    if not per_vertex:
        low = min(g.values())
        g = {v: low for v in g}
    return AngleStructure.from_function(X, lambda c: Fraction(2, g[X.corner_vertex(c)]))


def sigma_upper_bound_girth(X: BranchedTwoComplex, per_vertex: bool = True) -> Fraction:
    return sigma_upper_bound_angles(X, girth_angles(X, per_vertex))


# ---------------------------------------------------------------- sections


@dataclass(frozen=True)
class Section:
    vertex: int
    nodes: tuple
    edges: tuple  # of (corner, node, node), a subset of the link's edges


def _admissible(nodes_mask: int, edges, index, cut_free: bool) -> bool:
    """Connected, min degree 2, at least 2 nodes, optionally no cut node."""
    members = [i for i in range(len(index)) if nodes_mask >> i & 1]
    if len(members) < 2:
        return False
    deg = {i: 0 for i in members}
    adj = {i: 0 for i in members}
    for u, w in edges:
        deg[u] += 1
        deg[w] += 1
        adj[u] |= 1 << w
        adj[w] |= 1 << u
    if min(deg.values()) < 2:
        return False
    if not _connected(nodes_mask, adj):
        return False
    if cut_free and len(members) > 2:
        for i in members:
            if not _connected(nodes_mask & ~(1 << i), adj):
                return False
    return True


def _connected(mask: int, adj: dict) -> bool:
    if not mask:
        return True
    start = (mask & -mask).bit_length() - 1
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def best_section(L: lk.Link, A: AngleStructure, cut_free: bool = True, node_cap: int = 16,
                 negative_cap: int = 10):
    """Admissible section of largest vertex curvature, as ``(kappa, Section)``,
    or ``(None, None)`` when the link has no admissible section."""
    nodes = list(L.nodes)
    if len(nodes) > node_cap:
        raise SectionCapExceeded(f"link of vertex {L.vertex} has {len(nodes)} nodes")
    index = {n: i for i, n in enumerate(nodes)}
    edges = [(index[u], index[w], 1 - A[c], k) for k, (c, u, w) in enumerate(L.edges)]
    best = (None, None)
    for mask in range(1, 1 << len(nodes)):
        if mask & (mask - 1) == 0:
            continue
        inside = [e for e in edges if mask >> e[0] & 1 and mask >> e[1] & 1]
        if not _admissible(mask, [(u, w) for u, w, _, _ in inside], index, cut_free):
            continue
        keep = [e for e in inside if e[2] >= 0]
        optional = [e for e in inside if e[2] < 0]
        if len(optional) > negative_cap:
            raise SectionCapExceeded(f"too many obtuse corners at vertex {L.vertex}")
        size = bin(mask).count("1")
        base = 2 - size + sum((e[2] for e in keep), Fraction(0))
        for sub in range(1 << len(optional)):
            chosen = [e for j, e in enumerate(optional) if sub >> j & 1]
            chosen_edges = keep + chosen
            if sub and not _admissible(mask, [(u, w) for u, w, _, _ in chosen_edges], index, cut_free):
                continue
            if not sub and optional and not _admissible(mask, [(u, w) for u, w, _, _ in keep], index, cut_free):
                continue
            kappa = base + sum((e[2] for e in chosen), Fraction(0))
            if best[0] is None or kappa > best[0]:
                S = Section(
                    L.vertex,
                    tuple(nodes[i] for i in range(len(nodes)) if mask >> i & 1),
                    tuple(L.edges[e[3]] for e in sorted(chosen_edges, key=lambda e: e[3])),
                )
                best = (kappa, S)
    return best


def enumerate_sections(L: lk.Link, cut_free: bool = True, node_cap: int = 16):
    """Every admissible section of a link (exponential; for small links)."""
    nodes = list(L.nodes)
    if len(nodes) > node_cap or len(L.edges) > 20:
        raise SectionCapExceeded(f"link of vertex {L.vertex} is too large to list")
    index = {n: i for i, n in enumerate(nodes)}
    E = [(index[u], index[w]) for _, u, w in L.edges]
    for sub in range(1, 1 << len(E)):
        chosen = [k for k in range(len(E)) if sub >> k & 1]
        mask = 0
        for k in chosen:
            mask |= 1 << E[k][0] | 1 << E[k][1]
        if _admissible(mask, [E[k] for k in chosen], index, cut_free):
            yield Section(L.vertex, tuple(nodes[i] for i in range(len(nodes)) if mask >> i & 1),
                          tuple(L.edges[k] for k in chosen))


def rho_upper_bound_sectional(X: BranchedTwoComplex, A: AngleStructure, cut_free: bool = True,
                              node_cap: int = 16):
    """Certified upper bound for the maximal irreducible curvature, or None."""
    try:
        for L in lk.all_links(X):
            kappa, _ = best_section(L, A, cut_free, node_cap)
            if kappa is not None and kappa > 0:
                return None
    except SectionCapExceeded:
        return None
    return face_bound(X, A)


# ---------------------------------------------------------------- optimisation


def optimize_angles(X: BranchedTwoComplex, target: str, cut_free: bool = True, node_cap: int = 16,
                    max_rounds: int = 500):
    """Best angle structure for the sigma or rho certificate, by exact LP.

    Minimises t subject to c(f) <= 2 t Area(f) for every face, angles in
    [0, 2], and either every link cycle having length >= 2 (sigma) or every
    admissible section having curvature <= 0 (rho); the link constraints
    are generated lazily from separation oracles. Returns ``(A, bound)``.
    """
    if target not in ("sigma", "rho"):
        raise ValueError("target must be 'sigma' or 'rho'")
    if not X.faces:
        raise ValueError("complex has no faces")
    corners = list(X.corners())
    col = {c: k for k, c in enumerate(corners)}
    n = len(corners)
    tp, tn = n, n + 1
    lp = LinearProgram(n + 2, [0] * n + [1, -1])
    for k in range(n):
        lp.add_le({k: 1}, 2)
    for f, w in enumerate(X.faces):
        row = {col[(f, i)]: 1 for i in range(len(w))}
        row[tp] = -2 * X.areas[f]
        row[tn] = 2 * X.areas[f]
        lp.add_le(row, len(w) - 2 * X.areas[f])
    links = lk.all_links(X)
    for _ in range(max_rounds):
        _, x = lp.solve()
        A = AngleStructure.from_function(X, lambda c: x[col[c]])
        added = 0
        for L in links:
            if target == "sigma":
                value, path = lk.shortest_cycle(L, A)
                if value < 2:
                    lp.add_ge({col[L.edges[k][0]]: 1 for k in path}, 2)
                    added += 1
            else:
                kappa, S = best_section(L, A, cut_free, node_cap)
                if kappa is not None and kappa > 0:
                    row: dict = {}
                    for c, _, _ in S.edges:
                        row[col[c]] = row.get(col[c], 0) + 1
                    lp.add_ge(row, 2 - len(S.nodes) + len(S.edges))
                    added += 1
        if not added:
            break
    else:
        raise BudgetExceeded("lazy constraint generation did not settle")
    if target == "sigma":
        bound = sigma_upper_bound_angles(X, A)
    else:
        bound = rho_upper_bound_sectional(X, A, cut_free, node_cap)
    if bound != x[tp] - x[tn]:
        raise AssertionError("certificate disagrees with the linear program")
    return A, bound


# ---------------------------------------------------------------- orientation


def find_orientation(X: BranchedTwoComplex, budget: int = 20):
    """Signs e_f with sum e_f Area(f) boundary(f) = 0 over unoriented edges,
    or None. The first face always gets +1."""
    if X.n_faces > budget:
        raise BudgetExceeded(f"{X.n_faces} faces exceeds the orientation budget of {budget}")
    if not X.faces:
        return []
    reps = {d: k for k, d in enumerate(X.skeleton.edge_reps())}
    vecs = []
    for f, w in enumerate(X.faces):
        v: dict[int, int] = {}
        for d in w:
            if d in reps:
                v[reps[d]] = v.get(reps[d], 0) + X.areas[f]
            else:
                e = reps[X.reverse(d)]
                v[e] = v.get(e, 0) - X.areas[f]
        vecs.append({e: c for e, c in v.items() if c})
    F = len(vecs)
    slack = [dict() for _ in range(F + 1)]
    for k in range(F - 1, -1, -1):
        s = dict(slack[k + 1])
        for e, c in vecs[k].items():
            s[e] = s.get(e, 0) + abs(c)
        slack[k] = s
    signs = [0] * F

    def search(k, total):
        if any(abs(c) > slack[k].get(e, 0) for e, c in total.items()):
            return False
        if k == F:
            return True
        for s in ((1,) if k == 0 else (1, -1)):
            nxt = dict(total)
            for e, c in vecs[k].items():
                nxt[e] = nxt.get(e, 0) + s * c
                if not nxt[e]:
                    del nxt[e]
            signs[k] = s
            if search(k + 1, nxt):
                return True
        return False

    return list(signs) if search(0, {}) else None
