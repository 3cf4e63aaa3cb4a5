"""Budgeted search for branched immersions into a complex.

A connected visibly irreducible branched immersion Y -> X has every dart on
some face boundary, so its 1-skeleton is a folded quotient of the disjoint
boundary cycles of its faces. The search therefore picks a multiset of
(face, multiplicity) pairs within the area budget, lays out the boundary
cycles, and walks over set partitions of their vertices. Partitions are
grown vertex by vertex with the fold closure applied after every choice, and
a branch is cut as soon as two corners with the same image meet at a vertex
(every completion would then fail to be an immersion).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import curvature as curv
from . import words
from .core import (
    BranchedTwoComplex,
    Morphism,
    average_curvature,
    identity,
    is_connected,
    presentation_complex,
    rose,
    total_curvature,
)
from .curvature import BudgetExceeded
from .fold import _UnionFind, fold, is_branched_immersion, quotient_fold
from .reduce import Verdict, classify, is_irreducible, is_surface


@dataclass(frozen=True)
class Budget:
    max_area: int
    max_partitions: int = 10**6
    surfaces_only: bool = False
    connected_only: bool = True

    def __post_init__(self):
        if self.max_area < 1 or self.max_partitions < 1:
            raise ValueError("budget values must be positive")


@dataclass(frozen=True)
class Witness:
    complex: BranchedTwoComplex
    map: Morphism
    kappa: Fraction
    tau: int
    is_surface: bool


class WitnessList(list):
    """Witnesses plus a flag saying whether the search ran to completion."""

    exhaustive = True
    partitions = 0


# ---------------------------------------------------------------- boundary cycles


def boundary_cycles(X: BranchedTwoComplex, pieces) -> Morphism:
    """Disjoint boundary cycles for ``pieces`` = [(face, multiplicity)], mapped to X."""
    origin, reverse, faces, areas = [], [], [], []
    vmap, dmap, fmap, mult = [], [], [], []
    base = 0
    for g, m in pieces:
        w = X.faces[g]
        L = m * len(w)
        word = []
        for i in range(L):
            d = len(origin)
            origin += [base + i, base + (i + 1) % L]
            reverse += [d + 1, d]
            e = w[i % len(w)]
            dmap += [e, X.reverse(e)]
            vmap.append(X.origin(e))
            word.append(d)
        faces.append(word)
        areas.append(m * X.areas[g])
        fmap.append(g)
        mult.append(m)
        base += L
    Y0 = BranchedTwoComplex.build(base, origin, reverse, faces, areas)
    return Morphism(Y0, X, tuple(vmap), tuple(dmap), tuple(fmap), tuple(mult), (0,) * len(pieces))


def face_multisets(X: BranchedTwoComplex, max_area: int):
    """Multisets of (face, multiplicity) with total area at most ``max_area``."""
    options = [(g, m) for g in range(X.n_faces) for m in range(1, max_area // X.areas[g] + 1)]

    def grow(start, room, chosen):
        if chosen:
            yield tuple(chosen)
        for k in range(start, len(options)):
            g, m = options[k]
            a = m * X.areas[g]
            if a <= room:
                chosen.append(options[k])
                yield from grow(k, room - a, chosen)
                chosen.pop()

    yield from grow(0, max_area, [])


# ---------------------------------------------------------------- partition search


class _State:
    """Vertex classes of the boundary cycles, closed under folding."""

    __slots__ = ("parent", "out", "corners", "tag", "apart")

    def copy(self):
        s = _State.__new__(_State)
        s.parent = self.parent[:]
        s.out = self.out[:]
        s.corners = self.corners[:]
        s.tag = self.tag[:]
        s.apart = self.apart
        return s

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b, check_corners: bool, max_count) -> bool:
        queue = [(a, b)]
        while queue:
            ra, rb = queue.pop()
            ra, rb = self.find(ra), self.find(rb)
            if ra == rb:
                continue
            if rb < ra:
                ra, rb = rb, ra
            if check_corners and self.corners[ra] & self.corners[rb]:
                return False
            ta, tb = self.tag[ra], self.tag[rb]
            if ta is not None and tb is not None and ta != tb:
                return False
            self.parent[rb] = ra
            self.tag[ra] = ta if ta is not None else tb
            self.corners[ra] |= self.corners[rb]
            merged = dict(self.out[ra])
            for e, (t, c) in self.out[rb].items():
                if e in merged:
                    t2, c2 = merged[e]
                    if c + c2 > max_count:
                        return False
                    merged[e] = (t2, c + c2)
                    queue.append((t, t2))
                else:
                    merged[e] = (t, c)
            self.out[ra] = merged
            self.out[rb] = None
        return all(self.find(u) != self.find(v) for u, v in self.apart)

    def lonely_dart(self):
        """Image and class of the first dart class read by a single corner."""
        for r in range(len(self.parent)):
            if self.parent[r] == r:
                for e, (_, c) in sorted(self.out[r].items()):
                    if c == 1:
                        return r, e
        return None


def _partitions(phi0: Morphism, check_corners: bool, max_count, limit: int, counter: list,
                pair_darts: bool = False):
    """Yield fold-closed vertex partitions of ``phi0.source`` as union-finds.

    With ``pair_darts`` only partitions in which every dart class is read by
    at least two corners are produced: the search first gives each lonely
    dart a partner (branch k merges with the k-th candidate class and keeps
    the earlier candidates apart, so nothing is generated twice) and then
    walks the remaining coarsenings vertex by vertex. ``counter[0]`` counts
    leaves; ``BudgetExceeded`` is raised past ``limit``.
    """
    Y, X = phi0.source, phi0.target
    n = Y.n_vertices
    corner_id = {}
    for g, w in enumerate(X.faces):
        for i in range(len(w)):
            corner_id[(g, i)] = len(corner_id)
    s = _State()
    s.parent = list(range(n))
    s.out = [dict() for _ in range(n)]
    s.corners = [0] * n
    s.tag = [None] * n
    s.apart = ()
    for d in range(Y.n_darts):
        s.out[Y.origin(d)][phi0.dart_map[d]] = (Y.terminus(d), 1)
    for f, w in enumerate(Y.faces):
        g, o = phi0.face_map[f], phi0.offset[f]
        ng = len(X.faces[g])
        for i in range(len(w)):
            bit = 1 << corner_id[(g, (i + o) % ng)]
            v = Y.terminus(w[i])
            if check_corners and s.corners[v] & bit:
                return
            s.corners[v] |= bit
    label = phi0.vertex_map
    blocks: list[int] = []  # representative vertex of each declared block

    def walk(i, state):
        if i == n:
            counter[0] += 1
            if counter[0] > limit:
                raise BudgetExceeded(f"more than {limit} partitions")
            uf = _UnionFind(n)
            for v in range(n):
                uf.union(v, state.find(v))
            yield uf
            return
        r = state.find(i)
        if state.tag[r] is not None:
            yield from walk(i + 1, state)
            return
        for b in blocks:
            if label[b] != label[i]:
                continue
            nxt = state.copy()
            if nxt.union(i, b, check_corners, max_count):
                yield from walk(i + 1, nxt)
        nxt = state.copy()
        nxt.tag[nxt.find(i)] = i
        blocks.append(i)
        yield from walk(i + 1, nxt)
        blocks.pop()

    def pair(state):
        lonely = state.lonely_dart()
        if lonely is None:
            yield from walk(0, state)
            return
        r, e = lonely
        candidates = [c for c in range(n) if state.parent[c] == c and c != r and e in state.out[c]]
        for k, c in enumerate(candidates):
            nxt = state.copy()
            nxt.apart = state.apart + tuple((r, x) for x in candidates[:k])
            if nxt.union(r, c, check_corners, max_count):
                yield from pair(nxt)

    yield from (pair(s) if pair_darts else walk(0, s))


# ---------------------------------------------------------------- canonical forms


def canonical_form(phi: Morphism):
    """Encoding of ``phi`` up to isomorphism over its target.

    Assumes darts at each vertex have distinct images, which holds after
    folding; each connected component is numbered by breadth-first search
    from every possible start and the least encoding wins.
    """
    Y, X = phi.source, phi.target
    out = [sorted((phi.dart_map[d], d) for d in Y.skeleton.darts_at(v)) for v in range(Y.n_vertices)]
    best = None
    for start in range(max(Y.n_vertices, 1)):
        if not Y.n_vertices:
            break
        order = {start: 0}
        queue = [start]
        for v in queue:
            for _, d in out[v]:
                t = Y.terminus(d)
                if t not in order:
                    order[t] = len(order)
                    queue.append(t)
        if len(order) < Y.n_vertices:
            for v in range(Y.n_vertices):
                if v not in order:
                    order[v] = len(order)
        verts = tuple(sorted((order[v], phi.vertex_map[v]) for v in range(Y.n_vertices)))
        darts = tuple(sorted((order[Y.origin(d)], phi.dart_map[d], order[Y.terminus(d)]) for d in range(Y.n_darts)))
        faces = []
        for f, w in enumerate(Y.faces):
            g, o = phi.face_map[f], phi.offset[f]
            ng = len(X.faces[g])
            seq = tuple((order[Y.origin(w[i])], phi.dart_map[w[i]], (i + o) % ng) for i in range(len(w)))
            faces.append((g, Y.areas[f], words.least_rotation(seq)))
        code = (verts, darts, tuple(sorted(faces)))
        if best is None or code < best:
            best = code
    return best


# ---------------------------------------------------------------- witnesses


def _make_witness(Ybar: BranchedTwoComplex, tail: Morphism) -> Witness:
    return Witness(Ybar, tail, average_curvature(Ybar), total_curvature(Ybar), is_surface(Ybar))


def enumerate_witnesses(X: BranchedTwoComplex, budget: Budget, strict: bool = False) -> WitnessList:
    """Connected visibly irreducible branched immersions into X within budget.

    Results are sorted by (area, canonical form). When the partition budget
    runs out the list is marked non-exhaustive, or ``BudgetExceeded`` is
    raised if ``strict``.
    """
    found = {}
    counter = [0]
    exhaustive = True
    max_count = 2 if budget.surfaces_only else math.inf
    try:
        for pieces in face_multisets(X, budget.max_area):
            phi0 = boundary_cycles(X, pieces)
            for uf in _partitions(phi0, True, max_count, budget.max_partitions, counter, True):
                _, Ybar, tail = quotient_fold(phi0, uf)
                if Ybar.n_faces != phi0.source.n_faces:
                    continue
                if budget.connected_only and not is_connected(Ybar):
                    continue
                if classify(Ybar).verdict is not Verdict.VISIBLY_IRREDUCIBLE:
                    continue
                if budget.surfaces_only and not is_surface(Ybar):
                    continue
                key = canonical_form(tail)
                if key not in found:
                    found[key] = _make_witness(Ybar, tail)
    except BudgetExceeded:
        if strict:
            raise
        exhaustive = False
    out = WitnessList(w for _, w in sorted(found.items(), key=lambda kv: (sum(kv[1].complex.areas), kv[0])))
    out.exhaustive = exhaustive
    out.partitions = counter[0]
    return out


# ---------------------------------------------------------------- primitivity rank


def _rank(G: BranchedTwoComplex) -> int:
    return 1 - G.n_vertices + G.n_edges


def wcycle_quotients(w, max_rank: int, ambient_rank: int | None = None):
    """Folded quotients of the w-cycle of rank at most ``max_rank``.

    Yields ``(graph, immersion into the rose, complex, map)`` where the last
    two describe the graph with a disc glued along the image of w, mapped to
    the one-relator complex of w. Ordered by rank, then canonical form.
    """
    w = words.cyclic_reduce(w)
    if not w:
        raise ValueError("word must be nonempty after cyclic reduction")
    if ambient_rank is None:
        ambient_rank = max(abs(x) for x in w)
    X = presentation_complex(ambient_rank, [w])
    R = rose(ambient_rank)
    phi0 = boundary_cycles(X, [(0, 1)])
    seen = {}
    for uf in _partitions(phi0, False, math.inf, math.inf, [0]):
        _, Ybar, tail = quotient_fold(phi0, uf)
        G = BranchedTwoComplex.build(Ybar.n_vertices, Ybar.skeleton.origin, Ybar.skeleton.reverse)
        if _rank(G) > max_rank:
            continue
        to_rose = Morphism(G, R, tail.vertex_map, tail.dart_map, (), (), ())
        key = canonical_form(to_rose)
        if key not in seen:
            seen[key] = (G, to_rose, Ybar, tail)
    for key in sorted(seen, key=lambda k: (_rank(seen[k][0]), k)):
        yield seen[key]


@dataclass(frozen=True)
class PrimitivityRank:
    value: object  # int or math.inf
    witness: Witness | None = None


def primitivity_rank(w, ambient_rank: int) -> PrimitivityRank:
    """Least rank of a w-cycle quotient carrying w imprimitively."""
    w = words.cyclic_reduce(w)
    if not w or max(abs(x) for x in w) > ambient_rank:
        raise ValueError("word must be nonempty and use only the ambient generators")
    for G, _, Y, tail in wcycle_quotients(w, ambient_rank, ambient_rank):
        if is_irreducible(Y):
            return PrimitivityRank(_rank(G), _make_witness(Y, tail))
    return PrimitivityRank(math.inf)


@dataclass(frozen=True)
class Interval:
    lower: object  # Fraction, or -inf when nothing is known
    upper: object  # Fraction, or inf

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def _certified_rho_upper(X: BranchedTwoComplex):
    """Best certified upper bound for the maximal irreducible curvature, or None."""
    best = None
    try:
        best = curv.optimize_angles(X, "rho")[1]
    except (curv.SectionCapExceeded, curv.Infeasible, curv.BudgetExceeded):
        pass
    try:
        g = curv.rho_upper_bound_sectional(X, curv.girth_angles(X))
        if g is not None and (best is None or g < best):
            best = g
    except curv.InfiniteGirth:
        pass
    return best


def stable_primitivity_bounds(w, ambient_rank: int, budget: Budget | None = None) -> Interval:
    w = words.cyclic_reduce(w)
    X = presentation_complex(ambient_rank, [w])
    if budget is None:
        budget = Budget(max_area=1)
    cert = _certified_rho_upper(X)
    lower = 1 - min(Fraction(1), cert) if cert is not None else Fraction(0)
    upper = math.inf
    p = primitivity_rank(w, ambient_rank).value
    if p != math.inf:
        upper = Fraction(p - 1)
    wits = enumerate_witnesses(X, budget)
    if wits:
        upper = min(upper, 1 - max(x.kappa for x in wits))
    return Interval(lower, upper)


# ---------------------------------------------------------------- reports


@dataclass
class Bound:
    lower: object = -math.inf
    upper: object = math.inf
    lower_from: list = field(default_factory=list)
    upper_from: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def raise_lower(self, value, why: str) -> None:
        if value > self.lower:
            self.lower, self.lower_from = value, [why]
        elif value == self.lower and why not in self.lower_from:
            self.lower_from.append(why)

    def lower_upper(self, value, why: str) -> None:
        if value < self.upper:
            self.upper, self.upper_from = value, [why]
        elif value == self.upper and why not in self.upper_from:
            self.upper_from.append(why)


class InconsistentBounds(AssertionError):
    pass


@dataclass
class CurvatureReport:
    kappa: Fraction
    rho_plus: Bound
    rho_minus: Bound
    sigma_plus: Bound
    sigma_minus: Bound
    witnesses: list
    certificates: dict
    exhaustive: bool


def curvature_report(X: BranchedTwoComplex, budget: Budget, extra_witnesses=()) -> CurvatureReport:
    """Two-sided bounds for the four curvature invariants of X.

    ``extra_witnesses`` are checked maps (for example a known surface) that
    are validated and used alongside the enumerated ones.
    """
    rho_p, rho_m, sig_p, sig_m = Bound(), Bound(), Bound(), Bound()
    rho_p.lower_upper(Fraction(1), "trivial inequality")
    sig_p.lower_upper(Fraction(1), "trivial inequality")
    wits = enumerate_witnesses(X, budget)
    exhaustive = wits.exhaustive
    pool = list(wits)
    for phi in extra_witnesses:
        Y = phi.source
        if phi.target != X or not is_branched_immersion(phi) or classify(Y).verdict is not Verdict.VISIBLY_IRREDUCIBLE:
            raise ValueError("extra witness is not a visibly irreducible branched immersion into X")
        pool.append(_make_witness(Y, phi))
    if classify(X).verdict is Verdict.VISIBLY_IRREDUCIBLE and is_connected(X):
        pool.append(_make_witness(X, identity(X)))
    seen, witnesses = set(), []
    for wt in pool:
        key = canonical_form(wt.map)
        if key not in seen:
            seen.add(key)
            witnesses.append(wt)
    for k, wt in enumerate(witnesses):
        tag = f"witness {k} (area {sum(wt.complex.areas)})"
        rho_p.raise_lower(wt.kappa, tag)
        rho_m.lower_upper(wt.kappa, tag)
        if wt.is_surface:
            sig_p.raise_lower(wt.kappa, tag)
            sig_m.lower_upper(wt.kappa, tag)

    certs = {}
    try:
        A, g = curv.optimize_angles(X, "rho")
        certs["rho_lp"] = (A, g)
        if g is not None:
            rho_p.lower_upper(g, "sectional angle structure (lp)")
    except (curv.SectionCapExceeded, curv.Infeasible, curv.BudgetExceeded) as exc:
        certs["rho_lp"] = (None, str(exc))
    try:
        A = curv.girth_angles(X)
        g = curv.sigma_upper_bound_angles(X, A)
        certs["sigma_girth"] = (A, g)
        sig_p.lower_upper(g, "girth angle structure")
        r = curv.rho_upper_bound_sectional(X, A)
        if r is not None:
            rho_p.lower_upper(r, "sectional girth angle structure")
    except (curv.InfiniteGirth, curv.SystoleTooSmall) as exc:
        certs["sigma_girth"] = (None, str(exc))
    try:
        A, g = curv.optimize_angles(X, "sigma")
        certs["sigma_lp"] = (A, g)
        sig_p.lower_upper(g, "systolic angle structure (lp)")
    except (curv.Infeasible, curv.BudgetExceeded) as exc:
        certs["sigma_lp"] = (None, str(exc))
    if rho_p.upper < sig_p.upper:
        sig_p.lower_upper(rho_p.upper, "sigma is at most rho")

    if is_connected(X) and is_surface(X):
        k = average_curvature(X)
        for b in (rho_p, rho_m, sig_p, sig_m):
            b.raise_lower(k, "surfaces are minimal")
            b.lower_upper(k, "surfaces are minimal")

    report = CurvatureReport(average_curvature(X), rho_p, rho_m, sig_p, sig_m, witnesses, certs, exhaustive)
    check_report(report)
    return report


def check_report(r: CurvatureReport) -> None:
    """Every witness value sits below every certified upper bound, and the
    chain sigma_minus <= sigma_plus <= rho_plus <= 1 is not contradicted."""
    for b, name in ((r.rho_plus, "rho_plus"), (r.sigma_plus, "sigma_plus"),
                    (r.rho_minus, "rho_minus"), (r.sigma_minus, "sigma_minus")):
        if b.lower > b.upper:
            raise InconsistentBounds(f"{name}: lower bound {b.lower} exceeds upper bound {b.upper}")
    if r.sigma_plus.lower > r.rho_plus.upper:
        raise InconsistentBounds("a surface witness beats the certified rho_plus bound")
    if r.sigma_minus.lower > r.sigma_plus.upper or r.rho_plus.upper > 1:
        raise InconsistentBounds("curvature chain violated")
    for wt in r.witnesses:
        if wt.kappa > r.rho_plus.upper or (wt.is_surface and wt.kappa > r.sigma_plus.upper):
            raise InconsistentBounds("a witness exceeds a certified upper bound")
