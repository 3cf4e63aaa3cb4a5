"""Stallings folding of morphisms and the classification of maps."""
from __future__ import annotations

from typing import NamedTuple

from . import words
from .core import BranchedTwoComplex, MismatchedComplexes, Morphism, vertex_components


class FoldResult(NamedTuple):
    head: Morphism  # Y -> Ybar, surjective on fundamental groups
    folded: BranchedTwoComplex  # Ybar
    tail: Morphism  # Ybar -> X, a branched immersion


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def fold_vertex_classes(Y: BranchedTwoComplex, dart_map, uf: _UnionFind | None = None) -> _UnionFind:
    """Close a vertex partition under folding: darts with a common origin
    class and a common image must share a terminus class."""
    if uf is None:
        uf = _UnionFind(Y.n_vertices)
    changed = True
    while changed:
        changed = False
        table: dict = {}
        for d in range(Y.n_darts):
            key = (uf.find(Y.origin(d)), dart_map[d])
            t = uf.find(Y.terminus(d))
            seen = table.get(key)
            if seen is None:
                table[key] = t
            elif uf.find(seen) != t:
                uf.union(seen, t)
                changed = True
    return uf


def quotient_fold(phi: Morphism, uf: _UnionFind) -> FoldResult:
    """Fold ``phi`` after first identifying vertices according to ``uf``."""
    Y, X = phi.source, phi.target
    fold_vertex_classes(Y, phi.dart_map, uf)

    vclass: dict[int, int] = {}
    vmap0 = []
    for v in range(Y.n_vertices):
        r = uf.find(v)
        if r not in vclass:
            vclass[r] = len(vclass)
        vmap0.append(vclass[r])
    vbar_image = [0] * len(vclass)
    for v in range(Y.n_vertices):
        vbar_image[vmap0[v]] = phi.vertex_map[v]

    dclass: dict[tuple, int] = {}
    dmap0 = []
    for d in range(Y.n_darts):
        key = (vmap0[Y.origin(d)], phi.dart_map[d])
        if key not in dclass:
            dclass[key] = len(dclass)
        dmap0.append(dclass[key])
    nbar = len(dclass)
    origin = [0] * nbar
    reverse = [0] * nbar
    dbar_image = [0] * nbar
    for d in range(Y.n_darts):
        k = dmap0[d]
        origin[k] = vmap0[Y.origin(d)]
        reverse[k] = dmap0[Y.reverse(d)]
        dbar_image[k] = phi.dart_map[d]

    faces, areas, fbar_target, fbar_mult, fbar_off = [], [], [], [], []
    fkey: dict = {}
    fmap0, mult0, off0 = [], [], []
    for f, w in enumerate(Y.faces):
        g, o = phi.face_map[f], phi.offset[f]
        ng = len(X.faces[g])
        s = tuple((dmap0[w[i]], (i + o) % ng) for i in range(len(w)))
        ell = words.minimal_period(s)
        core = s[:ell]
        rots = words.rotations(core)
        best = min(rots)
        r = rots.index(best)
        key = (g, best)
        if key not in fkey:
            fkey[key] = len(faces)
            faces.append([x[0] for x in best])
            m = ell // ng
            areas.append(m * X.areas[g])
            fbar_target.append(g)
            fbar_mult.append(m)
            fbar_off.append(best[0][1])
        fmap0.append(fkey[key])
        mult0.append(len(w) // ell)
        off0.append((-r) % ell)

    Ybar = BranchedTwoComplex.build(
        len(vclass), origin, reverse, faces, areas,
        [X.labels[x] for x in dbar_image] if X.labels is not None else None,
    )
    head = Morphism(Y, Ybar, tuple(vmap0), tuple(dmap0), tuple(fmap0), tuple(mult0), tuple(off0))
    tail = Morphism(
        Ybar, X, tuple(vbar_image), tuple(dbar_image), tuple(fbar_target), tuple(fbar_mult), tuple(fbar_off)
    )
    return FoldResult(head, Ybar, tail)


def fold(phi: Morphism) -> FoldResult:
    return quotient_fold(phi, _UnionFind(phi.source.n_vertices))


def is_branched_immersion(phi: Morphism) -> bool:
    Y, X = phi.source, phi.target
    seen = set()
    for d in range(Y.n_darts):
        key = (Y.origin(d), phi.dart_map[d])
        if key in seen:
            return False
        seen.add(key)
    seen = set()
    for f, w in enumerate(Y.faces):
        g, o = phi.face_map[f], phi.offset[f]
        ng = len(X.faces[g])
        for i in range(len(w)):
            key = (Y.terminus(w[i]), g, (i + o) % ng)
            if key in seen:
                return False
            seen.add(key)
    return True


def is_branched_covering(phi: Morphism):
    """Degree of the covering, or None."""
    if not is_branched_immersion(phi):
        return None
    Y, X = phi.source, phi.target
    ynodes = [0] * Y.n_vertices
    xnodes = [0] * X.n_vertices
    for d in range(Y.n_darts):
        ynodes[Y.origin(d)] += 1
    for d in range(X.n_darts):
        xnodes[X.origin(d)] += 1
    ycorners = [0] * Y.n_vertices
    xcorners = [0] * X.n_vertices
    for w in Y.faces:
        for d in w:
            ycorners[Y.terminus(d)] += 1
    for w in X.faces:
        for d in w:
            xcorners[X.terminus(d)] += 1
    fibre = [0] * X.n_vertices
    for u in range(Y.n_vertices):
        x = phi.vertex_map[u]
        if ynodes[u] != xnodes[x] or ycorners[u] != xcorners[x]:
            return None
        fibre[x] += 1
    if not fibre or len(set(fibre)) != 1 or fibre[0] == 0:
        return None
    return fibre[0]


def _component_ranks(X: BranchedTwoComplex):
    comps = vertex_components(X)
    where = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            where[v] = ci
    edges = [0] * len(comps)
    for d in range(X.n_darts):
        edges[where[X.origin(d)]] += 1
    ranks = [1 - len(comp) + edges[ci] // 2 for ci, comp in enumerate(comps)]
    return where, ranks


def is_essential(phi: Morphism) -> bool:
    head, Ybar, _ = fold(phi)
    Y = phi.source
    if any(m != 1 for m in head.multiplicity):
        return False
    if len(set(head.face_map)) != Y.n_faces:
        return False
    ywhere, yranks = _component_ranks(Y)
    bwhere, branks = _component_ranks(Ybar)
    image: dict[int, int] = {}
    for v in range(Y.n_vertices):
        image[ywhere[v]] = bwhere[head.vertex_map[v]]
    if len(set(image.values())) != len(yranks):
        return False
    return all(yranks[c] == branks[image[c]] for c in range(len(yranks)))


def is_essential_equivalence(phi: Morphism) -> bool:
    from .core import is_isomorphism

    return is_essential(phi) and is_isomorphism(fold(phi).tail)


def compose(psi: Morphism, phi: Morphism) -> Morphism:
    """``phi`` after ``psi``."""
    if psi.target != phi.source:
        raise MismatchedComplexes("target of the first map is not the source of the second")
    X = phi.target
    face_map, mult, off = [], [], []
    for f in range(psi.source.n_faces):
        g = psi.face_map[f]
        h = phi.face_map[g]
        face_map.append(h)
        mult.append(psi.multiplicity[f] * phi.multiplicity[g])
        off.append((psi.offset[f] + phi.offset[g]) % len(X.faces[h]))
    return Morphism(
        psi.source, X,
        tuple(phi.vertex_map[v] for v in psi.vertex_map),
        tuple(phi.dart_map[d] for d in psi.dart_map),
        tuple(face_map), tuple(mult), tuple(off),
    )
