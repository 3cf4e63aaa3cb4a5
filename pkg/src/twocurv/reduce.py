"""Reducibility: classification from links, unfolding, wedge decomposition."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from . import links as lk
from .core import BranchedTwoComplex, Morphism, check, euler_characteristic, restrict, vertex_components
from .fold import _UnionFind, compose, fold


class NotUnfoldable(ValueError):
    pass


class Verdict(Enum):
    VISIBLY_REDUCIBLE = "visibly reducible"
    UNFOLDABLE = "unfoldable"
    VISIBLY_IRREDUCIBLE = "visibly irreducible"


class Reason(Enum):
    ISOLATED_OR_VALENCE_ONE = "isolated or valence-one vertex"
    LOCALLY_SEPARATING_VERTEX = "locally separating vertex"
    FREE_FACE = "free face"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    reason: Reason | None = None
    vertex: int | None = None
    node: int | None = None  # offending link node, when there is one

    def __str__(self) -> str:
        if self.verdict is Verdict.VISIBLY_IRREDUCIBLE:
            return self.verdict.value
        if self.verdict is Verdict.UNFOLDABLE:
            return f"unfoldable at vertex {self.vertex} (cut node {self.node})"
        return f"visibly reducible: {self.reason.value} at vertex {self.vertex}"


def classify(X: BranchedTwoComplex, links=None) -> Classification:
    """Check each link condition over all vertices before moving to the next."""
    if links is None:
        links = lk.all_links(X)
    if not links:
        return Classification(Verdict.VISIBLY_REDUCIBLE, Reason.ISOLATED_OR_VALENCE_ONE)
    for L in links:
        if len(L.nodes) <= 1:
            return Classification(Verdict.VISIBLY_REDUCIBLE, Reason.ISOLATED_OR_VALENCE_ONE, L.vertex)
    for L in links:
        if not lk.is_connected(L):
            return Classification(Verdict.VISIBLY_REDUCIBLE, Reason.LOCALLY_SEPARATING_VERTEX, L.vertex)
    for L in links:
        deg = L.degrees()
        for n in L.nodes:
            if deg[n] == 1:
                return Classification(Verdict.VISIBLY_REDUCIBLE, Reason.FREE_FACE, L.vertex, n)
    for L in links:
        c = lk.has_cut_vertex(L)
        if c is not None:
            return Classification(Verdict.UNFOLDABLE, None, L.vertex, c)
    return Classification(Verdict.VISIBLY_IRREDUCIBLE)


def is_surface(X: BranchedTwoComplex) -> bool:
    return X.n_vertices > 0 and all(lk.is_circle(L) for L in lk.all_links(X))


# ---------------------------------------------------------------- unfolding


def _split_sides(L: lk.Link, c: int):
    """Nodes of L minus c, split into (stay, move); ``move`` is the last
    component in order of least node."""
    adj: dict[int, list[int]] = {n: [] for n in L.nodes}
    for _, u, w in L.edges:
        if c not in (u, w):
            adj[u].append(w)
            adj[w].append(u)
    seen = {c}
    comps = []
    for s in L.nodes:
        if s in seen:
            continue
        seen.add(s)
        comp = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    comp.add(u)
                    queue.append(u)
        comps.append(comp)
    if len(comps) < 2:
        raise NotUnfoldable(f"node {c} does not separate the link of vertex {L.vertex}")
    return comps[-1]


def unfold_at(X: BranchedTwoComplex, v: int, c: int):
    """Split vertex v along the cut node c of its link.

    The darts on one side of the cut move to a new vertex, and the edge of c
    is doubled: traversals of it whose corner at v lies on the moved side
    use the new copy. Returns ``(X', phi)`` with ``phi`` folding the copies
    back together.
    """
    L = lk.build_link(X, v)
    moved = _split_sides(L, c)
    V, D = X.n_vertices, X.n_darts
    rc = X.reverse(c)
    origin = list(X.skeleton.origin)
    for d in moved:
        origin[d] = V
    c2, rc2 = D, D + 1
    origin += [V, origin[rc]]
    reverse = list(X.skeleton.reverse) + [rc2, c2]
    faces = []
    for w in X.faces:
        n = len(w)
        nw = list(w)
        for i, d in enumerate(w):
            if d == c and X.reverse(w[i - 1]) in moved:
                nw[i] = c2
            elif d == rc and w[(i + 1) % n] in moved:
                nw[i] = rc2
        faces.append(nw)
    labels = None
    if X.labels is not None:
        labels = list(X.labels) + [X.labels[c] + "'", X.labels[rc] + "'"]
    Xp = check(BranchedTwoComplex.build(V + 1, origin, reverse, faces, X.areas, labels))
    phi = Morphism(
        Xp, X,
        tuple(range(V)) + (v,),
        tuple(range(D)) + (c, rc),
        tuple(range(X.n_faces)),
        (1,) * X.n_faces,
        (0,) * X.n_faces,
    )
    return Xp, phi


def unfold_step(X: BranchedTwoComplex):
    cl = classify(X)
    if cl.verdict is not Verdict.UNFOLDABLE:
        raise NotUnfoldable(str(cl))
    return unfold_at(X, cl.vertex, cl.node)


class Unfolding(NamedTuple):
    complex: BranchedTwoComplex
    map: Morphism  # complex -> original
    classification: Classification
    steps: int


def unfold(X: BranchedTwoComplex) -> Unfolding:
    """Unfold until the classification is no longer Unfoldable."""
    from .core import identity

    phi = identity(X)
    Y = X
    steps = 0
    while True:
        cl = classify(Y)
        if cl.verdict is not Verdict.UNFOLDABLE:
            return Unfolding(Y, phi, cl, steps)
        Y, psi = unfold_at(Y, cl.vertex, cl.node)
        phi = compose(psi, phi)
        steps += 1


def is_irreducible(X: BranchedTwoComplex) -> bool:
    return unfold(X).classification.verdict is Verdict.VISIBLY_IRREDUCIBLE


# ---------------------------------------------------------------- decomposition


class Factor(NamedTuple):
    kind: str  # "graph", "irreducible" or "disc"
    complex: BranchedTwoComplex
    inclusion: Morphism  # into the unfolded complex


@dataclass(frozen=True)
class Decomposition:
    factors: tuple
    wedges: tuple  # (factor, vertex, factor, vertex) identifications
    unfolded: BranchedTwoComplex
    map: Morphism  # unfolded -> X

    @property
    def graph(self) -> list:
        return [F.complex for F in self.factors if F.kind == "graph"]

    @property
    def irreducibles(self) -> list:
        return [F.complex for F in self.factors if F.kind == "irreducible"]

    @property
    def discs(self) -> list:
        return [F.complex for F in self.factors if F.kind == "disc"]


class _Work:
    """Mutable bookkeeping for decompose: a complex whose vertices carry
    stable ids, together with images in the original complex."""

    def __init__(self, X: BranchedTwoComplex):
        self.X = X
        self.Y = X
        self.vid = list(range(X.n_vertices))
        self.next_id = X.n_vertices
        self.vimg = list(range(X.n_vertices))
        self.dimg = list(range(X.n_darts))
        self.fimg = list(range(X.n_faces))
        self.graph_edges: list = []  # (id_u, id_w, image dart)
        self.points: list = []  # (id, image)
        self.discs: list = []  # (ids of polygon vertices, image darts, face, area)
        self.idents: list = []  # (id, id)

    def fresh(self) -> int:
        self.next_id += 1
        return self.next_id - 1

    def rebuild(self, n_vertices, origin, reverse, faces, areas, keep_v, keep_d, keep_f):
        self.Y = check(BranchedTwoComplex.build(n_vertices, origin, reverse, faces, areas))
        self.vid = [self.vid[v] if v is not None else None for v in keep_v]
        self.vimg = [self.vimg[v] if v is not None else None for v in keep_v]
        self.dimg = [self.dimg[d] for d in keep_d]
        self.fimg = [self.fimg[f] for f in keep_f]

    def remove(self, dead_vertices=(), dead_darts=(), dead_faces=()):
        Y = self.Y
        dv, dd, df = set(dead_vertices), set(dead_darts), set(dead_faces)
        keep_v = [v for v in range(Y.n_vertices) if v not in dv]
        keep_d = [d for d in range(Y.n_darts) if d not in dd]
        keep_f = [f for f in range(Y.n_faces) if f not in df]
        vnew = {v: i for i, v in enumerate(keep_v)}
        dnew = {d: i for i, d in enumerate(keep_d)}
        self.rebuild(
            len(keep_v),
            [vnew[Y.origin(d)] for d in keep_d],
            [dnew[Y.reverse(d)] for d in keep_d],
            [[dnew[d] for d in Y.faces[f]] for f in keep_f],
            [Y.areas[f] for f in keep_f],
            keep_v, keep_d, keep_f,
        )

    def split(self, L: lk.Link):
        """Give each component of a disconnected link its own vertex."""
        Y = self.Y
        comps = lk.components(L)
        origin = list(Y.skeleton.origin)
        n = Y.n_vertices
        keep_v = list(range(n))
        for comp in comps[1:]:
            for d in comp:
                origin[d] = n
            keep_v.append(L.vertex)
            n += 1
        old_id = self.vid[L.vertex]
        self.rebuild(
            n, origin, Y.skeleton.reverse, Y.faces, Y.areas,
            keep_v, range(Y.n_darts), range(Y.n_faces),
        )
        for k in range(Y.n_vertices, n):
            self.vid[k] = self.fresh()
            self.idents.append((old_id, self.vid[k]))

    def strip_vertex(self, v: int):
        Y = self.Y
        darts = Y.skeleton.darts_at(v)
        if not darts:
            self.points.append((self.vid[v], self.vimg[v]))
            self.remove(dead_vertices=[v])
            return
        (d,) = darts
        self.graph_edges.append((self.vid[v], self.vid[Y.terminus(d)], self.dimg[d]))
        self.remove(dead_vertices=[v], dead_darts=[d, Y.reverse(d)])

    def collapse_free_face(self, node: int):
        Y = self.Y
        edge = {node, Y.reverse(node)}
        (f,) = {f for f, w in enumerate(Y.faces) if edge & set(w)}
        w = Y.faces[f]
        ids = [self.fresh() for _ in w]
        self.discs.append((ids, [self.dimg[d] for d in w], self.fimg[f], Y.areas[f]))
        self.idents.append((self.vid[Y.origin(w[0])], ids[0]))
        self.remove(dead_darts=edge, dead_faces=[f])

    def unfold(self, v: int, c: int):
        Y = self.Y
        rc = Y.reverse(c)
        Yp, _ = unfold_at(Y, v, c)
        self.Y = Yp
        self.vid.append(self.fresh())
        self.vimg.append(self.vimg[v])
        self.dimg += [self.dimg[c], self.dimg[rc]]


def decompose(X: BranchedTwoComplex) -> Decomposition:
    """Write X, up to essential equivalence, as a wedge of graphs,
    visibly irreducible complexes and simple discs."""
    W = _Work(X)
    while W.Y.n_vertices:
        cl = classify(W.Y)
        if cl.verdict is Verdict.VISIBLY_IRREDUCIBLE:
            break
        if cl.verdict is Verdict.UNFOLDABLE:
            W.unfold(cl.vertex, cl.node)
        elif cl.reason is Reason.ISOLATED_OR_VALENCE_ONE:
            W.strip_vertex(cl.vertex)
        elif cl.reason is Reason.LOCALLY_SEPARATING_VERTEX:
            W.split(lk.build_link(W.Y, cl.vertex))
        else:
            W.collapse_free_face(cl.node)
    return _assemble(X, W)


def _assemble(X: BranchedTwoComplex, W: _Work) -> Decomposition:
    # Each factor is (kind, n_vertices, origin, reverse, faces, areas,
    # vertex ids, vertex images, dart images, face images).
    raw = []
    Y = W.Y
    for comp in vertex_components(Y):
        R = restrict(Y, comp)
        raw.append((
            "irreducible", R.complex,
            [W.vid[v] for v in R.vertices], [W.vimg[v] for v in R.vertices],
            [W.dimg[d] for d in R.darts], [W.fimg[f] for f in R.faces],
        ))
    for ids, dimgs, fimg, a in W.discs:
        n = len(ids)
        origin, reverse = [], []
        for i in range(n):
            origin += [i, (i + 1) % n]
            reverse += [2 * i + 1, 2 * i]
        D = BranchedTwoComplex.build(n, origin, reverse, [[2 * i for i in range(n)]], [a])
        images = []
        for x in dimgs:
            images += [x, X.reverse(x)]
        raw.append(("disc", D, ids, [X.origin(x) for x in dimgs], images, [fimg]))
    for u, w, x in W.graph_edges:
        E = BranchedTwoComplex.build(2, [0, 1], [1, 0])
        raw.append(("graph", E, [u, w], [X.origin(x), X.terminus(x)], [x, X.reverse(x)], []))
    for p, img in W.points:
        P = BranchedTwoComplex.build(1, [], [])
        raw.append(("graph", P, [p], [img], [], []))

    # Shared ids and recorded identifications glue factors together; gluings
    # that would close a loop of factors become extra graph cycles instead.
    slots = []
    where: dict[int, list[int]] = {}
    for k, item in enumerate(raw):
        for i, vid in enumerate(item[2]):
            where.setdefault(vid, []).append(len(slots))
            slots.append((k, i))
    pairs = []
    for vid in sorted(where):
        s = where[vid]
        pairs += [(s[0], t) for t in s[1:]]
    for a, b in W.idents:
        pairs.append((where[a][0], where[b][0]))

    uf = _UnionFind(len(slots))
    fuf = _UnionFind(len(raw))
    wedges, cyclic = [], []
    for a, b in pairs:
        ka, kb = slots[a][0], slots[b][0]
        if fuf.union(ka, kb):
            uf.union(a, b)
            wedges.append((a, b))
        else:
            cyclic.append((a, b))
    if not any(item[0] == "graph" for item in raw) and raw:
        P = BranchedTwoComplex.build(1, [], [])
        raw.append(("graph", P, [-1], [raw[0][3][0]], [], []))
        slots.append((len(raw) - 1, 0))
        uf.parent.append(len(uf.parent))
        uf.union(0, len(slots) - 1)
        wedges.append((0, len(slots) - 1))

    # vertex numbering of the glued complex
    vnum: dict[int, int] = {}
    vimage: list[int] = []
    for s, (k, i) in enumerate(slots):
        r = uf.find(s)
        if r not in vnum:
            vnum[r] = len(vnum)
            vimage.append(raw[k][3][i])
    slot_of = {(k, i): s for s, (k, i) in enumerate(slots)}

    origin, reverse, faces, areas, dimage, fimage = [], [], [], [], [], []
    incl = []
    for k, (kind, C, ids, vimgs, dimgs, fimgs) in enumerate(raw):
        doff = len(origin)
        vm = [vnum[uf.find(slot_of[(k, i)])] for i in range(C.n_vertices)]
        origin += [vm[o] for o in C.skeleton.origin]
        reverse += [doff + r for r in C.skeleton.reverse]
        dimage += dimgs
        foff = len(faces)
        faces += [[doff + d for d in w] for w in C.faces]
        areas += list(C.areas)
        fimage += fimgs
        incl.append((vm, [doff + d for d in range(C.n_darts)], [foff + f for f in range(C.n_faces)]))

    # close each cyclic gluing with a graph loop that follows a path
    # between the two slots in the glued skeleton
    for a, b in cyclic:
        va, vb = vnum[uf.find(a)], vnum[uf.find(b)]
        path = _skeleton_path(len(vimage), origin, reverse, va, vb)
        m = len(path)
        if m == 0:
            continue
        start = len(vimage)
        loop_v = [va] + [start + j for j in range(m - 1)]
        for j in range(m - 1):
            vimage.append(vimage[origin[reverse[path[j]]]])
        doff = len(origin)
        for j, d in enumerate(path):
            u, w = loop_v[j], loop_v[(j + 1) % m]
            origin += [u, w]
            reverse += [doff + 2 * j + 1, doff + 2 * j]
            dimage += [dimage[d], dimage[reverse[d]]]
        C = BranchedTwoComplex.build(m, [x for j in range(m) for x in (j, (j + 1) % m)],
                                     [x for j in range(m) for x in (2 * j + 1, 2 * j)])
        raw.append(("graph", C, [], [], [], []))
        incl.append((loop_v, list(range(doff, doff + 2 * m)), []))
        wedges.append((a, ("loop", len(raw) - 1)))

    # faces are never rotated during the reduction, so offsets are all zero
    Xp = check(BranchedTwoComplex.build(len(vimage), origin, reverse, faces, areas))
    phi = Morphism(Xp, X, tuple(vimage), tuple(dimage), tuple(fimage), (1,) * len(faces), (0,) * len(faces))
    factors = []
    for k, item in enumerate(raw):
        vm, dm, fm = incl[k]
        C = item[1]
        factors.append(Factor(item[0], C, Morphism(C, Xp, tuple(vm), tuple(dm), tuple(fm),
                                                   (1,) * len(fm), (0,) * len(fm))))
    wedge_list = []
    for a, b in wedges:
        ka, ia = slots[a]
        if isinstance(b, tuple):
            wedge_list.append((ka, ia, b[1], 0))
        else:
            kb, ib = slots[b]
            wedge_list.append((ka, ia, kb, ib))
    return Decomposition(tuple(factors), tuple(wedge_list), Xp, phi)


def _skeleton_path(n, origin, reverse, s, t) -> list[int]:
    at: list[list[int]] = [[] for _ in range(n)]
    for d, o in enumerate(origin):
        at[o].append(d)
    prev = {s: None}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        if v == t:
            break
        for d in at[v]:
            u = origin[reverse[d]]
            if u not in prev:
                prev[u] = d
                queue.append(u)
    path = []
    v = t
    while v != s:
        d = prev[v]
        path.append(d)
        v = origin[d]
    return path[::-1]


def irreducible_core(X: BranchedTwoComplex) -> list:
    """Folded images of the irreducible factors, with their immersions into X."""
    dec = decompose(X)
    out = []
    for F in dec.factors:
        if F.kind != "irreducible":
            continue
        res = fold(compose(F.inclusion, dec.map))
        out.append((res.folded, res.tail))
    return out


def chi_check(dec: Decomposition) -> int:
    """Euler characteristic rebuilt from the factors of a wedge."""
    return sum(euler_characteristic(F.complex) - 1 for F in dec.factors) + 1
