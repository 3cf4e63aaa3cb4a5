"""Branched 2-complexes, morphisms between them, and their basic invariants.

Rationals are ``fractions.Fraction``. Angles, lengths and curvatures are
stored as the rational coefficient of pi (so ``Fraction(1, 2)`` is a right
angle); see :data:`PiRational`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import words

Rational = Fraction
# A value c * pi, represented by the coefficient c.
PiRational = Fraction


class ComplexError(ValueError):
    pass


class ZeroArea(ComplexError):
    pass


class EmptySkeleton(ComplexError):
    pass


class DisconnectedComplex(ComplexError):
    pass


@dataclass(frozen=True)
class SerreGraph:
    """Vertices ``0..n_vertices-1`` and darts ``0..len(origin)-1``.

    ``reverse`` is the fixed-point-free involution on darts.
    """

    n_vertices: int
    origin: tuple
    reverse: tuple

    @property
    def n_darts(self) -> int:
        return len(self.origin)

    @property
    def n_edges(self) -> int:
        return len(self.origin) // 2

    def terminus(self, d: int) -> int:
        return self.origin[self.reverse[d]]

    def edge_reps(self) -> list[int]:
        """One dart per edge: the lower-indexed dart of each pair."""
        return [d for d in range(self.n_darts) if d < self.reverse[d]]

    def darts_at(self, v: int) -> list[int]:
        return [d for d in range(self.n_darts) if self.origin[d] == v]


@dataclass(frozen=True)
class BranchedTwoComplex:
    skeleton: SerreGraph
    faces: tuple
    areas: tuple
    # display names for darts; ignored by equality
    labels: tuple | None = field(default=None, compare=False)

    @classmethod
    def build(cls, n_vertices, origin, reverse, faces=(), areas=None, labels=None):
        faces = tuple(tuple(int(d) for d in w) for w in faces)
        if areas is None:
            areas = (1,) * len(faces)
        return cls(
            SerreGraph(int(n_vertices), tuple(origin), tuple(reverse)),
            faces,
            tuple(int(a) for a in areas),
            tuple(labels) if labels is not None else None,
        )

    @property
    def n_vertices(self) -> int:
        return self.skeleton.n_vertices

    @property
    def n_darts(self) -> int:
        return self.skeleton.n_darts

    @property
    def n_edges(self) -> int:
        return self.skeleton.n_edges

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def origin(self, d: int) -> int:
        return self.skeleton.origin[d]

    def reverse(self, d: int) -> int:
        return self.skeleton.reverse[d]

    def terminus(self, d: int) -> int:
        return self.skeleton.terminus(d)

    def corners(self):
        for f, w in enumerate(self.faces):
            for i in range(len(w)):
                yield (f, i)

    def corner_vertex(self, corner) -> int:
        f, i = corner
        return self.terminus(self.faces[f][i])

    def dart_name(self, d: int) -> str:
        if self.labels is not None:
            return self.labels[d]
        return str(d)


class Corner(NamedTuple):
    face: int
    position: int


def validate(X: BranchedTwoComplex) -> list[str]:
    """Return one diagnostic string per violated invariant (empty if valid)."""
    out: list[str] = []
    G = X.skeleton
    nd = G.n_darts
    if len(G.reverse) != nd:
        out.append("reverse has wrong length")
        return out
    for d in range(nd):
        r = G.reverse[d]
        if not 0 <= r < nd:
            out.append(f"dart {d}: reverse out of range")
        elif r == d:
            out.append(f"dart {d}: reverse is a fixed point")
        elif G.reverse[r] != d:
            out.append(f"dart {d}: reverse is not an involution")
        if not 0 <= G.origin[d] < G.n_vertices:
            out.append(f"dart {d}: origin out of range")
    if out:
        return out
    if X.labels is not None and len(X.labels) != nd:
        out.append("labels have wrong length")
    if len(X.areas) != len(X.faces):
        out.append("areas and faces differ in length")
    for f, w in enumerate(X.faces):
        if not w:
            out.append(f"face {f}: empty word")
            continue
        if any(not 0 <= d < nd for d in w):
            out.append(f"face {f}: dart out of range")
            continue
        # one diagnostic per kind of violation: the first offending position
        n = len(w)
        gaps = [i for i in range(n) if G.terminus(w[i]) != G.origin[w[(i + 1) % n]]]
        backs = [i for i in range(n) if w[(i + 1) % n] == G.reverse[w[i]]]
        if gaps:
            out.append(f"face {f}: not closed at position {gaps[0]}")
        if backs:
            out.append(f"face {f}: backtracking at position {backs[0]}")
    for f, a in enumerate(X.areas):
        if a <= 0:
            out.append(f"face {f}: nonpositive area")
    return out


def check(X: BranchedTwoComplex) -> BranchedTwoComplex:
    problems = validate(X)
    if problems:
        raise ComplexError("; ".join(problems))
    return X


# ---------------------------------------------------------------- invariants


def area(X: BranchedTwoComplex) -> int:
    return sum(X.areas)


def chi_skeleton(X: BranchedTwoComplex) -> int:
    return X.n_vertices - X.n_edges


def euler_characteristic(X: BranchedTwoComplex) -> int:
    return X.n_vertices - X.n_edges + X.n_faces


def total_curvature(X: BranchedTwoComplex) -> int:
    return area(X) + chi_skeleton(X)


def average_curvature(X: BranchedTwoComplex) -> Fraction:
    a = area(X)
    if a == 0:
        raise ZeroArea("average curvature needs at least one face")
    return Fraction(total_curvature(X), a)


def deficiency(X: BranchedTwoComplex) -> int:
    return 1 - euler_characteristic(X)


def vertex_components(X: BranchedTwoComplex) -> list[list[int]]:
    """Connected components of the 1-skeleton, each sorted, ordered by least vertex."""
    G = X.skeleton
    adj: list[list[int]] = [[] for _ in range(G.n_vertices)]
    for d in range(G.n_darts):
        adj[G.origin[d]].append(G.terminus(d))
    seen = [False] * G.n_vertices
    comps = []
    for s in range(G.n_vertices):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        comps.append(sorted(comp))
    return comps


def is_connected(X: BranchedTwoComplex) -> bool:
    return len(vertex_components(X)) == 1


class Restriction(NamedTuple):
    complex: BranchedTwoComplex
    vertices: tuple  # new index -> old vertex
    darts: tuple  # new index -> old dart
    faces: tuple  # new index -> old face


def restrict(X: BranchedTwoComplex, vertices) -> Restriction:
    """Subcomplex spanned by a union of components (given by their vertices)."""
    vs = sorted(set(vertices))
    vnew = {v: i for i, v in enumerate(vs)}
    darts = [d for d in range(X.n_darts) if X.origin(d) in vnew]
    dnew = {d: i for i, d in enumerate(darts)}
    faces = [f for f, w in enumerate(X.faces) if X.origin(w[0]) in vnew]
    Y = BranchedTwoComplex.build(
        len(vs),
        [vnew[X.origin(d)] for d in darts],
        [dnew[X.reverse(d)] for d in darts],
        [[dnew[d] for d in X.faces[f]] for f in faces],
        [X.areas[f] for f in faces],
        [X.labels[d] for d in darts] if X.labels is not None else None,
    )
    return Restriction(Y, tuple(vs), tuple(darts), tuple(faces))


def components(X: BranchedTwoComplex) -> list[Restriction]:
    return [restrict(X, c) for c in vertex_components(X)]


def disjoint_union(parts: Sequence[BranchedTwoComplex]) -> BranchedTwoComplex:
    origin, reverse, faces, areas, labels = [], [], [], [], []
    voff = doff = 0
    has_labels = all(P.labels is not None for P in parts)
    for P in parts:
        origin += [voff + o for o in P.skeleton.origin]
        reverse += [doff + r for r in P.skeleton.reverse]
        faces += [[doff + d for d in w] for w in P.faces]
        areas += list(P.areas)
        if has_labels:
            labels += list(P.labels)
        voff += P.n_vertices
        doff += P.n_darts
    return BranchedTwoComplex.build(voff, origin, reverse, faces, areas, labels if has_labels else None)


# ---------------------------------------------------------------- builders


def presentation_complex(n_gens: int, relators, areas=None) -> BranchedTwoComplex:
    """One-vertex complex of a presentation; relators are words (tuples of ±k).

    Generator k uses darts 2(k-1) (forward) and 2(k-1)+1 (inverse).
    """
    origin = [0] * (2 * n_gens)
    reverse = []
    labels = []
    for i in range(n_gens):
        reverse += [2 * i + 1, 2 * i]
        labels += [words.int_to_letter(i + 1), words.int_to_letter(-(i + 1))]
    faces = [[letter_dart(k) for k in r] for r in relators]
    return check(BranchedTwoComplex.build(1, origin, reverse, faces, areas, labels))


def letter_dart(k: int) -> int:
    return 2 * (k - 1) if k > 0 else 2 * (-k - 1) + 1


def dart_letter(d: int) -> int:
    return d // 2 + 1 if d % 2 == 0 else -(d // 2 + 1)


def rose(n_gens: int) -> BranchedTwoComplex:
    return presentation_complex(n_gens, [])


def subdivide(X: BranchedTwoComplex) -> BranchedTwoComplex:
    """Put a new vertex at the midpoint of every edge.

    Edge with representative dart d (origin u, terminus w) becomes darts
    4e: u->m, 4e+1: m->u, 4e+2: m->w, 4e+3: w->m where m = V + e.
    """
    G = X.skeleton
    reps = G.edge_reps()
    origin = [0] * (4 * len(reps))
    reverse = [0] * (4 * len(reps))
    halves: dict[int, tuple[int, int]] = {}
    labels = [] if X.labels is not None else None
    for e, d in enumerate(reps):
        m = G.n_vertices + e
        base = 4 * e
        origin[base:base + 4] = [G.origin[d], m, m, G.terminus(d)]
        reverse[base:base + 4] = [base + 1, base, base + 3, base + 2]
        halves[d] = (base, base + 2)
        halves[G.reverse[d]] = (base + 3, base + 1)
        if labels is not None:
            a, b = X.labels[d], X.labels[G.reverse[d]]
            labels += [a + "1", b + "1", a + "2", b + "2"]
    faces = [[h for d in w for h in halves[d]] for w in X.faces]
    return BranchedTwoComplex.build(G.n_vertices + len(reps), origin, reverse, faces, X.areas, labels)


# ---------------------------------------------------------------- group pairs


@dataclass(frozen=True)
class GroupPair:
    rank: int
    classes: tuple  # of (word, area)


def _basis_words(X: BranchedTwoComplex, comp: list[int]):
    """Spanning tree of a component; returns (rank, dart -> letter or 0)."""
    G = X.skeleton
    root = comp[0]
    tree: set[int] = set()
    seen = {root}
    queue = deque([root])
    at: dict[int, list[int]] = {}
    for d in range(G.n_darts):
        at.setdefault(G.origin[d], []).append(d)
    while queue:
        v = queue.popleft()
        for d in at.get(v, []):
            u = G.terminus(d)
            if u not in seen:
                seen.add(u)
                tree.add(d)
                tree.add(G.reverse[d])
                queue.append(u)
    letter: dict[int, int] = {}
    k = 0
    for d in range(G.n_darts):
        if G.origin[d] not in seen or d in tree or d > G.reverse[d]:
            continue
        k += 1
        letter[d] = k
        letter[G.reverse[d]] = -k
    return k, letter


def group_pair(X: BranchedTwoComplex, per_component: bool = False):
    """Free group rank and face conjugacy classes, via a spanning tree.

    With ``per_component`` a list of pairs (one per component) is returned.
    """
    if X.n_vertices == 0:
        raise EmptySkeleton("complex has no vertices")
    comps = vertex_components(X)
    if len(comps) > 1 and not per_component:
        raise DisconnectedComplex(f"complex has {len(comps)} components")
    out = []
    for comp in comps:
        rank, letter = _basis_words(X, comp)
        cs = set(comp)
        classes = []
        for f, w in enumerate(X.faces):
            if X.origin(w[0]) not in cs:
                continue
            word = words.cyclic_reduce(letter[d] for d in w if d in letter)
            classes.append((word, X.areas[f]))
        out.append(GroupPair(rank, tuple(classes)))
    return out if per_component else out[0]


def _face_classes(X: BranchedTwoComplex):
    """(component index, reduced word) per face, for conjugacy comparisons."""
    comps = vertex_components(X)
    where = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            where[v] = ci
    letters = [_basis_words(X, comp)[1] for comp in comps]
    out = []
    for w in X.faces:
        ci = where[X.origin(w[0])]
        out.append((ci, words.cyclic_reduce(letters[ci][d] for d in w if d in letters[ci])))
    return out


class ConciseWitness(NamedTuple):
    kind: str  # "proper_power" or "shared_root"
    faces: tuple


def is_concise(X: BranchedTwoComplex):
    """(True, None) or (False, witness).

    Roots are compared up to conjugacy *and* inversion, so a relator and the
    inverse of another count as the same attaching map.
    """
    classes = _face_classes(X)
    roots = []
    for f, (ci, w) in enumerate(classes):
        if not w:
            return False, ConciseWitness("proper_power", (f,))
        pp = words.is_proper_power(w)
        if pp is not None:
            return False, ConciseWitness("proper_power", (f,))
        roots.append((ci, words.cyclic_canonical(w, allow_inversion=True)))
    first: dict = {}
    for f, key in enumerate(roots):
        if key in first:
            return False, ConciseWitness("shared_root", (first[key], f))
        first[key] = f
    return True, None


# ---------------------------------------------------------------- morphisms


class MismatchedComplexes(ComplexError):
    pass


@dataclass(frozen=True)
class Morphism:
    """Combinatorial map of complexes.

    Face f maps to ``face_map[f]`` with ``multiplicity[f]``; position 0 of f's
    word lands on position ``offset[f]`` of the target word.
    """

    source: BranchedTwoComplex
    target: BranchedTwoComplex
    vertex_map: tuple
    dart_map: tuple
    face_map: tuple
    multiplicity: tuple
    offset: tuple

    @classmethod
    def build(cls, source, target, vertex_map, dart_map, face_map=(), multiplicity=None, offset=None):
        vertex_map, dart_map, face_map = tuple(vertex_map), tuple(dart_map), tuple(face_map)
        if multiplicity is None:
            multiplicity = tuple(
                len(source.faces[f]) // len(target.faces[g]) for f, g in enumerate(face_map)
            )
        if offset is None:
            offset = tuple(
                _find_offset(source, target, dart_map, f, g) for f, g in enumerate(face_map)
            )
        return cls(source, target, vertex_map, dart_map, face_map, tuple(multiplicity), tuple(offset))


def _find_offset(source, target, dart_map, f, g) -> int:
    img = [dart_map[d] for d in source.faces[f]]
    tw = target.faces[g]
    n = len(tw)
    for o in range(n):
        if all(img[i] == tw[(i + o) % n] for i in range(len(img))):
            return o
    return 0


def morphism_problems(phi: Morphism) -> list[str]:
    Y, X = phi.source, phi.target
    out = []
    if len(phi.vertex_map) != Y.n_vertices or len(phi.dart_map) != Y.n_darts:
        return ["map sizes do not match the source"]
    if len(phi.face_map) != Y.n_faces:
        return ["face map size does not match the source"]
    for d in range(Y.n_darts):
        e = phi.dart_map[d]
        if phi.dart_map[Y.reverse(d)] != X.reverse(e):
            out.append(f"dart {d}: does not commute with reverse")
        if phi.vertex_map[Y.origin(d)] != X.origin(e):
            out.append(f"dart {d}: does not commute with origin")
    for f, w in enumerate(Y.faces):
        g, m, o = phi.face_map[f], phi.multiplicity[f], phi.offset[f]
        tw = X.faces[g]
        if m < 1:
            out.append(f"face {f}: multiplicity must be positive")
            continue
        if Y.areas[f] != m * X.areas[g]:
            out.append(f"face {f}: area is not multiplicity times target area")
        if len(w) != m * len(tw) or any(
            phi.dart_map[w[i]] != tw[(i + o) % len(tw)] for i in range(len(w))
        ):
            out.append(f"face {f}: boundary does not wrap the target face")
    return out


def identity(X: BranchedTwoComplex) -> Morphism:
    return Morphism(
        X, X,
        tuple(range(X.n_vertices)),
        tuple(range(X.n_darts)),
        tuple(range(X.n_faces)),
        (1,) * X.n_faces,
        (0,) * X.n_faces,
    )


def is_isomorphism(phi: Morphism) -> bool:
    return (
        sorted(phi.vertex_map) == list(range(phi.target.n_vertices))
        and sorted(phi.dart_map) == list(range(phi.target.n_darts))
        and sorted(phi.face_map) == list(range(phi.target.n_faces))
        and all(m == 1 for m in phi.multiplicity)
    )
