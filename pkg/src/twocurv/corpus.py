"""Standard example complexes."""
from __future__ import annotations

from itertools import combinations, product

from . import words
from .core import BranchedTwoComplex, Morphism, check, presentation_complex


def from_relators(n_gens: int, *relators: str, areas=None) -> BranchedTwoComplex:
    return presentation_complex(n_gens, [words.from_string(r) for r in relators], areas)


def sphere(n: int = 1) -> BranchedTwoComplex:
    """Sphere X_n: an n-gon equator with two discs, each of area n."""
    origin, reverse = [], []
    for i in range(n):
        origin += [i, (i + 1) % n]
        reverse += [2 * i + 1, 2 * i]
    word = [2 * i for i in range(n)]
    labels = [x for i in range(n) for x in (f"e{i}", f"E{i}")]
    return check(BranchedTwoComplex.build(n, origin, reverse, [word, word], [n, n], labels))


def sphere_cover(big: int, small: int = 1) -> Morphism:
    """The branched covering X_big -> X_small wrapping the equator."""
    if big % small:
        raise ValueError("degree must divide")
    Y, X = sphere(big), sphere(small)
    vmap = [i % small for i in range(big)]
    dmap = [2 * (i % small) + s for i in range(big) for s in (0, 1)]
    k = big // small
    return Morphism(Y, X, tuple(vmap), tuple(dmap), (0, 1), (k, k), (0, 0))


def torus() -> BranchedTwoComplex:
    return from_relators(2, "abAB")


def n_torus(n: int) -> BranchedTwoComplex:
    rels = []
    for i, j in combinations(range(1, n + 1), 2):
        rels.append(words.to_string((i, j, -i, -j)))
    return from_relators(n, *rels)


def cube() -> BranchedTwoComplex:
    """2-skeleton of the unit cube; darts labelled by their axis direction."""
    verts = list(product((0, 1), repeat=3))
    index = {v: i for i, v in enumerate(verts)}
    origin, reverse, labels = [], [], []
    dart = {}
    for v in verts:
        for axis in range(3):
            if v[axis] == 0:
                u = list(v)
                u[axis] = 1
                u = tuple(u)
                d = len(origin)
                origin += [index[v], index[u]]
                reverse += [d + 1, d]
                labels += ["abc"[axis], "ABC"[axis]]
                dart[(v, u)] = d
                dart[(u, v)] = d + 1
    faces = []
    for x, y in combinations(range(3), 2):
        z = 3 - x - y
        for level in (0, 1):
            p = [0, 0, 0]
            p[z] = level
            path = [tuple(p)]
            for axis, step in ((x, 1), (y, 1), (x, -1), (y, -1)):
                q = list(path[-1])
                q[axis] += step
                path.append(tuple(q))
            faces.append([dart[(path[i], path[i + 1])] for i in range(4)])
    return check(BranchedTwoComplex.build(8, origin, reverse, faces, None, labels))


def labelled_map(Y: BranchedTwoComplex, X: BranchedTwoComplex) -> Morphism:
    """The map sending every dart of Y to the dart of X with the same label.

    X must have one vertex; each face of Y must read a face word of X exactly.
    """
    if X.n_vertices != 1:
        raise ValueError("target must have a single vertex")
    dmap = [X.labels.index(Y.labels[d]) for d in range(Y.n_darts)]
    faces = []
    for w in Y.faces:
        img = tuple(dmap[d] for d in w)
        faces.append(next(g for g, tw in enumerate(X.faces) if tw == img))
    return Morphism.build(Y, X, [0] * Y.n_vertices, dmap, faces)


def cube_immersion() -> Morphism:
    """The cube 2-skeleton mapped onto the 3-torus complex by axis labels."""
    return labelled_map(cube(), n_torus(3))


def manning() -> BranchedTwoComplex:
    return from_relators(3, "bbaaccabc")


def tripus() -> BranchedTwoComplex:
    return from_relators(3, "aBAbCBcAC")


def trefoil() -> BranchedTwoComplex:
    return from_relators(2, "aaBBB")


def f2xf2() -> BranchedTwoComplex:
    return from_relators(4, "acAC", "adAD", "bcBC", "bdBD")


def baumslag_solitar(m: int = 2, n: int = 3) -> BranchedTwoComplex:
    return from_relators(2, "b" + "a" * m + "B" + "A" * n)


def brady_crisp() -> BranchedTwoComplex:
    return from_relators(2, "abaaBB")


def miller_schupp() -> BranchedTwoComplex:
    return from_relators(2, "baBAA", "b")


def disc() -> BranchedTwoComplex:
    return from_relators(1, "a")


CORPUS = {
    "sphere": sphere,
    "torus": torus,
    "three_torus": lambda: n_torus(3),
    "four_torus": lambda: n_torus(4),
    "five_torus": lambda: n_torus(5),
    "f2xf2": f2xf2,
    "trefoil": trefoil,
    "bs23": baumslag_solitar,
    "brady_crisp": brady_crisp,
    "tripus": tripus,
    "manning": manning,
    "miller_schupp": miller_schupp,
    "cube": cube,
}
