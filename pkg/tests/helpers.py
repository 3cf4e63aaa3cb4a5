"""Small builders for hand-made fixtures."""
from twocurv.core import BranchedTwoComplex, check


def from_polygons(n_vertices, ends, polygons):
    """Complex from named edges.

    ``ends`` maps an edge name to its (origin, terminus); each polygon is a
    list of (edge name, +1 or -1) read around the face.
    """
    origin, reverse, dart = [], [], {}
    for name, (u, w) in ends.items():
        d = len(origin)
        origin += [u, w]
        reverse += [d + 1, d]
        dart[(name, 1)], dart[(name, -1)] = d, d + 1
    faces = [[dart[s] for s in poly] for poly in polygons]
    return check(BranchedTwoComplex.build(n_vertices, origin, reverse, faces))


def octahedron(vertex_map=None, edge_map=None):
    """Octahedron N=0, S=1, equator 2..5; optionally with vertices and edges
    renamed (used to fold two opposite edges at N together)."""
    vm = vertex_map or {}
    em = edge_map or {}
    f = lambda v: vm.get(v, v)  # noqa: E731
    eq = [2, 3, 4, 5]
    ends = {}
    polys = []

    def edge(u, w):
        key = em.get((u, w), (u, w))
        ends[key] = (f(key[0]), f(key[1]))
        return key

    for i in range(4):
        a, b = eq[i], eq[(i + 1) % 4]
        n_a, a_b, b_n = edge(0, a), edge(a, b), edge(0, b)
        s_b, s_a = edge(1, b), edge(1, a)
        polys.append([(n_a, 1), (a_b, 1), (b_n, -1)])
        polys.append([(s_b, 1), (a_b, -1), (s_a, -1)])
    n = 6 - len({v for v in vm if vm[v] != v})
    relabel = {v: k for k, v in enumerate(sorted({f(v) for v in range(6)}))}
    ends = {k: (relabel[u], relabel[w]) for k, (u, w) in ends.items()}
    return from_polygons(n, ends, polys)


def _reduce_cyclic(word, reverse):
    out = []
    for d in word:
        if out and out[-1] == reverse[d]:
            out.pop()
        else:
            out.append(d)
    while len(out) > 1 and out[-1] == reverse[out[0]]:
        out = out[1:-1]
    return out


def random_complex(rng, max_vertices=4, max_extra_edges=4, max_faces=4, max_steps=6, max_area=3):
    """A connected valid complex: a random tree plus extra edges (loops
    allowed), with faces read along random closed walks."""
    n = rng.randint(1, max_vertices)
    origin, reverse = [], []

    def add_edge(u, w):
        d = len(origin)
        origin.extend([u, w])
        reverse.extend([d + 1, d])

    for v in range(1, n):
        add_edge(rng.randrange(v), v)
    # a tree alone bounds no reduced closed walk, so add at least one edge
    for _ in range(rng.randint(1, max_extra_edges)):
        add_edge(rng.randrange(n), rng.randrange(n))
    out_darts = [[d for d in range(len(origin)) if origin[d] == v] for v in range(n)]

    def terminus(d):
        return origin[reverse[d]]

    def path(a, b):
        # walk up the tree (edges 0..n-2 join a parent to v = index + 1)
        up = {}
        for e in range(n - 1):
            up[origin[2 * e + 1]] = 2 * e + 1
        def to_root(v):
            steps = []
            while v != 0:
                steps.append(up[v])
                v = terminus(up[v])
            return steps
        return to_root(a) + [reverse[d] for d in reversed(to_root(b))]

    faces, areas = [], []
    n_faces = rng.randint(1, max_faces)
    while len(faces) < n_faces:
        start = rng.randrange(n)
        v, walk = start, []
        for _ in range(rng.randint(1, max_steps)):
            d = rng.choice(out_darts[v])
            walk.append(d)
            v = terminus(d)
        walk += path(v, start)
        w = _reduce_cyclic(walk, reverse)
        if w:
            faces.append(w)
            areas.append(rng.randint(1, max_area))
    return check(BranchedTwoComplex.build(n, origin, reverse, faces, areas))


def random_angles(rng, X, denominator=12):
    from fractions import Fraction
    from twocurv.curvature import AngleStructure
    return AngleStructure(tuple(tuple(Fraction(rng.randint(0, 2 * denominator), denominator) for _ in w)
                                for w in X.faces))
