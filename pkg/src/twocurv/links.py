"""Vertex links and the graph questions asked of them."""
from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .core import BranchedTwoComplex


class NegativeLength(ValueError):
    pass


@dataclass(frozen=True)
class Link:
    """Nodes are darts leaving ``vertex``; each edge is a corner ``(face, pos)``
    joining the reverse of the incoming dart to the outgoing one."""

    vertex: int
    nodes: tuple
    edges: tuple  # of (corner, node, node)

    def degree(self, node: int) -> int:
        return sum((u == node) + (w == node) for _, u, w in self.edges)

    def degrees(self) -> dict:
        deg = {n: 0 for n in self.nodes}
        for _, u, w in self.edges:
            deg[u] += 1
            deg[w] += 1
        return deg

    def simple_graph(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.nodes)
        G.add_edges_from((u, w) for _, u, w in self.edges if u != w)
        return G


def all_links(X: BranchedTwoComplex) -> list[Link]:
    nodes: list[list[int]] = [[] for _ in range(X.n_vertices)]
    for d in range(X.n_darts):
        nodes[X.origin(d)].append(d)
    edges: list[list] = [[] for _ in range(X.n_vertices)]
    for f, w in enumerate(X.faces):
        n = len(w)
        for i in range(n):
            a, b = w[i], w[(i + 1) % n]
            edges[X.terminus(a)].append(((f, i), X.reverse(a), b))
    return [Link(v, tuple(nodes[v]), tuple(edges[v])) for v in range(X.n_vertices)]


def build_link(X: BranchedTwoComplex, v: int) -> Link:
    nodes = tuple(d for d in range(X.n_darts) if X.origin(d) == v)
    edges = []
    for f, w in enumerate(X.faces):
        n = len(w)
        for i in range(n):
            a = w[i]
            if X.terminus(a) == v:
                edges.append(((f, i), X.reverse(a), w[(i + 1) % n]))
    return Link(v, nodes, tuple(edges))


def shortest_cycle(L: Link, lengths=None):
    """Shortest cycle as ``(length, [edge indices])``; ``(inf, [])`` for a forest.

    ``lengths`` maps corners to nonnegative rationals; unit lengths if None.
    For each edge, the best cycle through it is that edge plus a shortest
    path between its ends avoiding it.
    """
    if lengths is None:
        ell = [1] * len(L.edges)
    else:
        ell = [lengths[c] for c, _, _ in L.edges]
        if any(x < 0 for x in ell):
            raise NegativeLength("link edge lengths must be nonnegative")
    adj: dict[int, list] = {n: [] for n in L.nodes}
    for k, (_, u, w) in enumerate(L.edges):
        adj[u].append((w, k))
        if u != w:
            adj[w].append((u, k))
    best = math.inf
    best_path: list[int] = []
    order = sorted(range(len(L.edges)), key=lambda k: (ell[k], k))
    for k in order:
        _, u, w = L.edges[k]
        if ell[k] >= best:
            break
        if u == w:
            best, best_path = ell[k], [k]
            continue
        budget = best - ell[k]
        dist, path = _dijkstra(adj, ell, u, w, k, budget)
        if dist + ell[k] < best:
            best = dist + ell[k]
            best_path = path + [k]
    return best, best_path


def _dijkstra(adj, ell, s, t, banned, budget):
    dist = {s: 0}
    prev: dict = {}
    heap = [(0, 0, s)]
    tick = 1
    while heap:
        d, _, v = heapq.heappop(heap)
        if d > dist.get(v, math.inf):
            continue
        if d >= budget:
            break
        if v == t:
            path = []
            while v != s:
                v, k = prev[v]
                path.append(k)
            return d, path[::-1]
        for u, k in adj[v]:
            if k == banned:
                continue
            nd = d + ell[k]
            if nd < dist.get(u, math.inf):
                dist[u] = nd
                prev[u] = (v, k)
                heapq.heappush(heap, (nd, tick, u))
                tick += 1
    return math.inf, []


def girth(L: Link):
    return shortest_cycle(L)[0]


def systole(L: Link, lengths):
    value = shortest_cycle(L, lengths)[0]
    return value if value == math.inf else Fraction(value)


def components(L: Link) -> list[list[int]]:
    adj: dict[int, list[int]] = {n: [] for n in L.nodes}
    for _, u, w in L.edges:
        adj[u].append(w)
        adj[w].append(u)
    seen: set[int] = set()
    out = []
    for s in L.nodes:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
                    queue.append(u)
        out.append(sorted(comp))
    return out


def is_connected(L: Link) -> bool:
    return len(components(L)) == 1


def is_circle(L: Link) -> bool:
    if not L.nodes:
        return False
    return all(k == 2 for k in L.degrees().values()) and is_connected(L)


def has_cut_vertex(L: Link):
    """Smallest articulation node, or None."""
    cuts = list(nx.articulation_points(L.simple_graph()))
    return min(cuts) if cuts else None


def is_planar(L: Link) -> bool:
    return nx.check_planarity(L.simple_graph())[0]
