"""Finite simple undirected graphs with string vertex labels."""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "UNDEFINED", "INF", "GraphError", "SimpleGraph", "label_key", "edge_key",
    "distance", "bfs_distances", "diameter", "is_connected", "components",
    "girth", "bridges", "core", "edge_in_short_cycle", "path_short_cycle",
    "common_neighbors", "paths_of_length_two", "iso_check",
]

INF = math.inf


class _Undefined:
    """Diameter of a graph with fewer than two vertices."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNDEFINED"

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


class GraphError(ValueError):
    pass


def label_key(label: str):
    """Natural sort key: digit runs compare numerically."""
    return tuple((0, int(t), "") if t.isdigit() else (1, 0, t)
                 for t in re.findall(r"\d+|\D+", label))


def edge_key(e) -> tuple:
    u, v = sorted(e, key=label_key)
    return (label_key(u), label_key(v))


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    adjacency: dict[str, frozenset[str]] = field(compare=False, hash=False, repr=False)

    @classmethod
    def build(cls, vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()) -> "SimpleGraph":
        """Vertices are kept in first-seen order; edge endpoints are added."""
        vs: dict[str, None] = {str(v): None for v in vertices}
        es = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            vs.setdefault(u)
            vs.setdefault(v)
            es.add(frozenset((u, v)))
        adj: dict[str, set[str]] = {v: set() for v in vs}
        for e in es:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(vs), frozenset(es), {v: frozenset(n) for v, n in adj.items()})

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.adjacency

    def neighbors(self, v: str) -> frozenset[str]:
        try:
            return self.adjacency[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adjacency.get(u, ())

    def sorted_vertices(self) -> list[str]:
        return sorted(self.vertices, key=label_key)

    def sorted_edges(self) -> list[tuple[str, str]]:
        return [tuple(sorted(e, key=label_key)) for e in sorted(self.edges, key=edge_key)]

    def subgraph(self, edges: Iterable[frozenset[str]]) -> "SimpleGraph":
        """Graph on the given edges and their endpoints, in this graph's vertex order."""
        es = set(edges)
        ends = set().union(*es) if es else set()
        return SimpleGraph.build([v for v in self.vertices if v in ends], [tuple(e) for e in es])

    def same_as(self, other: "SimpleGraph") -> bool:
        return set(self.vertices) == set(other.vertices) and self.edges == other.edges


def bfs_distances(G: SimpleGraph, source: str) -> dict[str, int]:
    G.neighbors(source)
    dist = {source: 0}
    q = deque([source])
    while q:
        u = q.popleft()
        for w in G.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def distance(G: SimpleGraph, u: str, v: str) -> int | float:
    """Shortest-path edge count, or ``INF`` when no path exists."""
    G.neighbors(v)
    return bfs_distances(G, u).get(v, INF)


def components(G: SimpleGraph) -> list[list[str]]:
    seen: set[str] = set()
    out = []
    for v in G.vertices:
        if v not in seen:
            comp = list(bfs_distances(G, v))
            seen.update(comp)
            out.append(comp)
    return out


def is_connected(G: SimpleGraph) -> bool:
    return len(components(G)) <= 1


def diameter(G: SimpleGraph):
    """Max pairwise distance; ``INF`` if disconnected, ``UNDEFINED`` below two vertices."""
    if len(G) < 2:
        return UNDEFINED
    best = 0
    for v in G.vertices:
        dist = bfs_distances(G, v)
        if len(dist) < len(G):
            return INF
        best = max(best, max(dist.values()))
    return best


def farthest_pair(G: SimpleGraph) -> tuple[str, str, int | float] | None:
    """A pair realizing the diameter (distance ``INF`` across components)."""
    if len(G) < 2:
        return None
    best = None
    for v in G.vertices:
        dist = bfs_distances(G, v)
        for w in G.vertices:
            d = dist.get(w, INF)
            if w != v and (best is None or d > best[2]):
                best = (v, w, d)
    return best


def girth(G: SimpleGraph) -> int | None:
    """Length of a shortest cycle, or ``None`` for a forest."""
    best = None
    for root in G.vertices:
        dist = {root: 0}
        parent = {root: None}
        q = deque([root])
        while q:
            u = q.popleft()
            for w in G.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    c = dist[u] + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return best


def bridges(G: SimpleGraph) -> frozenset[frozenset[str]]:
    """Edges whose removal disconnects their component (iterative lowlink)."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    out = set()
    counter = 0
    for root in G.vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(G.adjacency[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in index:
                    low[v] = min(low[v], index[w])
                else:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(G.adjacency[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent is not None:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > index[parent]:
                        out.add(frozenset((parent, v)))
    return frozenset(out)


def core(G: SimpleGraph) -> SimpleGraph:
    """Subgraph formed by every edge lying on a cycle, i.e. the non-bridges."""
    return G.subgraph(G.edges - bridges(G))


def common_neighbors(G: SimpleGraph, a: str, b: str) -> frozenset[str]:
    return G.neighbors(a) & G.neighbors(b)


def edge_in_short_cycle(G: SimpleGraph, e, maxlen: int = 4) -> tuple[bool, list[str] | None]:
    """Look for a cycle of length <= ``maxlen`` (3 or 4) through edge ``e``.

    The witness is the cycle's vertex sequence starting at one endpoint of
    ``e`` and continuing across ``e``; the closing edge back is implied.
    """
    if maxlen not in (3, 4):
        raise GraphError(f"maxlen must be 3 or 4, got {maxlen}")
    u, v = sorted(e, key=label_key)
    if not G.has_edge(u, v):
        raise GraphError(f"unknown edge {{{u}, {v}}}")
    tri = sorted(common_neighbors(G, u, v), key=label_key)
    if tri:
        return True, [u, v, tri[0]]
    if maxlen == 4:
        for w in sorted(G.adjacency[v] - {u}, key=label_key):
            for x in sorted(G.adjacency[w] & G.adjacency[u] - {v}, key=label_key):
                if x != w:
                    return True, [u, v, w, x]
    return False, None


def path_short_cycle(G: SimpleGraph, a: str, x: str, b: str) -> list[str] | None:
    """A cycle of length <= 4 containing the path ``a - x - b``, if any."""
    if G.has_edge(a, b):
        return [a, x, b]
    extra = sorted(common_neighbors(G, a, b) - {x}, key=label_key)
    return [a, x, b, extra[0]] if extra else None


def paths_of_length_two(G: SimpleGraph):
    """Every path ``a - x - b`` with ``a != b``, each unordered pair once per middle."""
    for x in G.vertices:
        nb = sorted(G.adjacency[x], key=label_key)
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                yield a, x, b


def iso_check(G: SimpleGraph, H: SimpleGraph, cap: int = 10) -> dict[str, str] | None:
    """An adjacency-preserving bijection ``G -> H``, or ``None``.

    Backtracking over vertices in decreasing degree, pairing only vertices
    of equal degree.
    """
    if len(G) > cap or len(H) > cap:
        raise GraphError(f"iso_check is capped at {cap} vertices")
    if len(G) != len(H) or len(G.edges) != len(H.edges):
        return None
    if sorted(map(G.degree, G.vertices)) != sorted(map(H.degree, H.vertices)):
        return None
    order = sorted(G.vertices, key=lambda v: (-G.degree(v), label_key(v)))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for w in H.vertices:
            if w in used or H.degree(w) != G.degree(v):
                continue
            if all(G.has_edge(v, u) == H.has_edge(w, mapping[u]) for u in order[:k]):
                mapping[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return dict(mapping) if extend(0) else None
