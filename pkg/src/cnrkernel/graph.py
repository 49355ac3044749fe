"""Immutable simple graphs on dense integer vertex ids.

Every other module works on :class:`Graph`.  Vertices are ``0..n-1``; an
optional label per vertex carries generator bookkeeping (block names and the
like).  Directed graphs store arcs ``(u, v)`` meaning ``u -> v``.
"""
from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DisconnectedGraphError, UnknownVertexError

INF = np.iinfo(np.int32).max

CONNECTED = "connected"
STRONGLY_CONNECTED = "strongly_connected"
NEITHER = "neither"


class Graph:
    """Finite simple graph, optionally oriented.

    Construction normalises the edge set and rejects self-loops.  Parallel
    edges collapse silently (the edge set is a set).
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        directed: bool = False,
        labels: Sequence[str] | None = None,
    ):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = int(n)
        self.directed = bool(directed)
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertexError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not directed and u > v:
                u, v = v, u
            norm.add((u, v))
        self.edges = frozenset(norm)
        succ = [set() for _ in range(n)]
        pred = [set() for _ in range(n)]
        for u, v in self.edges:
            succ[u].add(v)
            pred[v].add(u)
            if not directed:
                succ[v].add(u)
                pred[u].add(v)
        self._succ = tuple(frozenset(s) for s in succ)
        self._pred = tuple(frozenset(s) for s in pred)
        if labels is not None and len(labels) != n:
            raise ValueError("labels must have one entry per vertex")
        self.labels = tuple(labels) if labels is not None else None

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def _check(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise UnknownVertexError(f"unknown vertex {v}")
        return v

    def neighbors(self, v: int) -> frozenset[int]:
        """Open neighbourhood; out-neighbours for directed graphs."""
        return self._succ[self._check(v)]

    def out_neighbors(self, v: int) -> frozenset[int]:
        return self._succ[self._check(v)]

    def in_neighbors(self, v: int) -> frozenset[int]:
        return self._pred[self._check(v)]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self._succ[self._check(v)] | {v}

    def closed_in_neighborhood(self, v: int) -> frozenset[int]:
        return self._pred[self._check(v)] | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._succ[u]

    def degree(self, v: int) -> int:
        return len(self._succ[self._check(v)])

    def min_degree(self) -> int:
        return min((len(s) for s in self._succ), default=0)

    def underlying(self) -> "Graph":
        if not self.directed:
            return self
        return Graph(self.n, self.edges, directed=False, labels=self.labels)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.directed, self.edges) == (other.n, other.directed, other.edges)

    def __hash__(self):
        return hash((self.n, self.directed, self.edges))

    def __repr__(self):
        kind = "directed " if self.directed else ""
        return f"<{kind}Graph n={self.n} m={self.m}>"

    # -- matrices and distances -------------------------------------------

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Boolean matrix ``A[u, v]`` true iff ``v`` is an out-neighbour of ``u``."""
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, nb in enumerate(self._succ):
            for v in nb:
                a[u, v] = True
        a.setflags(write=False)
        return a

    @cached_property
    def distances(self) -> "DistanceTable":
        return DistanceTable.from_graph(self)

    def dist(self, u: int, v: int) -> int:
        return int(self.distances.d[self._check(u), self._check(v)])

    @cached_property
    def connectivity(self) -> str:
        return connectivity_check(self)

    @property
    def is_connected(self) -> bool:
        return self.connectivity in (CONNECTED, STRONGLY_CONNECTED) or self.n <= 1

    def require_connected(self) -> None:
        if self.n == 0:
            raise DisconnectedGraphError("empty graph")
        if not self.is_connected:
            what = "strongly connected" if self.directed else "connected"
            raise DisconnectedGraphError(f"graph is not {what}")

    # -- derived graphs ------------------------------------------------------

    def induced_subgraph(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``(H, kept)`` where ``H`` relabels ``kept[i]`` to ``i``."""
        kept = sorted(set(keep))
        index = {v: i for i, v in enumerate(kept)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        labels = [self.labels[v] for v in kept] if self.labels is not None else None
        return Graph(len(kept), edges, directed=self.directed, labels=labels), kept

    def with_labels(self, labels: Sequence[str] | None) -> "Graph":
        return Graph(self.n, self.edges, directed=self.directed, labels=labels)

    def components(self) -> list[list[int]]:
        """Weakly connected components, each sorted, ordered by smallest member."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = []
            stack = [s]
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._succ[u] | self._pred[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def split_components(self) -> list[tuple["Graph", list[int]]]:
        return [self.induced_subgraph(c) for c in self.components()]


class DistanceTable:
    """All-pairs hop distances, ``INF`` where unreachable."""

    def __init__(self, d: np.ndarray):
        self.d = d
        self.d.setflags(write=False)

    @classmethod
    def from_graph(cls, g: Graph) -> "DistanceTable":
        d = np.full((g.n, g.n), INF, dtype=np.int32)
        for s in range(g.n):
            d[s] = bfs_distances(g, s)
        return cls(d)

    def __call__(self, u: int, v: int) -> int:
        return int(self.d[u, v])

    def diameter(self) -> int:
        return int(self.d.max()) if self.d.size else 0


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    row = np.full(g.n, INF, dtype=np.int32)
    row[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g._succ[u]:
            if row[w] == INF:
                row[w] = row[u] + 1
                queue.append(w)
    return row


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    return g.closed_neighborhood(v)


def isometric_path(g: Graph, u: int, v: int) -> list[int]:
    """Shortest ``u``-``v`` path, always stepping to the smallest-id neighbour
    that gets one step closer to ``v``."""
    g._check(u)
    g._check(v)
    d = g.distances.d
    if d[u, v] == INF:
        raise DisconnectedGraphError(f"no path from {u} to {v}")
    path = [u]
    cur = u
    while cur != v:
        cur = min(w for w in g._succ[cur] if d[w, v] == d[cur, v] - 1)
        path.append(cur)
    return path


def is_isometric(g: Graph, path: Sequence[int]) -> bool:
    if not path:
        return False
    if any(not g.has_edge(a, b) for a, b in zip(path, path[1:])):
        return False
    return int(g.distances.d[path[0], path[-1]]) == len(path) - 1


def girth(g: Graph) -> float:
    """Length of a shortest cycle (``math.inf`` for forests)."""
    if g.directed:
        raise ValueError("girth is defined here for undirected graphs only")
    best = float("inf")
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g._succ[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def dominated_pairs(
    g: Graph, candidates: Iterable[int] | None = None, closed: bool = False
) -> list[tuple[int, int]]:
    """Ordered pairs ``(u, v)``, ``u != v``, with ``N(u) <= N(v)``.

    ``closed=True`` compares closed neighbourhoods instead.
    """
    cand = sorted(set(range(g.n) if candidates is None else candidates))
    nb = (lambda x: g.closed_neighborhood(x)) if closed else (lambda x: g.neighbors(x))
    out = []
    for u in cand:
        nu = nb(u)
        for v in cand:
            if u != v and nu <= nb(v):
                out.append((u, v))
    return out


def subdivide_edges(g: Graph, times: int) -> Graph:
    """Replace every edge by a path with ``times`` internal vertices."""
    if times < 0:
        raise ValueError("times must be >= 0")
    if times == 0:
        return g
    edges = []
    nxt = g.n
    for u, v in sorted(g.edges):
        chain = [u] + list(range(nxt, nxt + times)) + [v]
        nxt += times
        edges.extend(zip(chain, chain[1:]))
    labels = None
    if g.labels is not None:
        labels = list(g.labels) + ["sub"] * (nxt - g.n)
    return Graph(nxt, edges, directed=g.directed, labels=labels)


def connectivity_check(g: Graph) -> str:
    if g.n == 0:
        return NEITHER
    reach = bfs_distances(g, 0)
    if (reach == INF).any():
        return NEITHER
    if not g.directed:
        return CONNECTED
    rev = Graph(g.n, [(v, u) for u, v in g.edges], directed=True)
    if (bfs_distances(rev, 0) == INF).any():
        return NEITHER
    return STRONGLY_CONNECTED


# -- a few named graphs used throughout tests and examples -----------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int, directed: bool = False) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], directed=directed)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_multipartite(*sizes: int) -> Graph:
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    edges = [
        (u, v)
        for i, p in enumerate(parts)
        for q in parts[i + 1:]
        for u in p
        for v in q
    ]
    return Graph(start, edges)


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def from_networkx(h) -> Graph:
    nodes = sorted(h.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph(
        len(nodes),
        [(index[u], index[v]) for u, v in h.edges()],
        directed=h.is_directed(),
    )


def to_networkx(g: Graph):
    import networkx as nx

    h = nx.DiGraph() if g.directed else nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h
