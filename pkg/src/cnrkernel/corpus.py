"""Graph corpora for exhaustive and sampled experiments.

Connected graphs up to seven vertices come from the networkx atlas.  The
eight-vertex list is built once by extending every seven-vertex graph by a
new vertex in all ways, removing isomorphic copies, and is stored as graph6
in the package data directory.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from pathlib import Path

import networkx as nx

from .graph import Graph, from_networkx

DATA = Path(__file__).with_name("data")
N8_FILE = DATA / "connected8.g6"
N8_COUNT = 11117
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


@lru_cache(maxsize=None)
def _atlas_connected() -> tuple[tuple[int, nx.Graph], ...]:
    return tuple(
        (h.number_of_nodes(), h)
        for h in nx.graph_atlas_g()
        if h.number_of_nodes() > 0 and nx.is_connected(h)
    )


def connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on ``n`` vertices up to isomorphism (n <= 8)."""
    if n <= 7:
        return [from_networkx(h) for m, h in _atlas_connected() if m == n]
    if n == 8:
        return [from_networkx(h) for h in load_n8()]
    raise ValueError("exhaustive corpus stops at 8 vertices")


def connected_upto(n_max: int, n_min: int = 1) -> list[Graph]:
    return [g for n in range(n_min, n_max + 1) for g in connected_graphs(n)]


def build_n8() -> list[nx.Graph]:
    """Every connected 8-vertex graph, by one-vertex extension of the 7-vertex ones.

    Deleting a non-cut vertex of a connected graph leaves it connected, so
    every connected graph on 8 vertices arises this way.
    """
    sevens = [h for m, h in _atlas_connected() if m == 7]
    buckets: dict[str, list[nx.Graph]] = {}
    out = []
    for h in sevens:
        for r in range(1, 8):
            for nbrs in itertools.combinations(range(7), r):
                g = h.copy()
                g.add_edges_from((7, v) for v in nbrs)
                key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
                same = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(g, other) for other in same):
                    continue
                same.append(g)
                out.append(g)
    return out


def load_n8(path: Path = N8_FILE) -> list[nx.Graph]:
    if not path.exists():
        raise FileNotFoundError(f"{path} missing; run scripts/make_corpus.py")
    return list(nx.read_graph6(path))


def write_n8(path: Path = N8_FILE) -> int:
    graphs = build_n8()
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(nx.to_graph6_bytes(g, header=False))
    return len(graphs)


def random_connected(n: int, p: float, rng: random.Random) -> Graph:
    """Rejection-sampled connected G(n, p)."""
    while True:
        edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
        g = Graph(n, edges)
        if g.is_connected:
            return g


def random_sample(count: int, n: int, seed: int = 0) -> list[Graph]:
    rng = random.Random(seed)
    return [random_connected(n, rng.uniform(0.2, 0.7), rng) for _ in range(count)]


def strongly_connected_digraphs(n: int, oriented: bool = False) -> list[Graph]:
    """All strongly connected digraphs on ``n`` labelled vertices, up to isomorphism.

    Each unordered pair carries no arc, one arc either way, or (unless
    ``oriented``) both.  Practical for ``n <= 4``.
    """
    pairs = list(itertools.combinations(range(n), 2))
    states = (0, 1, 2) if oriented else (0, 1, 2, 3)
    seen: dict[str, list[nx.DiGraph]] = {}
    out = []
    for choice in itertools.product(states, repeat=len(pairs)):
        arcs = []
        for (u, v), c in zip(pairs, choice):
            if c in (1, 3):
                arcs.append((u, v))
            if c in (2, 3):
                arcs.append((v, u))
        h = nx.DiGraph(arcs)
        h.add_nodes_from(range(n))
        if not nx.is_strongly_connected(h):
            continue
        key = nx.weisfeiler_lehman_graph_hash(h, iterations=3)
        same = seen.setdefault(key, [])
        if any(nx.is_isomorphic(h, o) for o in same):
            continue
        same.append(h)
        out.append(Graph(n, arcs, directed=True))
    return out


def random_strong_digraphs(count: int, n: int, seed: int = 0, p_arc: float = 0.35) -> list[Graph]:
    """Seeded sample of strongly connected digraphs: each ordered pair is an arc
    with probability ``p_arc``; rejected until strongly connected."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p_arc]
        g = Graph(n, arcs, directed=True)
        if g.is_connected:
            out.append(g)
    return out


def trees(n: int) -> list[Graph]:
    """Every tree on ``n`` vertices up to isomorphism."""
    if n == 1:
        return [Graph(1)]
    return [from_networkx(t) for t in nx.nonisomorphic_trees(n)]
