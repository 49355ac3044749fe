import os

from hypothesis import HealthCheck, settings, strategies as st

from cnrkernel.graph import Graph

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("CNR_HYPOTHESIS_EXAMPLES", 60)),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def connected_graphs(draw, min_n=1, max_n=7):
    """A random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs)))
        edges |= set(extra)
    return Graph(n, edges)


@st.composite
def strong_digraphs(draw, min_n=2, max_n=5):
    """A directed Hamilton cycle plus random extra arcs."""
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(n)))
    arcs = {(order[i], order[(i + 1) % n]) for i in range(n)}
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs |= set(draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))))
    return Graph(n, arcs, directed=True)
