"""Hard-instance constructions and synthetic corpora.

* ``gen_hpqr``: bipartite graphs whose blocks pairwise induce near
  ``r``-regular subgraphs while the whole graph has girth at least 6.
* Red-blue dominating set helpers and the two reductions from it (an
  undirected graph and an oriented one) whose cop number tracks the size of
  a minimum dominating set.
* ``twin_augment``: grow a graph by cloning vertices, which keeps the
  k-copwin answer for every k >= 2.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import InfeasibleConstructionError, MalformedInputError
from .graph import Graph, girth
from .params import nd_partition

# -- H(p, q, r) -----------------------------------------------------------------------


def q_threshold(p: int, r: int) -> int:
    """Block size above which the construction is guaranteed to exist."""
    a = p * (r + 1) - 1
    # (a^6 - 1) / (a^2 - 1) written as a polynomial so a = 1 is fine
    return 2 * p * (r + 1) * (a**4 + a**2 + 1)


@dataclass(frozen=True)
class HpqrParams:
    p: int
    q: int
    r: int
    parts: int = 2
    names: tuple[str, ...] = ("U", "W", "X")

    def __post_init__(self):
        if min(self.p, self.q, self.r) < 1:
            raise ValueError("p, q and r must be positive")
        if self.parts not in (2, 3):
            raise ValueError("parts must be 2 or 3")

    @property
    def threshold(self) -> int:
        return q_threshold(self.p, self.r)

    @property
    def meets_threshold(self) -> bool:
        return self.q >= self.threshold

    @property
    def n(self) -> int:
        return self.parts * self.p * self.q

    def block(self, part: int, i: int) -> range:
        """Vertex ids of block ``i`` (0-based) of side ``part``."""
        start = (part * self.p + i) * self.q
        return range(start, start + self.q)

    def labels(self) -> list[str]:
        return [
            f"{self.names[part]}{i + 1}"
            for part in range(self.parts)
            for i in range(self.p)
            for _ in range(self.q)
        ]

    def side_pairs(self) -> list[tuple[int, int]]:
        """Sides joined by edges: U-W, plus W-X and X-U for three sides."""
        return [(0, 1)] if self.parts == 2 else [(0, 1), (1, 2), (2, 0)]


@dataclass
class HpqrCertificate:
    girth: float
    degree_range: tuple[int, int]
    ok: bool
    meets_threshold: bool


def certify_hpqr(g: Graph, params: HpqrParams) -> HpqrCertificate:
    """Measure the two defining properties: girth and per-block-pair degrees."""
    lo, hi = None, None
    und = g.underlying()
    for a, b in params.side_pairs():
        for i in range(params.p):
            for j in range(params.p):
                bi, bj = set(params.block(a, i)), set(params.block(b, j))
                for z in bi:
                    dz = len(und.neighbors(z) & bj)
                    lo, hi = _span(lo, hi, dz)
                for z in bj:
                    dz = len(und.neighbors(z) & bi)
                    lo, hi = _span(lo, hi, dz)
    if params.parts == 2:
        gi = girth(und)
    else:
        # three sides: each side pair is checked on its own
        gi = min(girth(_side_pair_graph(und, params, a, b)) for a, b in params.side_pairs())
    ok = gi >= 6 and lo >= params.r - 1 and hi <= params.r + 1
    return HpqrCertificate(gi, (lo, hi), ok, params.meets_threshold)


def _side_pair_graph(g: Graph, params: HpqrParams, a: int, b: int) -> Graph:
    size = params.p * params.q
    keep = [v for v in range(g.n) if v // size in (a, b)]
    return g.induced_subgraph(keep)[0]


def _span(lo, hi, x):
    return (x if lo is None else min(lo, x)), (x if hi is None else max(hi, x))


def _ball2(adj, v) -> set[int]:
    out = {v} | adj[v]
    for w in adj[v]:
        out |= adj[w]
    return out


def _attempt(params: HpqrParams, rng: random.Random):
    p, r = params.p, params.r
    adj = [set() for _ in range(params.n)]
    pairs = [(a, b, i, j) for a, b in params.side_pairs() for i in range(p) for j in range(p)]
    deg = {}
    for a, b, i, j in pairs:
        for z in itertools.chain(params.block(a, i), params.block(b, j)):
            deg[(a, b, i, j, z)] = 0
    for target in (r - 1, r):
        order = pairs[:]
        rng.shuffle(order)
        for a, b, i, j in order:
            key = (a, b, i, j)
            left = list(params.block(a, i))
            rng.shuffle(left)
            right = list(params.block(b, j))
            for u in left:
                while deg[key + (u,)] < target:
                    ball = _ball2(adj, u)
                    cands = [
                        w for w in right
                        if deg[key + (w,)] < target and w not in adj[u] and not (ball & _ball2(adj, w))
                    ]
                    if not cands:
                        break
                    low = min(deg[key + (w,)] for w in cands)
                    w = rng.choice([w for w in cands if deg[key + (w,)] == low])
                    adj[u].add(w)
                    adj[w].add(u)
                    deg[key + (u,)] += 1
                    deg[key + (w,)] += 1
    if min(deg.values()) < r - 1:
        return None
    return [(u, w) for u in range(params.n) for w in adj[u] if u < w]


def _is_prime(m: int) -> bool:
    return m >= 2 and all(m % f for f in range(2, int(m**0.5) + 1))


def _affine_shape(params: HpqrParams):
    """``(d, m)`` with ``q = d * m``, ``m`` prime and ``m >= p * d``, if any."""
    for d in (params.r, params.r - 1, params.r + 1):
        if d >= 1 and params.q % d == 0:
            m = params.q // d
            if _is_prime(m) and m >= params.p * d:
                return d, m
    return None


def _affine(params: HpqrParams, d: int, m: int):
    """Point-line incidences of the affine plane over Z_m.

    Block ``U_i`` holds the points whose x-coordinate is one of ``d`` values
    reserved for ``i``; block ``W_j`` holds the lines whose slope is one of
    ``d`` values reserved for ``j``.  A point meets exactly one line of each
    slope and a line meets one point per x-coordinate, so every pair degree
    is ``d``; two points share at most one line, so there is no 4-cycle.
    """
    edges = []
    for a, b in params.side_pairs():
        for i in range(params.p):
            for j in range(params.p):
                for tx in range(d):
                    x = i * d + tx
                    for y in range(m):
                        u = params.block(a, i)[tx * m + y]
                        for ts in range(d):
                            slope = j * d + ts
                            icpt = (y - slope * x) % m
                            edges.append((u, params.block(b, j)[ts * m + icpt]))
    return edges


def gen_hpqr(params: HpqrParams, seed: int = 0, retries: int = 40) -> Graph:
    """Build and certify a graph with the two block-pair properties.

    When ``q = d * m`` for a prime ``m >= p * d`` and ``d`` within one of
    ``r``, an exact affine-plane incidence construction is used.  Otherwise
    edges are inserted greedily at random, never closing a cycle shorter than
    six, with restarts on failure.
    """
    if params.r - 1 > params.q:
        raise InfeasibleConstructionError(
            f"each vertex needs {params.r - 1} neighbours in a block of size {params.q}"
        )
    shape = _affine_shape(params)
    rng = random.Random(seed)
    for _ in range(1 if shape else retries):
        edges = _affine(params, *shape) if shape else _attempt(params, rng)
        if edges is None:
            continue
        if params.parts == 3:
            edges = _orient_cyclic(params, edges)
        g = Graph(params.n, edges, directed=params.parts == 3, labels=params.labels())
        if certify_hpqr(g, params).ok:
            return g
    raise InfeasibleConstructionError(
        f"no H({params.p},{params.q},{params.r}) found in {retries} attempts"
    )


def affine_sizes(p: int, r: int, limit: int = 200) -> list[int]:
    """Block sizes ``q <= limit`` served by the exact construction."""
    return [q for q in range(1, limit + 1) if _affine_shape(HpqrParams(p, q, r))]


def _orient_cyclic(params: HpqrParams, edges):
    side = lambda v: v // (params.p * params.q)  # noqa: E731
    out = []
    for u, w in edges:
        out.append((u, w) if (side(u) + 1) % 3 == side(w) else (w, u))
    return out


# -- red-blue dominating set -----------------------------------------------------------------


@dataclass(frozen=True)
class RbdsInstance:
    """Bipartite graph with terminals ``T`` and dominators ``N``; edges are
    ``(t, n)`` index pairs into the two name tuples."""

    T: tuple[str, ...]
    N: tuple[str, ...]
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "T", tuple(self.T))
        object.__setattr__(self, "N", tuple(self.N))
        object.__setattr__(self, "edges", frozenset((int(a), int(b)) for a, b in self.edges))
        for a, b in self.edges:
            if not (0 <= a < len(self.T) and 0 <= b < len(self.N)):
                raise MalformedInputError(f"edge ({a}, {b}) does not join T to N")

    def dominators_of(self, t: int) -> set[int]:
        return {b for a, b in self.edges if a == t}

    def to_graph(self) -> Graph:
        nt = len(self.T)
        return Graph(nt + len(self.N), [(a, nt + b) for a, b in self.edges], labels=self.T + self.N)

    @classmethod
    def random(cls, nt: int, nn: int, p: float, k: int, seed: int = 0) -> "RbdsInstance":
        rng = random.Random(seed)
        edges = {(a, b) for a in range(nt) for b in range(nn) if rng.random() < p}
        return cls(tuple(f"t{a}" for a in range(nt)), tuple(f"n{b}" for b in range(nn)), edges, k)


def augment_rbds(inst: RbdsInstance) -> RbdsInstance:
    """Add a terminal ``x`` whose only dominator is a new ``y``; budget + 1."""
    nt, nn = len(inst.T), len(inst.N)
    return RbdsInstance(inst.T + ("x",), inst.N + ("y",), inst.edges | {(nt, nn)}, inst.k + 1)


def rbds_witness(inst: RbdsInstance) -> tuple[int, ...] | None:
    """A smallest dominating subset of ``N`` (lexicographically first), or None."""
    need = [inst.dominators_of(t) for t in range(len(inst.T))]
    if any(not s for s in need):
        return None
    for size in range(len(inst.N) + 1):
        for pick in itertools.combinations(range(len(inst.N)), size):
            chosen = set(pick)
            if all(s & chosen for s in need):
                return pick
    return None


def rbds_solve(inst: RbdsInstance) -> int | None:
    """Minimum dominating set size; None when some terminal has no dominator."""
    w = rbds_witness(inst)
    return None if w is None else len(w)


def _check_augmented(inst: RbdsInstance):
    if not inst.T or not inst.N:
        raise MalformedInputError("expected an augmented instance")
    x, y = len(inst.T) - 1, len(inst.N) - 1
    if inst.dominators_of(x) != {y}:
        raise MalformedInputError("the last terminal must be x, dominated only by the last dominator y")


@dataclass
class Construction:
    graph: Graph
    params: HpqrParams
    ell: int
    below_threshold: bool
    blocks: dict[str, list[int]]

    def p_vertex(self, dominator: int) -> int:
        """Vertex of the dominator copy ``P`` for ``N``-index ``dominator``."""
        return self.blocks["P"][dominator]


def _reduction_params(inst: RbdsInstance, ell, q_override, parts):
    _check_augmented(inst)
    ell = inst.k if ell is None else ell
    p, r = len(inst.T), ell + 2
    q = q_threshold(p, r) if q_override is None else q_override
    return HpqrParams(p, q, r, parts=parts), ell


def gen_rbds_reduction(
    inst: RbdsInstance, ell: int | None = None, q_override: int | None = None, seed: int = 0
) -> Construction:
    """Undirected graph that is ``ell``-copwin iff ``inst`` has a dominating set
    of size ``ell`` (the forward direction holds at any block size)."""
    params, ell = _reduction_params(inst, ell, q_override, 2)
    h = gen_hpqr(params, seed)
    base = params.n
    nn = len(inst.N)
    y = base + nn - 1
    edges = set(h.edges)
    for t, b in inst.edges:
        for v in itertools.chain(params.block(0, t), params.block(1, t)):
            edges.add((v, base + b))
    for b in range(nn - 1):
        edges.add((base + b, y))
    labels = params.labels() + [f"P:{name}" for name in inst.N]
    g = Graph(base + nn, edges, labels=labels)
    blocks = _blocks(params)
    blocks["P"] = list(range(base, base + nn))
    return Construction(g, params, ell, not params.meets_threshold, blocks)


def gen_oriented_reduction(
    inst: RbdsInstance, ell: int | None = None, q_override: int | None = None, seed: int = 0
) -> Construction:
    """Oriented three-sided version with a relay vertex ``z``."""
    params, ell = _reduction_params(inst, ell, q_override, 3)
    for b in range(len(inst.N)):
        if not any(e[1] == b for e in inst.edges):
            raise MalformedInputError(f"dominator {inst.N[b]} has no terminal; the digraph would have a sink")
    h = gen_hpqr(params, seed)
    base = params.n
    nn = len(inst.N)
    y, z = base + nn - 1, base + nn
    arcs = set(h.edges)
    for t, b in inst.edges:
        for part in range(3):
            for v in params.block(part, t):
                arcs.add((base + b, v))
    for b in range(nn - 1):
        arcs.add((y, base + b))
    arcs.add((z, y))
    for part in range(3):
        for v in params.block(part, params.p - 1):
            arcs.add((v, z))
    labels = params.labels() + [f"P:{name}" for name in inst.N] + ["z"]
    g = Graph(base + nn + 1, arcs, directed=True, labels=labels)
    g.require_connected()
    blocks = _blocks(params)
    blocks["P"] = list(range(base, base + nn))
    blocks["z"] = [z]
    return Construction(g, params, ell, not params.meets_threshold, blocks)


def _blocks(params: HpqrParams) -> dict[str, list[int]]:
    return {
        f"{params.names[part]}{i + 1}": list(params.block(part, i))
        for part in range(params.parts)
        for i in range(params.p)
    }


# -- twins ------------------------------------------------------------------------------------


FALSE_TWIN, TRUE_TWIN, AUTO = "false", "true", "auto"


def twin_augment(g: Graph, rounds: int, seed: int = 0, kind: str = AUTO, pool=None) -> Graph:
    """Clone a random vertex ``rounds`` times.

    With ``kind="auto"`` a vertex in an independent type class gets a false
    twin, one in a clique class a true twin, and a singleton class either,
    with equal odds.  ``pool`` restricts which vertices may be cloned; clones
    join the pool.
    """
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    if kind not in (AUTO, FALSE_TWIN, TRUE_TWIN):
        raise ValueError(f"unknown twin kind {kind!r}")
    rng = random.Random(seed)
    n = g.n
    adj = [set(g.neighbors(v)) for v in range(n)]
    labels = list(g.labels) if g.labels else None
    pool = sorted(range(n) if pool is None else pool)
    for _ in range(rounds):
        v = rng.choice(pool)
        twin = kind
        if kind == AUTO:
            cur = Graph(n, [(a, b) for a in range(n) for b in adj[a] if a < b])
            part = nd_partition(cur)
            cls = part.class_of[v]
            if len(part.classes[cls]) > 1:
                twin = FALSE_TWIN if part.class_kind[cls] == "independent" else TRUE_TWIN
            else:
                twin = TRUE_TWIN if rng.random() < 0.5 else FALSE_TWIN
        new = n
        adj.append(set(adj[v]))
        for w in adj[v]:
            adj[w].add(new)
        if twin == TRUE_TWIN:
            adj[new].add(v)
            adj[v].add(new)
        if labels is not None:
            labels.append(labels[v])
        pool.append(new)
        n += 1
    edges = [(a, b) for a in range(n) for b in adj[a] if a < b]
    return Graph(n, edges, labels=labels)
