"""Structural parameters and their certificates: vertex cover, cluster vertex
deletion, deletion to stars and neighbourhood diversity.

The exact solvers are small branching searches over vertex bitmasks with a
memo table.  They are meant for the desk-scale graphs the game solver can
handle anyway.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable

from .errors import BudgetExceededError, InvalidCertificateError
from .graph import Graph

VC, CVD, DTS = "vc", "cvd", "dts"

DEFAULT_NODE_LIMIT = int(os.environ.get("CNR_NODE_LIMIT", 2_000_000))


@dataclass(frozen=True)
class CoverCertificate:
    kind: str
    U: frozenset[int]
    exact: bool = False

    @property
    def t(self) -> int:
        return len(self.U)

    def independent_side(self, g: Graph) -> list[int]:
        return [v for v in range(g.n) if v not in self.U]


@dataclass
class NdPartition:
    classes: list[list[int]]
    class_kind: list[str]
    class_of: dict[int, int] = field(default_factory=dict)

    @property
    def w(self) -> int:
        return len(self.classes)


# -- bitmask helpers -----------------------------------------------------------


def _masks(g: Graph) -> list[int]:
    g = g.underlying()
    out = []
    for v in range(g.n):
        m = 0
        for w in g.neighbors(v):
            m |= 1 << w
        out.append(m)
    return out


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _to_set(mask: int) -> frozenset[int]:
    return frozenset(_bits(mask))


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise BudgetExceededError(f"exact search exceeded {self.limit} nodes")


# -- structure checkers -------------------------------------------------------


def is_vertex_cover(g: Graph, U: Iterable[int]) -> bool:
    U = set(U)
    return all(u in U or v in U for u, v in g.edges)


def _residual_components(g: Graph, U: set[int]) -> list[list[int]]:
    h, kept = g.underlying().induced_subgraph(v for v in range(g.n) if v not in U)
    return [[kept[i] for i in comp] for comp in h.components()]


def is_cluster_deletion_set(g: Graph, U: Iterable[int]) -> bool:
    U = set(U)
    ug = g.underlying()
    for comp in _residual_components(g, U):
        if any(not ug.has_edge(a, b) for i, a in enumerate(comp) for b in comp[i + 1:]):
            return False
    return True


def is_star_deletion_set(g: Graph, U: Iterable[int]) -> bool:
    U = set(U)
    ug = g.underlying()
    for comp in _residual_components(g, U):
        if len(comp) <= 2:
            continue
        inside = set(comp)
        degs = sorted(len(ug.neighbors(v) & inside) for v in comp)
        # a star K_{1,m}: one vertex of degree m, m leaves of degree 1
        if degs[-1] != len(comp) - 1 or any(d != 1 for d in degs[:-1]):
            return False
    return True


_CHECKERS = {VC: is_vertex_cover, CVD: is_cluster_deletion_set, DTS: is_star_deletion_set}


def verify_certificate(g: Graph, cert: CoverCertificate) -> None:
    if cert.kind not in _CHECKERS:
        raise InvalidCertificateError(f"unknown certificate kind {cert.kind!r}")
    if any(not 0 <= v < g.n for v in cert.U):
        raise InvalidCertificateError("certificate names vertices outside the graph")
    if not _CHECKERS[cert.kind](g, cert.U):
        raise InvalidCertificateError(f"set {sorted(cert.U)} is not a valid {cert.kind} set")


def resolve_cover(g: Graph, cover, kind: str = VC) -> CoverCertificate:
    """Turn ``None`` / a vertex iterable / a certificate into a verified certificate.

    ``None`` computes an exact one.  A certificate of a different kind is
    rejected rather than converted.
    """
    if cover is None:
        return {VC: vertex_cover, CVD: cluster_vertex_deletion, DTS: deletion_to_stars}[kind](g)
    if isinstance(cover, CoverCertificate):
        if cover.kind != kind:
            raise InvalidCertificateError(f"expected a {kind} certificate, got {cover.kind}")
        cert = cover
    else:
        cert = CoverCertificate(kind, frozenset(int(v) for v in cover), exact=False)
    verify_certificate(g, cert)
    return cert


# -- vertex cover --------------------------------------------------------------


def vertex_cover(g: Graph, mode: str = "exact", node_limit: int | None = None) -> CoverCertificate:
    if mode == "approx2":
        taken: set[int] = set()
        for u, v in sorted(g.underlying().edges):
            if u not in taken and v not in taken:
                taken.update((u, v))
        return CoverCertificate(VC, frozenset(taken), exact=False)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    adj = _masks(g)
    budget = _Budget(node_limit or DEFAULT_NODE_LIMIT)
    memo: dict[int, int] = {}

    def solve(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        budget.tick()
        forced = 0
        best_v, best_deg = -1, 0
        for v in _bits(mask):
            d = (adj[v] & mask).bit_count()
            if d == 1:
                # a pendant edge: its non-leaf end is always safe to take
                forced = adj[v] & mask
                break
            if d > best_deg:
                best_v, best_deg = v, d
        if forced:
            res = forced | solve(mask & ~forced)
        elif best_deg == 0:
            res = 0
        else:
            v = best_v
            nb = adj[v] & mask
            a = (1 << v) | solve(mask & ~(1 << v))
            b = nb | solve(mask & ~nb & ~(1 << v))
            res = a if a.bit_count() <= b.bit_count() else b
        memo[mask] = res
        return res

    cover = solve((1 << g.n) - 1)
    return CoverCertificate(VC, _to_set(cover), exact=True)


# -- cluster vertex deletion ---------------------------------------------------


def _induced_p3(adj: list[int], mask: int):
    for b in _bits(mask):
        nb = adj[b] & mask
        for a in _bits(nb):
            far = nb & ~adj[a] & ~(1 << a)
            if far:
                c = (far & -far).bit_length() - 1
                return (a, b, c)
    return None


def _min_hitting(obstruction, adj, n, node_limit) -> int:
    budget = _Budget(node_limit or DEFAULT_NODE_LIMIT)
    memo: dict[int, int] = {}

    def solve(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        budget.tick()
        obs = obstruction(adj, mask)
        if obs is None:
            res = 0
        else:
            res = None
            for v in obs:
                cand = (1 << v) | solve(mask & ~(1 << v))
                if res is None or cand.bit_count() < res.bit_count():
                    res = cand
        memo[mask] = res
        return res

    return solve((1 << n) - 1)


def cluster_vertex_deletion(g: Graph, node_limit: int | None = None) -> CoverCertificate:
    adj = _masks(g)
    deleted = _min_hitting(_induced_p3, adj, g.n, node_limit)
    return CoverCertificate(CVD, _to_set(deleted), exact=True)


# -- deletion to stars -----------------------------------------------------------


def _star_obstruction(adj: list[int], mask: int):
    """An induced K3, P4 or C4 inside ``mask``, or ``None`` for a star forest."""
    for a in _bits(mask):
        na = adj[a] & mask
        for b in _bits(na & ~((1 << (a + 1)) - 1)):
            common = na & adj[b]
            if common:
                c = (common & -common).bit_length() - 1
                return (a, b, c)
    for a in _bits(mask):
        na = adj[a] & mask
        if na.bit_count() < 2:
            continue
        for b in _bits(na):
            nb = adj[b] & mask
            if nb.bit_count() < 2:
                continue
            c = next(_bits(na & ~(1 << b)))
            d = next(_bits(nb & ~(1 << a)))
            return (c, a, b, d)
    return None


def deletion_to_stars(g: Graph, node_limit: int | None = None) -> CoverCertificate:
    adj = _masks(g)
    deleted = _min_hitting(_star_obstruction, adj, g.n, node_limit)
    return CoverCertificate(DTS, _to_set(deleted), exact=True)


# -- neighbourhood diversity ---------------------------------------------------


def same_type(g: Graph, u: int, v: int) -> bool:
    return g.neighbors(u) - {v} == g.neighbors(v) - {u}


def nd_partition(g: Graph) -> NdPartition:
    """Minimum partition into same-type classes, ordered by smallest member."""
    if g.directed:
        raise ValueError("neighbourhood diversity is defined for undirected graphs")
    classes: list[list[int]] = []
    for v in range(g.n):
        for cls in classes:
            if same_type(g, cls[0], v):
                cls.append(v)
                break
        else:
            classes.append([v])
    kinds = [
        "clique" if len(c) > 1 and g.has_edge(c[0], c[1]) else "independent" for c in classes
    ]
    class_of = {v: i for i, c in enumerate(classes) for v in c}
    return NdPartition(classes, kinds, class_of)


def equivalence_classes_vc(g: Graph, U) -> dict[frozenset[int], list[int]]:
    """Group the independent side by exact neighbourhood."""
    cert = resolve_cover(g, U, VC)
    classes: dict[frozenset[int], list[int]] = {}
    for v in range(g.n):
        if v not in cert.U:
            classes.setdefault(g.neighbors(v), []).append(v)
    return classes
