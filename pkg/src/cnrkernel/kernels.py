"""Kernelization pipelines for the k-copwin question.

Each pipeline either decides the instance outright (threshold rules, or a
direct solve when k = 1) or deletes vertices that some surviving vertex
dominates.  Deleted vertices remember a witness; following witnesses gives
the image map used to lift kernel strategies back to the input graph.

Trace entries use input-graph ids.  ``kept[j]`` is the input id of vertex
``j`` of the reduced graph and ``image[v]`` is a reduced-graph id.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .bounds import ceil_div
from .errors import DisconnectedGraphError, InvalidSpecError
from .game import COP, ROBBER, CopStrategy, GameState, solve
from .graph import Graph
from .params import CVD, DTS, VC, CoverCertificate, nd_partition, resolve_cover
from .variants import VariantSpec

YES, NO = "Yes", "No"


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    deleted: tuple[int, ...]
    witnesses: tuple[int, ...]

    def line(self) -> str:
        return f"{self.rule} {','.join(map(str, self.deleted))} {','.join(map(str, self.witnesses))}"


@dataclass(frozen=True)
class KernelResult:
    original: Graph
    reduced: Graph
    kept: tuple[int, ...]
    verdict: str | None
    trace: tuple[TraceEntry, ...]
    image: tuple[int, ...]
    param_kind: str
    k: int
    t: int
    spec: VariantSpec
    cover: frozenset[int] = field(default_factory=frozenset)
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def deleted(self) -> list[int]:
        return [v for e in self.trace for v in e.deleted]

    @property
    def changed(self) -> bool:
        return bool(self.trace)

    def image_vertex(self, v: int) -> int:
        """Input-graph id of the surviving vertex that ``v`` maps to."""
        return self.kept[self.image[v]]

    @property
    def _index(self) -> dict[int, int]:
        return {v: j for j, v in enumerate(self.kept)}

    def reduced_cover(self) -> frozenset[int]:
        index = self._index
        return frozenset(index[v] for v in self.cover if v in index)

    def trace_lines(self) -> list[str]:
        return [e.line() for e in self.trace]

    def answer(self, state_cap: int | None = None) -> bool:
        """The k-copwin answer: the verdict if one was reached, else a solve
        of the reduced instance."""
        if self.verdict is not None:
            return self.verdict == YES
        return solve(self.reduced, self.spec, state_cap).copwin


class _Deletions:
    """Accumulates deletions and composes witnesses into an image map."""

    def __init__(self, n: int):
        self.alive = set(range(n))
        self.witness: dict[int, int] = {}
        self.trace: list[TraceEntry] = []

    def delete(self, rule: str, pairs: list[tuple[int, int]]):
        if not pairs:
            return
        pairs = sorted(pairs)
        for u, v in pairs:
            self.alive.discard(u)
            self.witness[u] = v
        self.trace.append(TraceEntry(rule, tuple(u for u, _ in pairs), tuple(v for _, v in pairs)))

    def image(self, n: int, kept) -> tuple[int, ...]:
        index = {v: j for j, v in enumerate(kept)}
        out = []
        for v in range(n):
            while v in self.witness:
                v = self.witness[v]
            out.append(index[v])
        return tuple(out)


def _finish(g, spec, kind, t, cover, dels: _Deletions, verdict=None, stats=None) -> KernelResult:
    reduced, kept = g.induced_subgraph(dels.alive)
    return KernelResult(
        g, reduced, tuple(kept), verdict, tuple(dels.trace), dels.image(g.n, kept),
        kind, spec.k, t, spec, frozenset(cover), stats or {},
    )


def _early(g, spec, kind, t, cover, verdict, rule) -> KernelResult:
    dels = _Deletions(g.n)
    res = _finish(g, spec, kind, t, cover, dels, verdict)
    res.stats["decided_by"] = rule
    return res


def _direct(g, spec, kind, t, cover, rule) -> KernelResult:
    verdict = YES if solve(g, spec).copwin else NO
    return _early(g, spec, kind, t, cover, verdict, rule)


def _maximal_survivors(cands: list[int], key) -> list[tuple[int, int]]:
    """Delete every candidate whose key set is contained in another's.

    Among equal keys the lowest id survives.  Returns ``(deleted, witness)``
    with the witness being the lowest-id survivor that contains it.
    """
    cands = sorted(cands)
    keys = {v: key(v) for v in cands}
    survivors = []
    for v in cands:
        dominated = any(
            keys[v] <= keys[w] and (keys[v] != keys[w] or w < v) for w in cands if w != v
        )
        if not dominated:
            survivors.append(v)
    pairs = []
    for u in cands:
        if u in survivors:
            continue
        pairs.append((u, min(w for w in survivors if keys[u] <= keys[w])))
    return pairs


def _prepare(g: Graph, directed: bool):
    if g.directed != directed:
        raise InvalidSpecError("graph orientation does not match the pipeline")
    g.require_connected()


# -- vertex cover -------------------------------------------------------------------


def vcn_threshold(t: int, spec: VariantSpec) -> int:
    if spec.name in ("lazy", "attacking"):
        return ceil_div(t, 2) + 1
    return ceil_div(t, 3) + 1


def kernelize_vcn(
    g: Graph,
    k: int,
    cover=None,
    spec: VariantSpec | None = None,
    use_thresholds: bool = True,
    order=None,
) -> KernelResult:
    """``order`` switches to one-at-a-time deletion in the given vertex order."""
    _prepare(g, False)
    spec = (spec or VariantSpec.classic()).with_k(k)
    if spec.name not in ("classic", "lazy", "attacking"):
        raise InvalidSpecError("the vertex cover kernel covers the classic, lazy and attacking games")
    cert = resolve_cover(g, cover, VC)
    U, t = set(cert.U), cert.t
    rule_t = "RR7" if spec.name == "classic" else "RR17"
    if use_thresholds and k >= vcn_threshold(t, spec):
        return _early(g, spec, VC, t, U, YES, rule_t)
    if k == 1:
        return _direct(g, spec, VC, t, U, "RR8" if spec.name == "classic" else "RR18")
    dels = _Deletions(g.n)
    indep = [v for v in range(g.n) if v not in U]
    if order is None:
        dels.delete("RR9", _maximal_survivors(indep, g.neighbors))
    else:
        for u in order:
            if u in U:
                continue
            ws = [v for v in indep if v != u and v in dels.alive and g.neighbors(u) <= g.neighbors(v)]
            if ws:
                dels.delete("RR9", [(u, min(ws))])
    return _finish(g, spec, VC, t, U, dels)


# -- cluster vertex deletion ---------------------------------------------------------


def _residual_parts(g: Graph, U: set[int]) -> list[list[int]]:
    h, kept = g.induced_subgraph(v for v in range(g.n) if v not in U)
    return [[kept[v] for v in comp] for comp in h.components()]


def _nu(g: Graph, U: set[int]):
    return lambda v: g.neighbors(v) & U


def _subsumes(src: list[int], dst: list[int], nu) -> list[tuple[int, int]] | None:
    """Witness map if each vertex of ``src`` is N_U-dominated inside ``dst``."""
    pairs = []
    for u in src:
        ws = [w for w in dst if nu(u) <= nu(w)]
        if not ws:
            return None
        pairs.append((u, min(ws)))
    return pairs


def kernelize_cvd(g: Graph, k: int, cvd_set=None, use_thresholds: bool = True) -> KernelResult:
    _prepare(g, False)
    spec = VariantSpec.classic(k)
    cert = resolve_cover(g, cvd_set, CVD)
    U, t = set(cert.U), cert.t
    if use_thresholds and k >= ceil_div(t, 2) + 1:
        return _early(g, spec, CVD, t, U, YES, "RR10")
    if k == 1:
        return _direct(g, spec, CVD, t, U, "RR8")
    nu = _nu(g, U)
    dels = _Deletions(g.n)
    cliques = _residual_parts(g, U)
    for clique in cliques:
        dels.delete("RR11", _maximal_survivors(clique, nu))
    cliques = [[v for v in c if v in dels.alive] for c in cliques]
    _drop_subsumed_parts(cliques, lambda src, dst: _subsumes(src, dst, nu), dels, "RR12")
    return _finish(g, spec, CVD, t, U, dels)


def _drop_subsumed_parts(parts, subsume, dels: _Deletions, rule: str):
    """Repeatedly delete a part dominated by another one; of two mutually
    dominated parts the one with the larger smallest id goes."""
    parts = sorted(parts, key=min)
    while True:
        hit = None
        for i, src in enumerate(parts):
            for j, dst in enumerate(parts):
                if i == j:
                    continue
                pairs = subsume(src, dst)
                if pairs is None:
                    continue
                if min(src) < min(dst) and subsume(dst, src) is not None:
                    continue
                hit = (i, pairs)
                break
            if hit:
                break
        if hit is None:
            return
        i, pairs = hit
        dels.delete(rule, pairs)
        parts.pop(i)


# -- deletion to stars ---------------------------------------------------------------


def _star_center(g: Graph, star: list[int]) -> int:
    if len(star) <= 2:
        return min(star)
    inside = set(star)
    return max(star, key=lambda v: (len(g.neighbors(v) & inside), -v))


def kernelize_dts(g: Graph, k: int, dts_set=None, use_thresholds: bool = True) -> KernelResult:
    _prepare(g, False)
    spec = VariantSpec.classic(k)
    cert = resolve_cover(g, dts_set, DTS)
    U, t = set(cert.U), cert.t
    if use_thresholds and k >= ceil_div(t, 2) + 1:
        return _early(g, spec, DTS, t, U, YES, "RR10")
    if k == 1:
        return _direct(g, spec, DTS, t, U, "RR8")
    nu = _nu(g, U)
    dels = _Deletions(g.n)
    stars = []
    for star in _residual_parts(g, U):
        c = _star_center(g, star)
        leaves = [v for v in star if v != c]
        dels.delete("RR13", _maximal_survivors(leaves, nu))
        stars.append((c, [v for v in leaves if v in dels.alive]))

    def subsume(src, dst):
        (x, xs), (y, ys) = src, dst
        if not nu(x) <= nu(y):
            return None
        leaf_pairs = _subsumes(xs, ys, nu) if xs else []
        if leaf_pairs is None:
            return None
        return [(x, y)] + leaf_pairs

    def subsume_any(a, b):
        for src in a.shapes:
            for dst in b.shapes:
                pairs = subsume(src, dst)
                if pairs is not None:
                    return pairs
        return None

    parts = [_Star(c, leaves) for c, leaves in stars]
    _drop_subsumed_parts(parts, subsume_any, dels, "RR14")
    return _finish(g, spec, DTS, t, U, dels)


class _Star(list):
    """A star as its vertex list, remembering which vertex may be the centre."""

    def __init__(self, center: int, leaves: list[int]):
        super().__init__([center] + leaves)
        self.shapes = [(center, leaves)]
        if len(leaves) == 1:
            # an edge is a star centred at either end
            self.shapes.append((leaves[0], [center]))


# -- neighbourhood diversity ---------------------------------------------------------


def kernelize_nd(g: Graph, k: int, use_thresholds: bool = True, exhaustive: bool = False) -> KernelResult:
    """One representative per type class.  With ``exhaustive`` the rule is
    reapplied to the reduced graph until nothing changes."""
    _prepare(g, False)
    spec = VariantSpec.classic(k)
    part = nd_partition(g)
    w = part.w
    if use_thresholds and k >= w:
        return _early(g, spec, "nd", w, (), YES, "RR23")
    if k == 1:
        return _direct(g, spec, "nd", w, (), "RR8")
    dels = _Deletions(g.n)
    dels.delete("RR24", [(v, cls[0]) for cls in part.classes for v in cls[1:]])
    if not exhaustive:
        return _finish(g, spec, "nd", w, (), dels)
    # representatives of different classes can be twins in the reduced graph
    res = _finish(g, spec, "nd", w, (), dels)
    while res.reduced.n > 1:
        nxt = kernelize_nd(res.reduced, k, use_thresholds=False)
        if not nxt.changed:
            break
        res = _compose(res, nxt)
    return res


def _compose(first: KernelResult, second: KernelResult) -> KernelResult:
    """``second`` ran on ``first.reduced``; express it in input ids."""
    kept = tuple(first.kept[v] for v in second.kept)
    trace = first.trace + tuple(
        TraceEntry(e.rule, tuple(first.kept[u] for u in e.deleted), tuple(first.kept[v] for v in e.witnesses))
        for e in second.trace
    )
    image = tuple(second.image[first.image[v]] for v in range(first.original.n))
    return replace(first, reduced=second.reduced, kept=kept, trace=trace, image=image)


# -- directed ---------------------------------------------------------------------------


def kernelize_directed(g: Graph, k: int, cover=None, use_thresholds: bool = True) -> KernelResult:
    _prepare(g, True)
    spec = VariantSpec.directed_classic(k)
    cert = resolve_cover(g.underlying(), cover, VC)
    U, t = set(cert.U), cert.t
    if use_thresholds and k >= t:
        return _early(g, spec, "directed", t, U, YES, "RR19")
    if k == 1:
        return _direct(g, spec, "directed", t, U, "RR20")
    dels = _Deletions(g.n)
    key = lambda v: _Pair(g.out_neighbors(v), g.in_neighbors(v))  # noqa: E731
    dels.delete("RR21", _maximal_survivors([v for v in range(g.n) if v not in U], key))
    res = _finish(g, spec, "directed", t, U, dels)
    if not res.reduced.is_connected:
        raise DisconnectedGraphError("reduced digraph lost strong connectivity")
    return res


class _Pair(tuple):
    """(out, in) neighbourhoods ordered by simultaneous containment."""

    def __new__(cls, out, inn):
        return super().__new__(cls, (frozenset(out), frozenset(inn)))

    def __le__(self, other):
        return self[0] <= other[0] and self[1] <= other[1]


# -- general equivalence-class truncation -------------------------------------------------


def generalized_threshold(t: int, spec: VariantSpec) -> int:
    """Cop count at which the answer is Yes without search.

    Cops on every cover vertex win at their first move in every supported
    variant; the named variants have sharper bounds.
    """
    best = max(t, 1)
    if spec.name == "classic":
        best = min(best, ceil_div(t, 3) + 1)
    elif spec.name in ("lazy", "attacking"):
        best = min(best, ceil_div(t, 2) + 1)
    return best


def kernelize_generalized(g: Graph, spec: VariantSpec, cover=None, use_thresholds: bool = True) -> KernelResult:
    if spec.directed or g.directed:
        raise InvalidSpecError("class truncation is defined for undirected graphs")
    _prepare(g, False)
    k = spec.k
    cert = resolve_cover(g, cover, VC)
    U, t = set(cert.U), cert.t
    if use_thresholds and k >= generalized_threshold(t, spec):
        return _early(g, spec, "general", t, U, YES, "RR19")
    if k == 1:
        return _direct(g, spec, "general", t, U, "RR20")
    dels = _Deletions(g.n)
    classes: dict[frozenset[int], list[int]] = {}
    for v in range(g.n):
        if v not in U:
            classes.setdefault(g.neighbors(v), []).append(v)
    for members in sorted(classes.values()):
        if len(members) > k + 1:
            dels.delete("RR22", [(v, members[0]) for v in members[k + 1:]])
    return _finish(g, spec, "general", t, U, dels)


PIPELINES = ("vc", "cvd", "dts", "nd", "directed", "general")


def kernelize(param: str, g: Graph, k: int, cover=None, spec: VariantSpec | None = None, **kw) -> KernelResult:
    if param == "vc":
        return kernelize_vcn(g, k, cover, spec, **kw)
    if param == "cvd":
        return kernelize_cvd(g, k, cover, **kw)
    if param == "dts":
        return kernelize_dts(g, k, cover, **kw)
    if param == "nd":
        return kernelize_nd(g, k, **kw)
    if param == "directed":
        return kernelize_directed(g, k, cover, **kw)
    if param in ("general", "generalized"):
        return kernelize_generalized(g, (spec or VariantSpec.classic()).with_k(k), cover, **kw)
    raise InvalidSpecError(f"unknown kernel parameter {param!r}")


def rekernelize(res: KernelResult, **kw) -> KernelResult:
    """Run the same pipeline again on the reduced graph with the restricted cover."""
    cover = None
    if res.param_kind in (VC, CVD, DTS, "directed", "general"):
        cover = CoverCertificate(
            {"directed": VC, "general": VC}.get(res.param_kind, res.param_kind),
            res.reduced_cover(),
        )
    param = {VC: "vc"}.get(res.param_kind, res.param_kind)
    if param == "general":
        return kernelize_generalized(res.reduced, res.spec, cover, **kw)
    spec = res.spec if param == "vc" else None
    return kernelize(param, res.reduced, res.k, cover, spec, **kw)


# -- strategy lifting -----------------------------------------------------------------------


def lift_strategy(kres: KernelResult, kernel_policy: CopStrategy) -> CopStrategy:
    """Cop policy on the input graph from a winning policy on the kernel.

    The cops play the kernel policy against the robber's image.  Once a cop
    stands next to or on the image of a robber sitting on a deleted vertex,
    that cop keeps the image occupied (the robber cannot leave without being
    caught) and the remaining cops close in along shortest paths.
    """
    if kres.spec.name != "classic" or kres.original.directed:
        raise InvalidSpecError("strategy lifting is implemented for the classic game only")
    if kres.k < 2:
        raise InvalidSpecError("lifting needs at least two cops")
    if kres.verdict == NO:
        raise ValueError("cannot lift: the kernel instance is a No-instance")
    if not kres.changed:
        return kernel_policy
    g = kres.original
    d = g.distances.d
    kept = kres.kept
    index = {v: j for j, v in enumerate(kept)}
    image = [kept[j] for j in kres.image]
    deleted = set(range(g.n)) - set(kept)
    block = {}
    if deleted:
        h, ids = g.induced_subgraph(deleted)
        for comp in h.components():
            members = {ids[v] for v in comp}
            # vertices of the block adjacent to all of it: the whole clique, a star centre
            hubs = tuple(x for x in members if members <= g.closed_neighborhood(x))
            for v in members:
                # without a hub the held robber cannot move, so chase it directly
                block[v] = hubs or (v,)

    def walk(cop: int, targets) -> int:
        if cop in targets:
            return cop
        to_target = lambda w: min(d[w, x] for x in targets)  # noqa: E731
        return min(g.neighbors(cop), key=lambda w: (to_target(w), w))

    def move(state: GameState) -> GameState:
        cops, r = list(state.cops), state.robber
        for i, c in enumerate(cops):
            if d[c, r] <= 1:
                cops[i] = r
                return GameState(tuple(cops), r, ROBBER)
        img = image[r]
        near = [i for i, c in enumerate(cops) if d[c, img] <= 1]
        if r in deleted and near:
            # keep the cop nearest the block free to chase
            gap = [min(d[c, x] for x in block[r]) for c in cops]
            holder = min(near, key=lambda i: (min((gap[j] for j in range(len(cops)) if j != i), default=0), i))
            out = [walk(c, block[r]) for c in cops]
            out[holder] = img
            return GameState(tuple(out), r, ROBBER)
        if any(c not in index for c in cops):
            # a walker left the kernel while the hold was lost; head back
            out = [c if c in index else walk(c, (img,)) for c in cops]
            return GameState(tuple(out), r, ROBBER)
        kstate = GameState(tuple(index[c] for c in cops), index[img], COP)
        nxt = kernel_policy.move(kstate)
        return GameState(tuple(kept[c] for c in nxt.cops), r, ROBBER)

    placement = tuple(kept[c] for c in kernel_policy.place())
    return CopStrategy(placement, move, "lifted", kernel_policy.rank_bound)
