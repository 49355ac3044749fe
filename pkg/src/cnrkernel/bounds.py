"""Constructive upper bounds on cop numbers and the strategies behind them.

Deletions in the stationing/guarding plans are bookkeeping: a vertex is
"deleted" once some cop makes it unusable for the robber, and the plan
records which cop that is.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidSpecError
from .game import CopStrategy, GameState
from .graph import INF, Graph, is_isometric, isometric_path
from .params import VC, resolve_cover, vertex_cover


@dataclass(frozen=True)
class PlanItem:
    rule: str
    role: str  # "station", "guard" or "endgame"
    vertices: tuple[int, ...]
    consumed: tuple[int, ...] = ()

    @property
    def vertex(self) -> int:
        return self.vertices[0]


@dataclass
class BoundReport:
    kind: str
    t: int
    bound: int
    plan: list[PlanItem]
    residual: list[list[int]] = field(default_factory=list)
    endgame_cops: int = 0
    cap: int | None = None

    @property
    def plan_cops(self) -> int:
        return len(self.plan)

    def lines(self) -> list[str]:
        out = [f"{self.kind} t={self.t} bound={self.bound}"]
        for item in self.plan:
            verts = " ".join(map(str, item.vertices))
            out.append(f"  {item.rule} {item.role} {verts} (covers {len(item.consumed)})")
        if self.endgame_cops:
            out.append(f"  endgame {self.endgame_cops} cop(s) on {len(self.residual)} component(s)")
        return out


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# -- decomposition bound ------------------------------------------------------------


def bound_by_decomposition(g: Graph, U, component_bound: int = 1, kind: str = "decomposition") -> BoundReport:
    """Guard one isometric path per pair of ``U`` vertices; the robber is then
    stuck in a component of ``G - U`` that ``component_bound`` cops clear."""
    us = sorted(set(U))
    plan = []
    for i in range(0, len(us), 2):
        pair = us[i:i + 2]
        path = isometric_path(g, pair[0], pair[-1]) if len(pair) == 2 else pair
        plan.append(PlanItem("pair-guard", "guard", tuple(path), tuple(pair)))
    rest, kept = g.induced_subgraph(v for v in range(g.n) if v not in set(us))
    residual = [[kept[v] for v in comp] for comp in rest.components()]
    ell = component_bound if residual else 0
    bound = ceil_div(len(us), 2) + component_bound
    return BoundReport(kind, len(us), bound, plan, residual, ell, ceil_div(len(us), 2) + component_bound)


# -- the third-of-the-cover plan -----------------------------------------------------


def _sub(g: Graph, alive: set[int]):
    h, kept = g.induced_subgraph(alive)
    return h, kept, {v: i for i, v in enumerate(kept)}


def _try_rr1(g, U, alive):
    for v in sorted(alive - U):
        nb = g.neighbors(v) & alive
        if len(nb) >= 3:
            return PlanItem("RR1", "station", (v,), tuple(sorted(nb))), nb | {v}
    return None


def _try_rr2(g, U, alive):
    for v in sorted(alive & U):
        closed = (g.neighbors(v) | {v}) & alive
        if len(closed & U) >= 3:
            return PlanItem("RR2", "station", (v,), tuple(sorted(closed & U))), closed
    return None


def _try_rr3(g, U, alive):
    h, kept, index = _sub(g, alive)
    d = h.distances.d
    us = sorted(alive & U)
    for i, x in enumerate(us):
        for y in us[i + 1:]:
            if d[index[x], index[y]] == INF:
                continue
            path = [kept[p] for p in isometric_path(h, index[x], index[y])]
            covered = [p for p in path if p in U]
            if len(covered) >= 3:
                return PlanItem("RR3", "guard", tuple(path), tuple(covered)), set(path)
    return None


def lemma3_violations(g: Graph, U: set[int], component: list[int]) -> list[tuple[int, int]]:
    """Cover pairs of a residual component that are neither adjacent nor share
    an independent neighbour inside the component."""
    inside = set(component)
    us = sorted(inside & U)
    bad = []
    for i, x in enumerate(us):
        for y in us[i + 1:]:
            if g.has_edge(x, y):
                continue
            common = g.neighbors(x) & g.neighbors(y) & inside
            if not any(w not in U for w in common):
                bad.append((x, y))
    return bad


def vcn_third_plan(g: Graph, cover=None) -> BoundReport:
    """Station or guard cops while each new cop neutralises at least three
    cover vertices, then finish with at most two cops."""
    if g.directed:
        raise InvalidSpecError("the plan is defined for undirected graphs")
    cert = resolve_cover(g, cover, VC)
    U = set(cert.U)
    alive = set(range(g.n))
    plan: list[PlanItem] = []
    while True:
        step = _try_rr1(g, U, alive) or _try_rr2(g, U, alive) or _try_rr3(g, U, alive)
        if step is None:
            break
        item, removed = step
        plan.append(item)
        alive -= removed
    h, kept, _ = _sub(g, alive)
    residual = [[kept[v] for v in comp] for comp in h.components()]
    for comp in residual:
        bad = lemma3_violations(g, U, comp)
        if bad:
            raise AssertionError(f"residual component {comp} breaks the pairwise-cover property at {bad[0]}")
    if not residual:
        endgame = 0
    elif not (alive & U):
        endgame = 1
    else:
        endgame = 2
    t = len(U)
    return BoundReport(VC, t, len(plan) + endgame, plan, residual, endgame, ceil_div(t, 3) + 1)


# -- path guarding -----------------------------------------------------------------------


@dataclass
class GuardState:
    path: tuple[int, ...]
    cop_index: int | None
    shadow_index: int

    @property
    def established(self) -> bool:
        return self.cop_index == self.shadow_index


class PathGuard:
    """One cop shadowing the robber along an isometric path.

    The shadow of the robber is the path vertex whose index equals its
    distance from the first path vertex, clipped to the path length.  The cop
    first walks to the path, then moves one index per turn towards the
    shadow; once it sits on the shadow it stays there for good.
    """

    def __init__(self, g: Graph, path):
        path = tuple(path)
        if not is_isometric(g, path):
            raise ValueError(f"path {path} is not isometric")
        self.g = g
        self.path = path
        self.index = {p: i for i, p in enumerate(path)}
        self.d = g.distances.d

    def shadow(self, robber: int) -> int:
        return min(int(self.d[self.path[0], robber]), len(self.path) - 1)

    def state(self, cop: int, robber: int) -> GuardState:
        return GuardState(self.path, self.index.get(cop), self.shadow(robber))

    def next_position(self, cop: int, robber: int) -> int:
        if self.d[cop, robber] <= 1:
            return robber
        i = self.index.get(cop)
        if i is None:
            # walk to the nearest path vertex, lowest index on ties
            target = min(self.path, key=lambda p: (self.d[cop, p], self.index[p]))
            return isometric_path(self.g, cop, target)[1]
        s = self.shadow(robber)
        if s > i:
            return self.path[i + 1]
        if s < i:
            return self.path[i - 1]
        return cop

    def strategy(self, start: int | None = None) -> CopStrategy:
        start = self.path[0] if start is None else start

        def move(state: GameState) -> GameState:
            nxt = self.next_position(state.cops[0], state.robber)
            return GameState((nxt,), state.robber, "robber")

        return CopStrategy((start,), move, "guard")


def guard_path_strategy(g: Graph, path) -> PathGuard:
    return PathGuard(g, path)


# -- two-cop endgame ------------------------------------------------------------------------


def endgame_violations(h: Graph, U: set[int]) -> list[str]:
    out = []
    for v in range(h.n):
        cover_nb = h.neighbors(v) & U
        if v not in U and len(cover_nb) > 2:
            out.append(f"independent vertex {v} has {len(cover_nb)} cover neighbours")
        if v in U and len(cover_nb) + 1 > 2:
            out.append(f"cover vertex {v} has {len(cover_nb)} cover neighbours")
    for comp in h.components():
        for x, y in lemma3_violations(h, U, comp):
            out.append(f"cover vertices {x},{y} are far apart")
    return out


class TwoCopEndgame:
    """Two cops on a graph whose cover vertices are pairwise adjacent or share
    an independent neighbour, with sparse cover adjacency.

    Cops rest on cover vertices.  A robber on an independent vertex has at
    most two cover exits; each gets a cop that walks to it, which pins the
    robber and then closes in.  A robber on a cover vertex is attacked from a
    neighbour, which pushes it to an independent vertex (or to its single
    cover neighbour, where the same cop follows through the shared vertex).
    """

    def __init__(self, h: Graph, U):
        self.h = h
        self.U = set(U) & set(range(h.n))
        bad = endgame_violations(h, self.U)
        if bad:
            raise ValueError("endgame preconditions fail: " + "; ".join(bad))
        self.d = h.distances.d

    def placement(self) -> tuple[int, int]:
        us = sorted(self.U) or [0]
        return (us[0], us[1] if len(us) > 1 else us[0])

    def _step(self, cop: int, target: int, prefer_cover: bool = False) -> int:
        dist = self.d[cop, target]
        if dist == 0:
            return cop
        options = [w for w in self.h.neighbors(cop) if self.d[w, target] == dist - 1]
        if prefer_cover:
            return min(options, key=lambda w: (w not in self.U, w))
        return min(options)

    def _to_cover(self, cop: int, robber: int) -> int:
        if cop in self.U or not self.U:
            return cop
        options = self.h.neighbors(cop) & self.U
        if not options:
            return cop
        return min(options, key=lambda w: (self.d[w, robber], w))

    def next_positions(self, cops: tuple[int, int], r: int) -> tuple[int, int]:
        a, b = cops
        for i, c in enumerate(cops):
            if self.d[c, r] <= 1:
                out = list(cops)
                out[i] = r
                return tuple(out)
        if r not in self.U:
            targets = sorted(self.h.neighbors(r) & self.U)
            if not targets:
                return (self._step(a, r), b)
            if len(targets) == 1:
                u = targets[0]
                first = 0 if (self.d[a, u], 0) <= (self.d[b, u], 1) else 1
                out = [self._to_cover(a, r), self._to_cover(b, r)]
                out[first] = self._step(cops[first], u)
                return tuple(out)
            u, v = targets
            plain = (max(self.d[a, u], self.d[b, v]), self.d[a, u] + self.d[b, v])
            swap = (max(self.d[a, v], self.d[b, u]), self.d[a, v] + self.d[b, u])
            if swap < plain:
                u, v = v, u
            return (self._step(a, u), self._step(b, v))
        # robber on a cover vertex: the closer cop attacks, the other rests in U
        first = 0 if (self.d[a, r], a not in self.U) <= (self.d[b, r], b not in self.U) else 1
        out = [self._to_cover(a, r), self._to_cover(b, r)]
        out[first] = self._step(cops[first], r, prefer_cover=True)
        return tuple(out)

    def strategy(self) -> CopStrategy:
        def move(state: GameState) -> GameState:
            return GameState(self.next_positions(state.cops, state.robber), state.robber, "robber")

        return CopStrategy(self.placement(), move, "two-cop-endgame")


def two_cop_endgame(h: Graph, U) -> CopStrategy:
    return TwoCopEndgame(h, U).strategy()


# -- variant table -----------------------------------------------------------------------------


def lazy_station_plan(g: Graph, cover=None) -> BoundReport:
    """Stations that each take two cover vertices out of play; what is left
    is a set of stars centred in the cover, handled by one more cop."""
    g = g.underlying()
    cert = resolve_cover(g, cover, VC)
    U = set(cert.U)
    alive = set(range(g.n))
    plan = []
    while True:
        item = None
        for v in sorted(alive - U):
            nb = g.neighbors(v) & alive
            if len(nb) > 1:
                item = PlanItem("RR15", "station", (v,), tuple(sorted(nb)))
                alive -= nb | {v}
                break
        if item is None:
            for v in sorted(alive & U):
                closed = (g.neighbors(v) | {v}) & alive
                if len(closed & U) > 1:
                    item = PlanItem("RR16", "station", (v,), tuple(sorted(closed & U)))
                    alive -= closed
                    break
        if item is None:
            break
        plan.append(item)
    h, kept, _ = _sub(g, alive)
    residual = [[kept[v] for v in comp] for comp in h.components()]
    t = len(U)
    return BoundReport("lazy", t, len(plan) + 1, plan, residual, 1, ceil_div(t, 2) + 1)


VARIANT_KEYS = ("classic", "lazy", "attacking", "active", "surround", "fast", "directed_strong")


def variant_bound_table(g: Graph, cover=None) -> tuple[dict[str, int], dict[str, BoundReport]]:
    """Upper bounds per variant from a vertex cover of the underlying graph.

    ``directed_strong`` is only present for strongly connected digraphs; the
    other entries are present for undirected graphs.
    """
    ug = g.underlying()
    cert = resolve_cover(ug, cover, VC)
    t = cert.t
    plans: dict[str, BoundReport] = {}
    table: dict[str, int] = {}
    flat = max(t, 1)
    if g.directed:
        if g.is_connected:
            table["directed_strong"] = flat
        return table, plans
    plans["classic"] = vcn_third_plan(g, cert)
    plans["lazy"] = lazy_station_plan(g, cert)
    table["classic"] = plans["classic"].bound
    table["lazy"] = table["attacking"] = max(plans["lazy"].bound, 1)
    table["active"] = table["surround"] = table["fast"] = flat
    return table, plans


def closed_form_bounds(t: int) -> dict[str, int]:
    flat = max(t, 1)
    return {
        "classic": ceil_div(t, 3) + 1,
        "lazy": ceil_div(t, 2) + 1,
        "attacking": ceil_div(t, 2) + 1,
        "active": flat,
        "surround": flat,
        "fast": flat,
        "directed_strong": flat,
    }


def variant_upper_bound(g: Graph, spec) -> int | None:
    """Upper bound for the variant named by ``spec``, or ``None`` if none applies."""
    name = spec.name
    if g.directed:
        if name != "directed" or not g.is_connected:
            return None
        return closed_form_bounds(vertex_cover(g.underlying()).t)["directed_strong"]
    key = {"attacking": "attacking", "fast": "fast"}.get(name, name)
    bounds = closed_form_bounds(vertex_cover(g).t)
    return bounds.get(key)
