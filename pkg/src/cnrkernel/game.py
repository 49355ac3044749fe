"""Exact solving of the cops-and-robber game and its variants.

Positions are arrays indexed by ``(c_1, ..., c_k, r)``.  Two boolean layers
hold the positions already known to be won by the cops: ``wc`` with the cops
to move and ``wr`` with the robber to move.  Both grow monotonically until a
fixpoint; each position remembers the iteration that added it (its rank),
which bounds the remaining number of cop moves and drives the policies.

For the attacking robber the cop axes get one extra index, ``n``, standing
for an eliminated cop.
"""
from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExceededError,
    IllegalMoveError,
    InvalidSpecError,
    MalformedStateError,
)
from .graph import INF, Graph
from .variants import ACTIVE, LAZY, SURROUND, VariantSpec

COP, ROBBER = "cop", "robber"
COPWIN, ROBBERWIN = "CopWin", "RobberWin"

DEFAULT_STATE_CAP = int(os.environ.get("CNR_STATE_CAP", 4_000_000))


@dataclass(frozen=True)
class GameState:
    """``cops``/``robber`` are ``None`` before placement.  Eliminated cops keep
    their last vertex but are flagged in ``alive``."""

    cops: tuple[int, ...] | None
    robber: int | None
    turn: str = COP
    alive: tuple[bool, ...] | None = None

    def __post_init__(self):
        if self.cops is not None:
            object.__setattr__(self, "cops", tuple(int(c) for c in self.cops))
            if self.alive is None:
                object.__setattr__(self, "alive", (True,) * len(self.cops))
            else:
                object.__setattr__(self, "alive", tuple(bool(a) for a in self.alive))
        if self.turn not in (COP, ROBBER):
            raise MalformedStateError(f"turn must be 'cop' or 'robber', got {self.turn!r}")

    def live_cops(self) -> list[int]:
        return [c for c, a in zip(self.cops, self.alive) if a]

    def key(self, n: int) -> tuple[int, ...]:
        """Array coordinates: eliminated cops map to index ``n``."""
        return tuple(c if a else n for c, a in zip(self.cops, self.alive)) + (self.robber,)

    def positions(self) -> str:
        cops = ",".join(str(c) if a else f"x{c}" for c, a in zip(self.cops or (), self.alive or ()))
        rob = "-" if self.robber is None else str(self.robber)
        return f"{cops or '-'} {rob}"


# -- per-state rules ------------------------------------------------------------


def _check_spec(g: Graph, spec: VariantSpec) -> None:
    if spec.directed != g.directed:
        raise InvalidSpecError("variant directedness does not match the graph")


def _check_state(g: Graph, spec: VariantSpec, state: GameState, turn: str):
    if state.turn != turn:
        raise MalformedStateError(f"expected a {turn}-to-move state")
    if state.cops is None or len(state.cops) != spec.k:
        raise MalformedStateError(f"state must carry {spec.k} cop positions")
    if any(not 0 <= c < g.n for c in state.cops):
        raise MalformedStateError("cop position outside the graph")
    if not spec.robber.attacking and not all(state.alive):
        raise MalformedStateError("cops can only be eliminated by an attacking robber")
    if (state.robber is None or not 0 <= state.robber < g.n):
        raise MalformedStateError("robber position missing or outside the graph")


def _occupied(state: GameState) -> set[int]:
    return set(state.live_cops())


def _safe(g: Graph, spec: VariantSpec, cops, alive, x: int) -> bool:
    d = g.distances.d
    return all(not a or d[c, x] > cs.reach for c, a, cs in zip(cops, alive, spec.cops))


def robber_zone(g: Graph, spec: VariantSpec, cops, alive=None) -> tuple[list[bool], list[bool]]:
    """``(endable, passable)`` per vertex for the given cop placement."""
    alive = alive or (True,) * len(cops)
    if spec.capture_mode == SURROUND:
        occ = {c for c, a in zip(cops, alive) if a}
        return [x not in occ for x in range(g.n)], [True] * g.n
    safe = [_safe(g, spec, cops, alive, x) for x in range(g.n)]
    return safe, safe


def captured(g: Graph, spec: VariantSpec, state: GameState) -> bool:
    if state.robber is None or state.cops is None:
        return False
    r = state.robber
    if spec.capture_mode == SURROUND:
        occ = _occupied(state)
        return all(y in occ for y in g.out_neighbors(r))
    return not _safe(g, spec, state.cops, state.alive, r)


def _order(g: Graph, states: Iterable[GameState]) -> list[GameState]:
    uniq = {s.key(g.n) + (s.alive,): s for s in states}
    return [uniq[key] for key in sorted(uniq, key=lambda t: t[:-1])]


def cop_options(g: Graph, spec: VariantSpec, i: int, c: int) -> list[int]:
    cs = spec.cops[i]
    if cs.activity == ACTIVE:
        return sorted(g.out_neighbors(c))
    row = g.distances.d[c]
    return [int(v) for v in np.flatnonzero(row <= cs.speed)]


def legal_cop_moves(g: Graph, spec: VariantSpec, state: GameState) -> list[GameState]:
    _check_state(g, spec, state, COP)
    per_cop = []
    for i, (c, a) in enumerate(zip(state.cops, state.alive)):
        per_cop.append(cop_options(g, spec, i, c) if a else [c])
    lazy = [i for i, cs in enumerate(spec.cops) if cs.activity == LAZY and state.alive[i]]
    out = []
    for combo in itertools.product(*per_cop):
        if sum(combo[i] != state.cops[i] for i in lazy) > 1:
            continue
        out.append(GameState(combo, state.robber, ROBBER, state.alive))
    return _order(g, out)


def robber_targets(g: Graph, spec: VariantSpec, state: GameState) -> list[int]:
    """Vertices the robber may end a normal (non-attack) move on."""
    endable, passable = robber_zone(g, spec, state.cops, state.alive)
    r = state.robber
    if spec.robber.activity == ACTIVE:
        return sorted(y for y in g.out_neighbors(r) if endable[y])
    ends = {r} if endable[r] else set()
    frontier, seen = [r], {r}
    for _ in range(spec.robber.speed):
        nxt = []
        for x in frontier:
            for y in g.out_neighbors(x):
                if endable[y]:
                    ends.add(y)
                if passable[y] and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(ends)


def legal_robber_moves(g: Graph, spec: VariantSpec, state: GameState) -> list[GameState]:
    _check_state(g, spec, state, ROBBER)
    out = [GameState(state.cops, y, COP, state.alive) for y in robber_targets(g, spec, state)]
    if spec.robber.attacking:
        for y in sorted(g.out_neighbors(state.robber)):
            here = [i for i, (c, a) in enumerate(zip(state.cops, state.alive)) if a and c == y]
            if len(here) == 1:
                alive = list(state.alive)
                alive[here[0]] = False
                out.append(GameState(state.cops, y, COP, tuple(alive)))
            elif len(here) > 1:
                # one cop falls, another captures: the robber lands on a cop
                out.append(GameState(state.cops, y, COP, state.alive))
    return _order(g, out)


def robber_placements(g: Graph, spec: VariantSpec, cops: Sequence[int]) -> list[int]:
    endable, _ = robber_zone(g, spec, tuple(cops))
    return [x for x in range(g.n) if endable[x]]


# -- vectorised fixpoint ---------------------------------------------------------


def _axis_view(z: np.ndarray, axis: int, k: int) -> np.ndarray:
    shape = [1] * (k + 1)
    shape[axis] = z.shape[0]
    if z.ndim == 2:
        shape[-1] = z.shape[1]
    return z.reshape(shape)


def _exists_along(y: np.ndarray, m: np.ndarray, axis: int) -> np.ndarray:
    t = np.tensordot(m, y.astype(np.float32), axes=([1], [axis]))
    return np.moveaxis(t, 0, axis) > 0


class _Board:
    def __init__(self, g: Graph, spec: VariantSpec, state_cap: int | None):
        _check_spec(g, spec)
        g.require_connected()
        self.g, self.spec = g, spec
        n, k = g.n, spec.k
        self.n, self.k = n, k
        self.attacking = spec.robber.attacking
        self.P = n + 1 if self.attacking else n
        self.dead = n
        self.shape = (self.P,) * k + (n,)
        size = math.prod(self.shape)
        cap = state_cap or DEFAULT_STATE_CAP
        if size > cap:
            raise BudgetExceededError(
                f"{2 * size} positions exceed the cap ({cap} per layer); raise CNR_STATE_CAP"
            )
        self.size = size
        d = g.distances.d
        self.adj = g.adjacency.astype(np.float32)
        self.adj_t = np.ascontiguousarray(self.adj.T)
        P = self.P

        if spec.capture_mode == SURROUND:
            occ = np.zeros(self.shape, dtype=bool)
            for i in range(k):
                occ |= _axis_view(np.eye(n, dtype=bool), i, k)
            self.endable = ~occ
            self.passable = np.ones(self.shape, dtype=bool)
            outdeg = self.adj.sum(axis=1)
            self.capt = (occ.astype(np.float32) @ self.adj_t) == outdeg
        else:
            safe = np.ones(self.shape, dtype=bool)
            for i, cs in enumerate(spec.cops):
                z = np.ones((P, n), dtype=bool)
                z[:n] = d > cs.reach
                safe &= _axis_view(z, i, k)
            self.endable = self.passable = safe
            self.capt = ~safe

        self.mats = []
        for cs in spec.cops:
            m = np.zeros((P, P), dtype=np.float32)
            if cs.activity == ACTIVE:
                m[:n, :n] = self.adj
            else:
                m[:n, :n] = d <= cs.speed
            if self.attacking:
                m[self.dead, self.dead] = 1
            self.mats.append(m)
        self.lazy = [i for i, cs in enumerate(spec.cops) if cs.activity == LAZY]

        if self.attacking:
            idx = np.indices((P,) * k)
            self.single = []
            self.attack_adj = []
            for i in range(k):
                s = idx[i] < n
                for j in range(k):
                    if j != i:
                        s &= idx[j] != idx[i]
                self.single.append(s)
                a = np.zeros((P, n), dtype=bool)
                a[:n] = self.adj_t > 0  # a[c, x]: robber at x can step onto c
                self.attack_adj.append(_axis_view(a, i, k))

    def cop_exists(self, wr: np.ndarray) -> np.ndarray:
        y = wr
        for i in range(self.k):
            if i not in self.lazy:
                y = _exists_along(y, self.mats[i], i)
        if not self.lazy:
            return y
        out = y.copy()
        for i in self.lazy:
            out |= _exists_along(y, self.mats[i], i)
        return out

    def escape(self, wc: np.ndarray) -> np.ndarray:
        b = self.endable & ~wc
        if self.spec.robber.activity == ACTIVE:
            esc = (b.astype(np.float32) @ self.adj_t) > 0
        else:
            f = b
            for _ in range(self.spec.robber.speed):
                step = (b | (self.passable & f)).astype(np.float32) @ self.adj_t
                f = b | (step > 0)
            esc = f
        if self.attacking:
            esc = esc.copy()
            for i in range(self.k):
                z = np.moveaxis(np.take(wc, self.dead, axis=i), -1, i)
                pad = [(0, 0)] * self.k
                pad[i] = (0, 1)
                free = ~np.pad(z, pad, constant_values=True)
                hit = (free & self.single[i])[..., None] & self.attack_adj[i]
                esc |= hit
        return esc

    def all_alive(self) -> tuple[slice, ...]:
        return (slice(0, self.n),) * self.k


class WinningRegion:
    """Fixpoint of the cops' attractor together with per-position ranks."""

    def __init__(self, board: _Board, wc, wr, rank_c, rank_r, iterations: int):
        self._board = board
        self.graph, self.spec = board.g, board.spec
        self.wc, self.wr = wc, wr
        self.rank_c, self.rank_r = rank_c, rank_r
        self.iterations = iterations
        sl = board.all_alive()
        endable0 = board.endable[sl]
        ok = np.all(~endable0 | wc[sl], axis=-1)
        rk = np.where(endable0, rank_c[sl], -1).max(axis=-1).clip(min=0)
        if ok.any():
            flat = np.where(ok, rk, np.iinfo(np.int32).max).ravel()
            best = int(np.argmin(flat))
            self.placement = tuple(int(c) for c in np.unravel_index(best, ok.shape))
            self.placement_rank = int(flat[best])
        else:
            self.placement = None
            self.placement_rank = None

    @property
    def copwin(self) -> bool:
        return self.placement is not None

    @property
    def verdict(self) -> str:
        return COPWIN if self.copwin else ROBBERWIN

    @property
    def n_states(self) -> int:
        return 2 * self._board.size

    def winning_placements(self) -> list[tuple[int, ...]]:
        b = self._board
        sl = b.all_alive()
        ok = np.all(~b.endable[sl] | self.wc[sl], axis=-1)
        return [tuple(int(c) for c in idx) for idx in np.argwhere(ok)]

    def _layer(self, state: GameState):
        key = state.key(self.graph.n)
        if state.turn == COP:
            return self.wc, self.rank_c, key
        return self.wr, self.rank_r, key

    def is_winning(self, state: GameState) -> bool:
        win, _, key = self._layer(state)
        return bool(win[key])

    def rank(self, state: GameState) -> int:
        """Rank of a cop-won position, ``-1`` otherwise."""
        _, rank, key = self._layer(state)
        return int(rank[key])

    def cop_move(self, state: GameState) -> GameState:
        """Rank-decreasing successor (lowest encoding on ties); outside the
        region, the first successor that stays inside it, else the first one."""
        moves = legal_cop_moves(self.graph, self.spec, state)
        if not moves:
            raise IllegalMoveError("cops have no legal move", state)
        ranked = [(self.rank(s), i) for i, s in enumerate(moves) if self.is_winning(s)]
        if ranked:
            return moves[min(ranked)[1]]
        return moves[0]

    policy = cop_move

    def robber_move(self, state: GameState) -> GameState:
        moves = legal_robber_moves(self.graph, self.spec, state)
        if not moves:
            raise IllegalMoveError("robber has no legal move", state)
        for s in moves:
            if not self.is_winning(s):
                return s
        ranks = [self.rank(s) for s in moves]
        return moves[int(np.argmax(ranks))]

    def robber_place(self, cops: Sequence[int]) -> int:
        spots = robber_placements(self.graph, self.spec, cops)
        if not spots:
            raise IllegalMoveError("no vertex is available to the robber", GameState(tuple(cops), None))
        states = [GameState(tuple(cops), r, COP) for r in spots]
        for s in states:
            if not self.is_winning(s):
                return s.robber
        return states[int(np.argmax([self.rank(s) for s in states]))].robber


def solve(g: Graph, spec: VariantSpec, state_cap: int | None = None) -> WinningRegion:
    board = _Board(g, spec, state_cap)
    capt = board.capt
    wc, wr = capt.copy(), capt.copy()
    rank_c = np.where(capt, 0, -1).astype(np.int32)
    rank_r = rank_c.copy()
    j = 0
    while True:
        j += 1
        new_c = wc | board.cop_exists(wr)
        added_c = new_c & ~wc
        rank_c[added_c] = j
        wc = new_c
        new_r = wr | ~board.escape(wc)
        added_r = new_r & ~wr
        rank_r[added_r] = j
        wr = new_r
        if not added_c.any() and not added_r.any():
            break
    return WinningRegion(board, wc, wr, rank_c, rank_r, j)


def is_copwin(g: Graph, spec: VariantSpec, state_cap: int | None = None) -> bool:
    return solve(g, spec, state_cap).copwin


# -- strategies and simulation -------------------------------------------------


@dataclass
class CopStrategy:
    """A positional cop policy: where to start and how to answer each position."""

    placement: tuple[int, ...]
    move_fn: Callable[[GameState], GameState]
    name: str = ""
    rank_bound: int | None = None
    info: dict = field(default_factory=dict)

    def place(self) -> tuple[int, ...]:
        return tuple(self.placement)

    def move(self, state: GameState) -> GameState:
        return self.move_fn(state)


def extract_strategy(region: WinningRegion) -> CopStrategy:
    if not region.copwin:
        raise ValueError("no cop strategy: the robber wins this game")
    return CopStrategy(region.placement, region.cop_move, "fixpoint", region.placement_rank)


class OptimalRobber:
    name = "optimal"

    def __init__(self, region: WinningRegion):
        self.region = region

    def place(self, g, spec, cops):
        return self.region.robber_place(cops)

    def move(self, g, spec, state):
        return self.region.robber_move(state)


class GreedyRobber:
    """Maximise the distance to the nearest live cop, lowest vertex on ties."""

    name = "greedy"

    @staticmethod
    def _score(g, state):
        d = g.distances.d
        live = state.live_cops()
        return min((int(d[c, state.robber]) for c in live), default=INF)

    def place(self, g, spec, cops):
        spots = robber_placements(g, spec, cops)
        return max(spots, key=lambda r: (self._score(g, GameState(tuple(cops), r)), -r))

    def move(self, g, spec, state):
        moves = legal_robber_moves(g, spec, state)
        return max(moves, key=lambda s: (not captured(g, spec, s), self._score(g, s), -s.robber))


class RandomRobber:
    name = "random"

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def place(self, g, spec, cops):
        return self.rng.choice(robber_placements(g, spec, cops))

    def move(self, g, spec, state):
        return self.rng.choice(legal_robber_moves(g, spec, state))


@dataclass
class StrategyTrace:
    lines: list[str]
    states: list[GameState]
    captured: bool
    rounds: int

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def simulate(
    g: Graph,
    spec: VariantSpec,
    cop_policy: CopStrategy,
    robber_policy,
    max_rounds: int | None = None,
) -> StrategyTrace:
    """Play the two policies against each other, checking every move."""
    _check_spec(g, spec)
    if max_rounds is None:
        max_rounds = 2 * (g.n + spec.robber.attacking) ** spec.k * g.n + 1
    cops = tuple(cop_policy.place())
    if len(cops) != spec.k or any(not 0 <= c < g.n for c in cops):
        raise IllegalMoveError(f"bad cop placement {cops}", GameState(cops, None))
    lines = [f"0 {COP} {GameState(cops, None).positions()}"]
    r = robber_policy.place(g, spec, cops)
    if r not in robber_placements(g, spec, cops):
        raise IllegalMoveError(f"robber cannot be placed on {r}", GameState(cops, r))
    state = GameState(cops, r, COP)
    states = [state]
    lines.append(f"0 {ROBBER} {state.positions()}")
    if captured(g, spec, state):
        return StrategyTrace(lines, states, True, 0)
    for rnd in range(1, max_rounds + 1):
        nxt = cop_policy.move(state)
        if nxt not in legal_cop_moves(g, spec, state):
            raise IllegalMoveError(f"illegal cop move to {nxt.positions()}", state)
        state = nxt
        states.append(state)
        lines.append(f"{rnd} {COP} {state.positions()}")
        if captured(g, spec, state):
            return StrategyTrace(lines, states, True, rnd)
        nxt = robber_policy.move(g, spec, state)
        if nxt not in legal_robber_moves(g, spec, state):
            raise IllegalMoveError(f"illegal robber move to {nxt.positions()}", state)
        state = nxt
        states.append(state)
        lines.append(f"{rnd} {ROBBER} {state.positions()}")
        if captured(g, spec, state):
            return StrategyTrace(lines, states, True, rnd)
    return StrategyTrace(lines, states, False, max_rounds)


@dataclass
class PolicyCheck:
    ok: bool
    worst_rounds: int | None
    reason: str = ""
    state: GameState | None = None


def verify_policy(g: Graph, spec: VariantSpec, strategy: CopStrategy, max_positions: int = 2_000_000) -> PolicyCheck:
    """Check a positional cop policy against every robber strategy.

    Explores all positions reachable when the cops follow ``strategy`` and
    the robber does anything legal.  The policy wins iff that graph has no
    cycle; the longest path gives the worst-case number of cop moves.
    """
    cops = tuple(strategy.place())
    starts = [GameState(cops, r, COP) for r in robber_placements(g, spec, cops)]
    rounds: dict[GameState, int] = {}
    on_stack: set[GameState] = set()

    def children(s: GameState) -> list[GameState]:
        if captured(g, spec, s):
            return []
        t = strategy.move(s)
        if t not in legal_cop_moves(g, spec, s):
            raise IllegalMoveError(f"illegal cop move to {t.positions()}", s)
        if captured(g, spec, t):
            return []
        return legal_robber_moves(g, spec, t)

    for start in starts:
        if start in rounds:
            continue
        stack = [(start, children(start), 0)]
        on_stack.add(start)
        while stack:
            s, kids, i = stack[-1]
            if i == len(kids):
                stack.pop()
                on_stack.discard(s)
                rounds[s] = 0 if captured(g, spec, s) else 1 + max((rounds[c] for c in kids), default=0)
                continue
            stack[-1] = (s, kids, i + 1)
            child = kids[i]
            if child in on_stack:
                return PolicyCheck(False, None, "robber can force a cycle", child)
            if child not in rounds:
                if len(rounds) + len(on_stack) > max_positions:
                    raise BudgetExceededError("policy verification exceeded its position cap")
                on_stack.add(child)
                stack.append((child, children(child), 0))
    worst = max((rounds[s] for s in starts), default=0)
    return PolicyCheck(True, worst)


def cop_number(
    g: Graph,
    template: VariantSpec | None = None,
    k_max: int | None = None,
    use_bounds: bool = True,
    state_cap: int | None = None,
) -> int:
    """Smallest k for which the cops win, by upward search.

    With ``use_bounds`` the search stops at the structural upper bound for
    the variant and returns it without solving that last level.
    """
    template = template or VariantSpec.classic(1)
    upper = None
    if use_bounds:
        from .bounds import variant_upper_bound

        upper = variant_upper_bound(g, template)
    limit = k_max or max(g.n, 1)
    if upper is not None:
        limit = min(limit, upper)
    for k in range(1, limit + 1):
        if upper is not None and k == upper:
            return k
        if solve(g, template.with_k(k), state_cap).copwin:
            return k
    raise BudgetExceededError(f"no winning cop count found up to k={limit}")
