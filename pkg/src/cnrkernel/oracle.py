"""Reference solver: explicit state enumeration plus a retrograde worklist.

Slow and simple on purpose.  It shares only the per-position move rules with
:mod:`cnrkernel.game` and none of the array machinery, so agreement between
the two is a meaningful check.
"""
from __future__ import annotations

import itertools
from collections import deque

from .errors import BudgetExceededError
from .game import (
    COP,
    COPWIN,
    ROBBERWIN,
    GameState,
    _check_spec,
    captured,
    legal_cop_moves,
    legal_robber_moves,
    robber_placements,
)
from .graph import Graph
from .variants import VariantSpec


def oracle_solve(g: Graph, spec: VariantSpec, max_states: int = 1_000_000) -> str:
    return oracle_region(g, spec, max_states)[0]


def oracle_region(g: Graph, spec: VariantSpec, max_states: int = 1_000_000):
    """Return ``(verdict, won)`` where ``won`` is the set of cop-won positions."""
    _check_spec(g, spec)
    g.require_connected()
    starts = {}
    for cops in itertools.product(range(g.n), repeat=spec.k):
        starts[cops] = [GameState(cops, r, COP) for r in robber_placements(g, spec, cops)]

    succ: dict[GameState, list[GameState]] = {}
    queue = deque(s for group in starts.values() for s in group)
    while queue:
        s = queue.popleft()
        if s in succ:
            continue
        if captured(g, spec, s):
            succ[s] = []
        elif s.turn == COP:
            succ[s] = legal_cop_moves(g, spec, s)
        else:
            succ[s] = legal_robber_moves(g, spec, s)
        if len(succ) > max_states:
            raise BudgetExceededError(f"oracle exceeded {max_states} states")
        queue.extend(t for t in succ[s] if t not in succ)

    preds: dict[GameState, list[GameState]] = {s: [] for s in succ}
    for s, ts in succ.items():
        for t in ts:
            preds[t].append(s)

    won: set[GameState] = set()
    pending = {s: len(ts) for s, ts in succ.items() if s.turn != COP}
    work = deque()
    for s, ts in succ.items():
        # captured positions, and a robber left without any move
        if captured(g, spec, s) or (s.turn != COP and not ts):
            won.add(s)
            work.append(s)
    while work:
        t = work.popleft()
        for s in preds[t]:
            if s in won:
                continue
            if s.turn == COP:
                won.add(s)
                work.append(s)
            else:
                pending[s] -= 1
                if pending[s] == 0:
                    won.add(s)
                    work.append(s)

    copwin = any(all(s in won for s in group) for group in starts.values())
    return (COPWIN if copwin else ROBBERWIN), won
