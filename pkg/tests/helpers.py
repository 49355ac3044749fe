"""Shared fuzzing and corpus helpers for the test modules."""
from __future__ import annotations

import random
from dataclasses import dataclass

from cnrkernel.bounds import PathGuard
from cnrkernel.graph import isometric_path

ROBBER_KINDS = ("random", "seeker", "evasive")


@dataclass
class GuardEpisode:
    stabilized_at: int | None
    entries: int
    violations: list[str]
    rounds: int
    captured: bool


def _robber_step(g, cop, robber, path_set, kind, rng):
    options = sorted((g.neighbors(robber) | {robber}) - {cop})
    if not options:
        return robber
    if kind == "seeker":
        onto = [x for x in options if x in path_set]
        if onto:
            return rng.choice(onto)
    if kind == "evasive":
        safe = [x for x in options if not g.has_edge(x, cop)]
        onto = [x for x in safe if x in path_set]
        if onto and rng.random() < 0.3:
            return rng.choice(onto)
        if safe:
            return rng.choice(safe)
    return rng.choice(options)


def guard_episode(g, path, rng: random.Random, kind="random", rounds=200, start=None) -> GuardEpisode:
    """One cop guards ``path`` with the shadow policy against a randomised robber.

    After stabilisation the cop must sit on the shadow after each of its
    moves, and a robber standing on the path at a cop move must be taken.
    """
    guard = PathGuard(g, path)
    path_set = set(path)
    if start is None:
        cop = rng.randrange(g.n)
        spots = [v for v in range(g.n) if v != cop]
        if kind == "evasive":
            spots = [v for v in spots if not g.has_edge(v, cop)] or spots
        robber = rng.choice(spots or [cop])
    else:
        cop, robber = start
    stable_at = None
    entries = 0
    bad = []
    for rnd in range(1, rounds + 1):
        on_path = robber in path_set
        cop = guard.next_position(cop, robber)
        if cop == robber:
            if stable_at is not None and on_path:
                entries += 1
            return GuardEpisode(stable_at, entries, bad, rnd, True)
        if stable_at is not None:
            if on_path:
                entries += 1
                bad.append(f"round {rnd}: robber on {robber} survived")
            if not guard.state(cop, robber).established:
                bad.append(f"round {rnd}: cop {cop} left the shadow of {robber}")
        elif guard.state(cop, robber).established:
            stable_at = rnd
        robber = _robber_step(g, cop, robber, path_set, kind, rng)
    return GuardEpisode(stable_at, entries, bad, rounds, False)


def random_isometric_path(g, rng: random.Random):
    u, v = rng.randrange(g.n), rng.randrange(g.n)
    return isometric_path(g, u, v)
