import random

import pytest
from hypothesis import given, settings

from cnrkernel.corpus import connected_upto, random_sample
from cnrkernel.errors import BudgetExceededError, DisconnectedGraphError, IllegalMoveError, MalformedStateError
from cnrkernel.game import (
    COP,
    COPWIN,
    ROBBER,
    ROBBERWIN,
    CopStrategy,
    GameState,
    GreedyRobber,
    OptimalRobber,
    RandomRobber,
    cop_number,
    extract_strategy,
    legal_cop_moves,
    legal_robber_moves,
    simulate,
    solve,
    verify_policy,
)
from cnrkernel.graph import Graph, complete_graph, cycle_graph, path_graph, petersen_graph
from cnrkernel.oracle import oracle_solve
from cnrkernel.variants import CopSpec, RobberSpec, VariantSpec

from .conftest import connected_graphs, strong_digraphs

CLASSIC = VariantSpec.classic


def cops_after(moves):
    return sorted({s.cops for s in moves})


def test_cop_move_examples():
    s = GameState((1,), 0, COP)
    assert cops_after(legal_cop_moves(path_graph(3), CLASSIC(1), s)) == [(0,), (1,), (2,)]
    s = GameState((0,), 2, COP)
    assert cops_after(legal_cop_moves(cycle_graph(4), VariantSpec.active(1), s)) == [(1,), (3,)]
    s = GameState((0, 1), 2, COP)
    moves = cops_after(legal_cop_moves(path_graph(3), VariantSpec.lazy(2), s))
    assert (0, 1) in moves and (1, 1) in moves and (0, 2) in moves
    assert all(sum(a != b for a, b in zip(m, (0, 1))) <= 1 for m in moves)


def test_robber_move_examples():
    s = GameState((0,), 2, ROBBER)
    assert sorted(t.robber for t in legal_robber_moves(cycle_graph(4), CLASSIC(1), s)) == [1, 2, 3]
    s = GameState((2,), 0, ROBBER)
    fast = VariantSpec.fast(1, 2)
    assert sorted(t.robber for t in legal_robber_moves(path_graph(5), fast, s)) == [0, 1]
    s = GameState((0,), 1, ROBBER)
    moves = legal_robber_moves(path_graph(2), VariantSpec.attacking(1), s)
    attack = [t for t in moves if t.robber == 0]
    assert attack and attack[0].alive == (False,)


def test_malformed_state():
    with pytest.raises(MalformedStateError):
        legal_cop_moves(path_graph(3), CLASSIC(1), GameState((0,), 2, ROBBER))
    with pytest.raises(MalformedStateError):
        GameState((0,), 1, "nobody")


def test_solve_examples():
    assert solve(path_graph(4), CLASSIC(1)).verdict == COPWIN
    assert solve(cycle_graph(4), CLASSIC(1)).verdict == ROBBERWIN
    assert solve(cycle_graph(4), CLASSIC(2)).verdict == COPWIN
    assert solve(petersen_graph(), CLASSIC(2)).verdict == ROBBERWIN
    assert solve(petersen_graph(), CLASSIC(3)).verdict == COPWIN
    assert solve(path_graph(2), VariantSpec.surround(1)).verdict == COPWIN


def test_cop_number_examples():
    assert cop_number(Graph(7, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)])) == 1
    assert cop_number(cycle_graph(4)) == 2
    assert cop_number(petersen_graph()) == 3
    assert cop_number(petersen_graph(), use_bounds=False) == 3


def test_solve_errors():
    with pytest.raises(DisconnectedGraphError):
        solve(Graph(4, [(0, 1), (2, 3)]), CLASSIC(1))
    with pytest.raises(BudgetExceededError):
        solve(petersen_graph(), CLASSIC(3), state_cap=100)
    with pytest.raises(ValueError):
        extract_strategy(solve(cycle_graph(4), CLASSIC(1)))


def test_simulate_examples():
    p4 = path_graph(4)
    region = solve(p4, CLASSIC(1))
    trace = simulate(p4, CLASSIC(1), extract_strategy(region), OptimalRobber(region))
    assert trace.captured and trace.rounds <= 3
    assert trace.rounds <= region.placement_rank

    c4 = cycle_graph(4)
    lost = solve(c4, CLASSIC(1))
    cop = CopStrategy((0,), lambda s: GameState(s.cops, s.robber, ROBBER), "idle")
    trace = simulate(c4, CLASSIC(1), cop, OptimalRobber(lost), max_rounds=100)
    assert not trace.captured and trace.rounds == 100

    won = solve(c4, CLASSIC(2))
    trace = simulate(c4, CLASSIC(2), extract_strategy(won), RandomRobber(5))
    assert trace.captured and trace.rounds <= won.placement_rank


def test_trace_lines_are_replayable():
    g = path_graph(5)
    region = solve(g, CLASSIC(1))
    trace = simulate(g, CLASSIC(1), extract_strategy(region), GreedyRobber())
    for line, state in zip(trace.lines[1:], trace.states):
        rnd, side, cops, rob = line.split()
        assert cops == str(state.cops[0]) and rob == str(state.robber)


def test_simulate_rejects_illegal_cop_move():
    g = path_graph(4)
    cheat = CopStrategy((0,), lambda s: GameState((3,), s.robber, ROBBER), "teleport")
    with pytest.raises(IllegalMoveError):
        simulate(g, CLASSIC(1), cheat, GreedyRobber())


def test_oracle_k3_dominating_vertex():
    k3 = complete_graph(3)
    for name in ("classic", "lazy", "attacking", "active", "fast"):
        assert oracle_solve(k3, VariantSpec.by_name(name, 1)) == COPWIN


def test_solve_matches_oracle_sample():
    specs = [CLASSIC(1), CLASSIC(2), VariantSpec.lazy(2), VariantSpec.attacking(2),
             VariantSpec.active(2), VariantSpec.surround(2), VariantSpec.fast(1, 2)]
    for g in connected_upto(5, 2):
        for spec in specs:
            assert solve(g, spec).verdict == oracle_solve(g, spec), (g, spec.name)


@settings(max_examples=25)
@given(strong_digraphs(max_n=5))
def test_directed_solve_matches_oracle(g):
    for k in (1, 2):
        spec = VariantSpec.directed_classic(k)
        assert solve(g, spec).verdict == oracle_solve(g, spec)


@settings(max_examples=40)
@given(connected_graphs(min_n=2, max_n=6))
def test_variant_inequalities(g):
    c = cop_number(g, use_bounds=False)
    assert c <= cop_number(g, VariantSpec.lazy(1), use_bounds=False)
    ca = cop_number(g, VariantSpec.attacking(1), use_bounds=False)
    assert c <= ca <= 2 * c


@settings(max_examples=40)
@given(connected_graphs(min_n=2, max_n=6))
def test_monotone_in_k(g):
    for spec in (CLASSIC(1), VariantSpec.lazy(1), VariantSpec.surround(1)):
        wins = [solve(g, spec.with_k(k)).copwin for k in (1, 2, 3)]
        assert wins == sorted(wins)


@settings(max_examples=40)
@given(connected_graphs(min_n=2, max_n=6))
def test_surround_needs_min_degree(g):
    delta = min(len(g.neighbors(v)) for v in range(g.n))
    for k in range(1, delta):
        assert not solve(g, VariantSpec.surround(k)).copwin


@settings(max_examples=30)
@given(connected_graphs(min_n=2, max_n=6))
def test_extracted_policy_is_sound(g):
    region = solve(g, CLASSIC(2))
    if not region.copwin:
        return
    check = verify_policy(g, CLASSIC(2), extract_strategy(region))
    assert check.ok
    assert check.worst_rounds <= region.placement_rank


def test_heterogeneous_cops():
    # a slow cop and a reach-1 cop on a 6-cycle
    spec = VariantSpec((CopSpec(), CopSpec(reach=1)))
    g = cycle_graph(6)
    assert solve(g, spec).verdict == oracle_solve(g, spec) == COPWIN
    assert solve(cycle_graph(7), VariantSpec((CopSpec(reach=3),))).copwin
    assert not solve(cycle_graph(7), VariantSpec((CopSpec(reach=1),))).copwin


def test_fast_robber_on_random_graphs():
    for i, g in enumerate(random_sample(30, 6, seed=11)):
        for spec in (VariantSpec.fast(2, 2), VariantSpec((CopSpec(speed=2),), RobberSpec(speed=2))):
            assert solve(g, spec).verdict == oracle_solve(g, spec), i
