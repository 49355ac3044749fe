import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from cnrkernel.errors import InfeasibleConstructionError, MalformedInputError
from cnrkernel.game import cop_number, solve, verify_policy, CopStrategy, GameState
from cnrkernel.generators import (
    HpqrParams,
    affine_sizes,
    RbdsInstance,
    augment_rbds,
    certify_hpqr,
    gen_hpqr,
    gen_oriented_reduction,
    gen_rbds_reduction,
    q_threshold,
    rbds_solve,
    rbds_witness,
    twin_augment,
)
from cnrkernel.graph import complete_bipartite, cycle_graph, girth, path_graph, petersen_graph, to_networkx
from cnrkernel.kernels import kernelize_vcn
from cnrkernel.params import is_vertex_cover, vertex_cover
from cnrkernel.variants import VariantSpec

from .conftest import connected_graphs


def test_threshold_formula():
    # direct evaluation of 2p(r+1)((a^6-1)/(a^2-1)) with a = p(r+1)-1
    for p, r in ((1, 2), (2, 3), (3, 4)):
        a = p * (r + 1) - 1
        assert q_threshold(p, r) == 2 * p * (r + 1) * (a**6 - 1) // (a**2 - 1)
    assert HpqrParams(1, 3, 1).meets_threshold is False


def test_hpqr_examples():
    g = gen_hpqr(HpqrParams(1, 9, 2), seed=7)
    cert = certify_hpqr(g, HpqrParams(1, 9, 2))
    assert cert.ok and cert.girth >= 6
    assert 1 <= cert.degree_range[0] and cert.degree_range[1] <= 3

    params = HpqrParams(2, 20, 2)
    g = gen_hpqr(params)
    und = g.underlying()
    for i, j in itertools.product(range(2), repeat=2):
        bi, bj = set(params.block(0, i)), set(params.block(1, j))
        for z in bi:
            assert 1 <= len(und.neighbors(z) & bj) <= 3
        for z in bj:
            assert 1 <= len(und.neighbors(z) & bi) <= 3
    assert girth(g) >= 6

    with pytest.raises(InfeasibleConstructionError):
        gen_hpqr(HpqrParams(1, 2, 5))


@settings(max_examples=15)
@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 1000))
def test_hpqr_certified(p, r, seed):
    params = HpqrParams(p, 24, r)
    try:
        g = gen_hpqr(params, seed)
    except InfeasibleConstructionError:
        return
    assert certify_hpqr(g, params).ok
    assert nx.is_bipartite(to_networkx(g))


def test_hpqr_three_sides():
    params = HpqrParams(2, 21, 4, parts=3)
    g = gen_hpqr(params)
    assert g.directed
    assert certify_hpqr(g, params).ok


def test_hpqr_is_seeded():
    params = HpqrParams(2, 12, 2)
    assert gen_hpqr(params, seed=3) == gen_hpqr(params, seed=3)


def test_augment_examples():
    inst = RbdsInstance(("a",), ("b",), {(0, 0)}, 1)
    aug = augment_rbds(inst)
    assert aug.T == ("a", "x") and aug.N == ("b", "y") and aug.k == 2
    assert aug.edges == {(0, 0), (1, 1)}
    empty = augment_rbds(RbdsInstance((), (), frozenset(), 0))
    assert empty.T == ("x",) and empty.N == ("y",)


def test_rbds_solve_examples():
    assert rbds_solve(RbdsInstance(("a",), ("b",), {(0, 0)})) == 1
    k23 = RbdsInstance(("a", "b"), ("c", "d", "e"), {(t, n) for t in range(2) for n in range(3)})
    assert rbds_solve(k23) == 1
    assert rbds_solve(RbdsInstance(("a",), ("b",), frozenset())) is None
    with pytest.raises(MalformedInputError):
        RbdsInstance(("a",), ("b",), {(0, 3)})


def brute_rbds(inst):
    # enumerate subsets by bitmask, independent of the solver's search order
    best = None
    nn = len(inst.N)
    for mask in range(1 << nn):
        chosen = {b for b in range(nn) if mask >> b & 1}
        if all(inst.dominators_of(t) & chosen for t in range(len(inst.T))):
            size = len(chosen)
            best = size if best is None else min(best, size)
    return best


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_rbds_solve_matches_brute_force(seed):
    inst = RbdsInstance.random(5, 5, 0.35, 2, seed)
    assert rbds_solve(inst) == brute_rbds(inst)
    aug = augment_rbds(inst)
    w = rbds_witness(aug)
    if w is not None:
        assert len(aug.N) - 1 in w


def small_instance():
    return augment_rbds(RbdsInstance(("a", "b"), ("c", "d"), {(0, 0), (1, 0), (1, 1)}, 1))


def small_q(inst):
    # smallest block size with an exact affine construction for p = |T|, r = k + 2
    return affine_sizes(len(inst.T), inst.k + 2)[0]


def test_rbds_reduction_structure():
    inst = small_instance()
    con = gen_rbds_reduction(inst, q_override=small_q(inst))
    g = con.graph
    assert con.below_threshold
    y = con.p_vertex(len(inst.N) - 1)
    assert set(con.blocks["P"]) - {y} <= g.neighbors(y)
    h_vertices = set(range(con.params.n))
    assert is_vertex_cover(g, h_vertices | {y})


def test_rbds_reduction_yes_side():
    inst = small_instance()
    con = gen_rbds_reduction(inst, q_override=small_q(inst))
    g = con.graph
    w = rbds_witness(inst)
    assert len(w) == inst.k == con.ell
    cops = tuple(con.p_vertex(b) for b in w)

    def move(state):
        r = state.robber
        out = list(state.cops)
        for i, c in enumerate(out):
            if g.has_edge(c, r) or c == r:
                out[i] = r
                break
        return GameState(tuple(out), r, "robber")

    check = verify_policy(g, VariantSpec.classic(len(cops)), CopStrategy(cops, move, "dominators"))
    assert check.ok and check.worst_rounds <= 1


def test_oriented_reduction_structure():
    inst = small_instance()
    con = gen_oriented_reduction(inst, q_override=small_q(inst))
    g = con.graph
    assert g.directed and g.is_connected
    z = con.blocks["z"][0]
    assert g.out_neighbors(z) == {con.p_vertex(len(inst.N) - 1)}


def test_oriented_reduction_rejects_sink():
    inst = augment_rbds(RbdsInstance(("a",), ("b", "c"), {(0, 0)}, 1))
    with pytest.raises(MalformedInputError):
        gen_oriented_reduction(inst, q_override=small_q(inst))


def test_twin_examples():
    c4 = twin_augment(cycle_graph(4), 10, seed=1)
    assert c4.n == 14
    assert solve(c4, VariantSpec.classic(2)).copwin
    assert twin_augment(path_graph(3), 0) == path_graph(3)
    pet = twin_augment(petersen_graph(), 5, seed=2)
    assert pet.n == 15 and cop_number(pet) == 3


@settings(max_examples=30)
@given(connected_graphs(min_n=2, max_n=7), st.integers(0, 1000), st.sampled_from(["auto", "false", "true"]))
def test_twins_preserve_answer(g, seed, kind):
    big = twin_augment(g, 4, seed=seed, kind=kind)
    assert big.n == g.n + 4
    for k in (2, 3):
        spec = VariantSpec.classic(k)
        assert solve(big, spec).copwin == solve(g, spec).copwin


@settings(max_examples=40)
@given(connected_graphs(min_n=2, max_n=7), st.integers(0, 1000))
def test_kernel_ignores_independent_twins(g, seed):
    U = vertex_cover(g).U
    pool = [v for v in range(g.n) if v not in U]
    if not pool:
        return
    big = twin_augment(g, 6, seed=seed, kind="false", pool=pool)
    small_k = kernelize_vcn(g, 2, U, use_thresholds=False).reduced
    big_k = kernelize_vcn(big, 2, U, use_thresholds=False).reduced
    assert nx.is_isomorphic(to_networkx(small_k), to_networkx(big_k))
