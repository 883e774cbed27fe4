from fractions import Fraction

import pytest

from src.model_impl.chi_mapping import as_pa, parallel_compose
from src.model_impl.polytope import quotient_project, restrict_zero, set_equal
from src.model_impl.refinement import (
    NN_VANISHING,
    TANGIBLE,
    TRIVIALLY_VANISHING,
    GeneratorCache,
    RefinementState,
    always_tangible_states,
    decide,
    decide_naive,
    decide_weak,
    decide_within,
    find_vanishing_representation,
    find_weak_split,
    is_trivially_vanishing,
    preprocess_with_plan,
    refine,
    refine_partition,
    tangible_fixpoint,
    vanishing_kind,
)
from src.model_interface.distribution import SubDistribution
from src.model_interface.partition import Partition
from src.model_interface.types import TAU, ChiMode, Semantics
from src.tools.corpus import corpus_names, fig7_example, load_corpus

F = Fraction
S1, S2, T1, A, B = range(5)

W0 = Partition.single(5)
W1 = Partition.from_blocks([[S1, S2, T1, B], [A]])
W2 = Partition.from_blocks([[S1, T1], [S2], [A], [B]])


@pytest.mark.parametrize("p,q", [(F(1, 2), F(1, 2)), (F(1, 3), F(1, 4))])
def test_worked_example_verdict_and_classification(p, q):
    report = decide_within(fig7_example(p, q), "s1", "t1", preprocess=False)
    assert report.bisimilar
    assert report.partition == (("s1", "t1"), ("s2",), ("A",), ("B",))
    assert report.tangible == ("s1", "t1", "A", "B")
    assert report.vanishing == {"s2": {"s1": q, "B": 1 - q}}
    assert report.rounds == 3


@pytest.mark.parametrize("p,q", [(F(1, 2), F(1, 2)), (F(1, 3), F(1, 4))])
def test_worked_example_partition_history(p, q):
    pa = fig7_example(p, q)
    outcome = refine_partition(pa, Semantics.WEAK, preprocess=False)
    assert outcome.history == (W0, W1, W2)
    assert vanishing_kind(pa, S2, outcome.state) == NN_VANISHING
    assert vanishing_kind(pa, S1, outcome.state) == TANGIBLE


def test_worked_example_restricted_set_under_w2():
    pa = fig7_example()
    cache = GeneratorCache(pa)
    projected = quotient_project(cache.strong_set(S1, TAU), W2)
    # classes in order [s1 t1], [s2], [A], [B]
    assert set(projected.generators) == {
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 0, 1),
        (0, F(1, 2), F(1, 2), 0),
        (0, 0, F(2, 3), F(1, 3)),
    }
    # dropping every generator with mass on [s1 t1] or [s2] leaves the segment
    assert set(restrict_zero(projected, {0, 1}).generators) == {(0, 0, 0, 1), (0, 0, F(2, 3), F(1, 3))}
    # restricting at s2 before projecting keeps Δs1 and the same segment
    restricted = quotient_project(restrict_zero(cache.strong_set(S1, TAU), {S2}), W2)
    assert set(restricted.generators) == {(1, 0, 0, 0), (0, 0, 0, 1), (0, 0, F(2, 3), F(1, 3))}


def test_stage_functions_on_the_worked_example():
    pa = fig7_example()
    cache = GeneratorCache(pa)

    start = tangible_fixpoint(pa, W0, cache)
    assert start.tangible == frozenset(range(5))
    assert start.vanishing == {}
    splitter = find_weak_split(pa, start, cache)
    assert splitter.class_index == 0
    assert refine(W0, pa, splitter, start, cache) == W1

    final = tangible_fixpoint(pa, W2, cache)
    assert final.vanishing == {S2: SubDistribution({S1: F(1, 2), B: F(1, 2)})}
    assert find_weak_split(pa, final, cache) is None
    fresh = RefinementState(W2)
    assert find_vanishing_representation(pa, S2, fresh, cache) is not None
    # nothing in s1's outgoing transitions leaves W0's only block
    assert find_vanishing_representation(pa, S1, RefinementState(W0), cache) is None


def test_worked_example_across_direct_sum():
    fig7 = load_corpus("fig7_example")
    left, right = load_corpus("fig7_example", "s1"), load_corpus("fig7_example", "t1")
    assert decide_weak(left, right).bisimilar
    assert decide_weak(left, right, preprocess=False).bisimilar
    assert fig7.states == ("s1", "s2", "t1", "A", "B")


def test_fig3_weak_and_naive():
    m = load_corpus("fig3_ab")
    weak = decide_within(m, "A", "B")
    naive = decide_within(m, "A", "B", Semantics.NAIVE)
    assert weak.bisimilar and naive.bisimilar
    assert weak.partition == (("A", "B"), ("C",))
    assert weak.rounds == 2
    assert not naive.preprocessed


def test_fig8_not_bisimilar():
    left, right = load_corpus("fig8_nondet", "s"), load_corpus("fig8_nondet", "t")
    report = decide_weak(left, right)
    assert not report.bisimilar
    assert report.initial == ("P1.s", "P2.t")


def test_fig5c_separates_c_and_d():
    report = decide_within(load_corpus("fig5c"), "E", "D", preprocess=False)
    assert not report.bisimilar
    assert report.partition == (("E",), ("C",), ("D",), ("A", "B"))
    assert report.vanishing == {"E": {"C": F(1, 2), "D": F(1, 2)}}
    assert report.rounds == 4


def test_fig5c_e_is_nn_vanishing():
    pa = as_pa(load_corpus("fig5c"))
    outcome = refine_partition(pa, Semantics.WEAK, preprocess=False)
    e = pa.index_of("E")
    assert e in outcome.state.vanishing
    # E is trivially vanishing too, but its tau leaves its class
    assert vanishing_kind(pa, e, outcome.state) == NN_VANISHING


def test_trivially_vanishing_state_staying_in_its_class():
    pa = as_pa(load_corpus("fig3_ab"))
    outcome = refine_partition(pa, Semantics.WEAK, preprocess=False)
    assert vanishing_kind(pa, pa.index_of("A"), outcome.state) == TRIVIALLY_VANISHING
    assert vanishing_kind(pa, pa.index_of("C"), outcome.state) == TANGIBLE


def test_appendix_legacy_mapping_is_not_a_congruence():
    m1, m2, m4 = load_corpus("fig1_m1"), load_corpus("fig1_m2"), load_corpus("fig10_m4")
    legacy = ChiMode.LEGACY_NO_CHI_ZERO
    assert decide_weak(m1, m2, legacy).bisimilar
    assert not decide_weak(parallel_compose(m1, m4), parallel_compose(m2, m4), legacy).bisimilar


def test_appendix_chi_zero_mapping_separates_deadlock():
    m1, m2 = load_corpus("fig1_m1"), load_corpus("fig1_m2")
    report = decide_weak(m1, m2, ChiMode.WITH_CHI_ZERO)
    assert not report.bisimilar
    assert report.chi_mode is ChiMode.WITH_CHI_ZERO


def test_chi_mode_defaults_to_environment(monkeypatch):
    m1, m2 = load_corpus("fig1_m1"), load_corpus("fig1_m2")
    monkeypatch.setenv("MABISIM_CHI_ZERO", "false")
    report = decide_weak(m1, m2)
    assert report.bisimilar and report.chi_mode is ChiMode.LEGACY_NO_CHI_ZERO


def test_naive_never_preprocesses():
    report = decide_naive(load_corpus("fig6_rescale", "s"), load_corpus("fig6_rescale", "t"))
    assert report.semantics is Semantics.NAIVE
    assert not report.preprocessed


def test_preprocessing_eliminates_trivially_vanishing_states():
    pa = as_pa(load_corpus("fig5_ef"))
    assert is_trivially_vanishing(pa, pa.index_of("H"))
    result = preprocess_with_plan(pa, keep=("E", "F"))
    # H goes first, then F's branch to H is rewritten to D
    assert "H" in result.representations
    assert result.representations["H"] == {"D": 1}
    assert "E" in result.automaton.states and "F" in result.automaton.states


def test_always_tangible_tau_self_loop():
    pa = as_pa(load_corpus("fig1_m1"))
    assert always_tangible_states(pa) == frozenset({0})


def test_self_loop_pinning_follows_the_preprocess_switch():
    pa = as_pa(load_corpus("fig1_m1"))
    on = refine_partition(pa, Semantics.WEAK, preprocess=True)
    off = refine_partition(pa, Semantics.WEAK, preprocess=False)
    assert on.always_tangible == frozenset({0})
    assert off.always_tangible == frozenset()
    assert on.state.tangible == off.state.tangible == frozenset({0})
    assert refine_partition(pa, Semantics.NAIVE, preprocess=True).always_tangible == frozenset()


def test_decide_reports_direct_sum_names():
    report = decide(load_corpus("fig2_m1"), load_corpus("fig2_m2"))
    assert report.bisimilar
    assert report.initial == ("P1.u", "P2.w")
    assert all(name.startswith(("P1.", "P2.")) for block in report.partition for name in block)
    assert {"to_pa", "precompute", "refine"} <= set(report.timings)


def test_refinement_state_vanishing_representation_is_distribution():
    pa = fig7_example()
    outcome = refine_partition(pa, Semantics.WEAK, preprocess=False)
    assert outcome.state.vanishing == {S2: SubDistribution({S1: F(1, 2), B: F(1, 2)})}
    assert outcome.state.tangible == frozenset({S1, T1, A, B})


@pytest.mark.parametrize("name", corpus_names())
def test_fixpoint_leaves_consistent_classification(name):
    pa = as_pa(load_corpus(name))
    outcome = refine_partition(pa, Semantics.WEAK, preprocess=False)
    rs = outcome.state
    assert rs.tangible.isdisjoint(rs.vanishing)
    assert rs.tangible | set(rs.vanishing) == set(range(pa.size))
    cache = GeneratorCache(pa)
    for s, nu in rs.vanishing.items():
        zero = frozenset(rs.vanishing) - {s}
        assert any(rs.partition.block_of(x) != rs.partition.block_of(s) for x in nu.support)
        for alpha in cache.actions:
            assert set_equal(cache.view(s, alpha, zero, rs.partition),
                             cache.view(s, alpha, zero, rs.partition, nu))
