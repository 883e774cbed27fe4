from fractions import Fraction

from src.model_impl.chi_mapping import (
    as_pa,
    chi_action_set,
    exit_rate,
    ma_to_pa,
    parallel_compose,
    rate_between,
    successor_distribution,
)
from src.model_interface.automaton import is_stable
from src.model_interface.distribution import SubDistribution, dirac
from src.model_interface.types import TAU, Chi, ChiMode
from src.tools.corpus import load_corpus
from src.tools.ma_parser import parse_ma

RATES = """\
markov_automaton
states s t u
initial s
markov s 1 t
markov s 2 t
markov s 1 u
prob u tau : 1 s
markov u 5 t
"""


def test_rates_and_successor_distribution():
    m = parse_ma(RATES)
    s, t, u = 0, 1, 2
    assert rate_between(m, s, t) == 3
    assert exit_rate(m, s) == 4
    assert successor_distribution(m, s) == SubDistribution({t: Fraction(3, 4), u: Fraction(1, 4)})
    # exit rate 0 → Δ_s
    assert successor_distribution(m, t) == dirac(t)


def test_maximal_progress_drops_timed_behaviour_of_unstable_states():
    m = parse_ma(RATES)
    pa = ma_to_pa(m)
    chi = {(t.source, t.action) for t in pa.pt if isinstance(t.action, Chi)}
    # u is unstable (tau), so its rate 5 disappears; t is a deadlock → chi(0)
    assert chi == {(0, Chi(4)), (1, Chi(0))}
    assert not pa.mt
    assert chi_action_set(m) == {Chi(4), Chi(0)}


def test_deadlock_gets_chi_zero_self_loop_only_with_chi_zero():
    u = load_corpus("fig1_m2")
    with_zero = ma_to_pa(u, ChiMode.WITH_CHI_ZERO)
    legacy = ma_to_pa(u, ChiMode.LEGACY_NO_CHI_ZERO)
    assert [(t.source, t.action, t.target) for t in with_zero.pt] == [(0, Chi(0), dirac(0))]
    assert legacy.pt == ()
    assert chi_action_set(u, ChiMode.LEGACY_NO_CHI_ZERO) == set()


def test_tau_loop_preempts_rates():
    # fig1_m1 and fig1_m3 differ only by a timed self-loop on an unstable state
    m1, m3 = load_corpus("fig1_m1"), load_corpus("fig1_m3")
    assert not is_stable(m3, 0)
    assert ma_to_pa(m1).pt == ma_to_pa(m3).pt


def test_as_pa_is_identity_on_probabilistic_automata():
    p = load_corpus("fig7_example")
    assert as_pa(p) is p


def test_every_stable_state_gets_exactly_one_chi():
    m = load_corpus("fig5c")
    pa = ma_to_pa(m)
    for s in range(m.size):
        chis = [t for t in pa.outgoing(s) if isinstance(t.action, Chi)]
        assert len(chis) == (1 if is_stable(m, s) else 0)


def test_parallel_compose_interleaves():
    a, b = load_corpus("fig1_m1"), load_corpus("fig10_m4")
    c = parallel_compose(a, b)
    assert c.states == ("s|v", "s|v1")
    assert {(t.source, t.action) for t in c.pt} == {(0, TAU), (1, TAU)}
    assert [(x.source, x.rate, x.target) for x in c.mt] == [(0, Fraction(3), 1)]
