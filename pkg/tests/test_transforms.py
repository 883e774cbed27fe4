import pytest

from src.errors import ModelError
from src.model_impl.chi_mapping import as_pa
from src.model_impl.transforms import direct_sum, drop_state, with_initial
from src.model_interface.automaton import MarkovianTransition, Transition
from src.model_interface.distribution import dirac
from src.model_interface.types import TAU, External
from src.tools.corpus import load_corpus


def test_direct_sum_offsets_the_second_summand():
    left, right = load_corpus("fig3_ab"), load_corpus("fig2_m1")
    summed, offset = direct_sum(left, right)
    assert offset == 3
    assert summed.states == ("P1.A", "P1.B", "P1.C", "P2.u", "P2.v")
    assert summed.initial == 0
    assert Transition(3, TAU, dirac(4)) in summed.pt
    assert Transition(1, External("a"), dirac(2)) in summed.pt
    assert summed.mt == (MarkovianTransition(4, 2, 4),)


def test_direct_sum_needs_matching_kinds():
    m = load_corpus("fig3_ab")
    with pytest.raises(ModelError):
        direct_sum(m, as_pa(m))


def test_with_initial_keeps_reachable_states_only():
    m = load_corpus("fig3_ab")
    rooted = with_initial(m, "B")
    assert rooted.states == ("B", "C")
    assert rooted.initial == 0
    assert rooted.pt == (Transition(0, External("a"), dirac(1)),)
    assert with_initial(m, "C").states == ("C",)


def test_drop_state():
    m = load_corpus("fig3_ab")
    dropped = drop_state(m, 0, 1)
    assert dropped.states == ("B", "C")
    assert dropped.initial == 0
    with pytest.raises(ModelError):
        drop_state(m, 1, 0)
    with pytest.raises(ModelError):
        drop_state(m, 0, 0)
