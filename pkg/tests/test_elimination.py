from fractions import Fraction

import pytest

from src.errors import ModelError
from src.model_impl.chi_mapping import as_pa
from src.model_impl.elimination import (
    Eliminator,
    eliminate_all,
    eliminate_state,
    rescale,
    resolve,
    substitute_named,
    to_named,
)
from src.model_impl.refinement import decide_weak, is_trivially_vanishing, preprocess_with_plan, refine_partition
from src.model_impl.transforms import modified_automaton
from src.model_interface.automaton import Transition
from src.model_interface.distribution import SubDistribution, dirac
from src.model_interface.types import TAU, External, Semantics
from src.tools.corpus import corpus_names, corpus_text, load_corpus
from src.tools.ma_parser import parse_ma

F = Fraction

LOOP_BACK = """\
prob_automaton
states u v w
initial u
prob u tau : 1/2 v, 1/2 w
prob v tau : 1 u
prob w a : 1 w
"""


def _fig6():
    return as_pa(load_corpus("fig6_rescale"))


def _tau_targets(p, name):
    return [to_named(p, t.target) for t in p.outgoing(p.index_of(name)) if t.action == TAU]


def test_rescale_removes_self_loop_mass():
    p = _fig6()
    s, x, y = p.index_of("s"), p.index_of("x"), p.index_of("y")
    nu = SubDistribution({s: F(1, 2), x: F(1, 4), y: F(1, 4)})
    q, rescaled = rescale(p, s, nu)
    assert rescaled == SubDistribution({x: F(1, 2), y: F(1, 2)})
    assert [t.target for t in q.outgoing(s)] == [rescaled]


def test_rescale_of_pure_self_loop_drops_the_transition():
    p = as_pa(load_corpus("fig1_m1"))
    q, rescaled = rescale(p, 0, dirac(0))
    assert rescaled is None
    assert q.outgoing(0) == ()


def test_rescale_without_self_mass_is_identity():
    p = _fig6()
    t, x, y = p.index_of("t"), p.index_of("x"), p.index_of("y")
    nu = SubDistribution({x: F(1, 2), y: F(1, 2)})
    q, rescaled = rescale(p, t, nu)
    assert q is p and rescaled is nu


def test_rescale_requires_representation_form():
    p = _fig6()
    with pytest.raises(ModelError):
        rescale(p, p.index_of("x"), dirac(p.index_of("z")))


def test_eliminating_a_non_initial_state_rewrites_its_predecessors():
    p = as_pa(load_corpus("fig5_ef"))
    q = eliminate_state(p, p.index_of("H"), dirac(p.index_of("D")))
    assert "H" not in q.states
    assert q.name(q.initial) == "E"
    assert _tau_targets(q, "F") == [{"C": F(1, 2), "D": F(1, 2)}]


def test_eliminating_an_initial_state_with_incoming_arcs_adds_a_fresh_root():
    p = parse_ma(LOOP_BACK)
    nu = SubDistribution({1: F(1, 2), 2: F(1, 2)})
    q = eliminate_state(p, 0, nu)
    assert q.states == ("v", "w", "u'")
    assert q.name(q.initial) == "u'"
    assert _tau_targets(q, "u'") == [{"v": F(1, 2), "w": F(1, 2)}]
    assert _tau_targets(q, "v") == [{"v": F(1, 2), "w": F(1, 2)}]


def test_initial_state_without_incoming_arcs_stays_in_representation_form():
    p = _fig6()
    s, x, y = p.index_of("s"), p.index_of("x"), p.index_of("y")
    q = eliminate_state(p, s, SubDistribution({s: F(1, 2), x: F(1, 4), y: F(1, 4)}))
    assert q.states == p.states
    assert [t.target for t in q.outgoing(s)] == [SubDistribution({x: F(1, 2), y: F(1, 2)})]


def test_plan_order_does_not_change_the_resolved_representations():
    p = as_pa(load_corpus("fig5_ef"))
    forward = eliminate_all(p, [("H", {"D": F(1)}), ("F", {"C": F(1, 2), "H": F(1, 2)})])
    backward = eliminate_all(p, [("F", {"C": F(1, 2), "H": F(1, 2)}), ("H", {"D": F(1)})])
    expected = {"H": {"D": F(1)}, "F": {"C": F(1, 2), "D": F(1, 2)}}
    assert forward.representations == expected
    assert backward.representations == expected
    assert forward.automaton.states == backward.automaton.states == ("E", "C", "D", "A", "B")


def test_eliminator_records_renamed_and_kept_states():
    eliminator = Eliminator(parse_ma(LOOP_BACK))
    eliminator.eliminate("u", {"v": F(1, 2), "w": F(1, 2)})
    result = eliminator.result()
    assert result.renamed == {"u": "u'"}
    assert result.representations == {"u": {"v": F(1, 2), "w": F(1, 2)}}

    looping = eliminate_all(as_pa(load_corpus("fig1_m1")), [("s", {"s": F(1)})])
    assert looping.kept == ("s",)
    assert looping.representations == {}


def test_named_substitution_helpers():
    rep = {"a": F(1, 3), "s": F(2, 3)}
    assert substitute_named(rep, "s", {"b": F(1, 2), "c": F(1, 2)}) == {
        "a": F(1, 3),
        "b": F(1, 3),
        "c": F(1, 3),
    }
    assert substitute_named(rep, "z", {"b": F(1)}) == rep
    assert resolve({"s": F(1)}, {"s": {"t": F(1)}}) == {"t": F(1)}


def test_modified_automaton_rejects_partial_representation():
    p = _fig6()
    with pytest.raises(ModelError):
        modified_automaton(p, 0, SubDistribution({1: F(1, 2)}))


def _elimination_steps(pa):
    outcome = refine_partition(pa, Semantics.WEAK, preprocess=False)
    steps = dict(outcome.state.vanishing)
    for s in range(pa.size):
        if s not in steps and is_trivially_vanishing(pa, s):
            steps[s] = pa.outgoing(s)[0].target
    return sorted(steps.items(), key=lambda kv: kv[0])


@pytest.mark.parametrize("name", corpus_names())
def test_single_elimination_keeps_the_automaton_weakly_bisimilar(name):
    pa = as_pa(load_corpus(name))
    for s, nu in _elimination_steps(pa):
        eliminated = eliminate_state(pa, s, nu)
        assert decide_weak(pa, eliminated).bisimilar, pa.name(s)


@pytest.mark.parametrize("p", [F(1, 2), F(1, 3)])
def test_trivially_vanishing_branch_is_pushed_to_its_predecessor(p):
    text = corpus_text("fig5a").replace("1/2 C, 1/2 D", f"{p} C, {1 - p} D")
    pa = as_pa(parse_ma(text))
    result = preprocess_with_plan(pa)
    assert result.representations == {"E": {"C": p, "D": 1 - p}}
    q = result.automaton
    assert q.states == ("pre", "C", "D", "A")
    pre, c, d = q.index_of("pre"), q.index_of("C"), q.index_of("D")
    assert Transition(pre, External("a"), SubDistribution({c: p, d: 1 - p})) in q.pt
    assert decide_weak(pa, q).bisimilar
