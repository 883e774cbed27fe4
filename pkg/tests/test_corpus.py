from fractions import Fraction

import pytest

from src.errors import ModelError
from src.model_impl.refinement import decide_weak
from src.tools.corpus import CORPUS_PAIRS, corpus_names, fig7_example, load_corpus


def test_every_pair_refers_to_shipped_files():
    names = set(corpus_names())
    for pair in CORPUS_PAIRS:
        assert pair.left[0] in names and pair.right[0] in names
        assert pair.compose_with is None or pair.compose_with in names


def test_rerooting_drops_unreachable_states():
    m = load_corpus("fig8_nondet", "t")
    assert m.states == ("t", "E", "F")
    assert m.name(m.initial) == "t"
    with pytest.raises(ModelError):
        load_corpus("no_such_model")


def test_fig7_example_weights():
    p = fig7_example(Fraction(1, 3), Fraction(1, 4))
    t1 = p.index_of("t1")
    targets = [t.target for t in p.outgoing(t1)]
    assert targets[1][p.index_of("A")] == Fraction(2, 5)
    with pytest.raises(ModelError):
        fig7_example(1, Fraction(1, 2))


def test_default_fig7_matches_the_shipped_file():
    assert fig7_example() == load_corpus("fig7_example")


@pytest.mark.parametrize("pair", [p for p in CORPUS_PAIRS if p.compose_with is None], ids=lambda p: p.name)
def test_weak_verdicts_without_preprocessing(pair):
    a, b = pair.automata()
    assert decide_weak(a, b, preprocess=False).bisimilar is pair.weak
