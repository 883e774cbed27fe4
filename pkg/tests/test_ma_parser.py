from fractions import Fraction

import pytest

from src.errors import ParseError, SemanticError
from src.model_impl.chi_mapping import as_pa
from src.model_interface.automaton import MarkovAutomaton, ProbAutomaton
from src.model_interface.distribution import SubDistribution
from src.model_interface.types import TAU, Chi, External
from src.tools.corpus import corpus_names, load_corpus
from src.tools.ma_parser import format_distribution, load_ma, parse_distribution, parse_ma, print_ma

F = Fraction

SMALL = """\
# comment lines and trailing comments are ignored
markov_automaton
states s t
initial s   # root
actions a b
prob s a : 1/3 s, 2/3 t
markov t 3/2 s
"""


def _error(text, kind):
    with pytest.raises(kind) as info:
        parse_ma(text)
    return info.value


def test_parse_small_model():
    m = parse_ma(SMALL)
    assert type(m) is MarkovAutomaton
    assert m.states == ("s", "t")
    assert m.actions == frozenset({"a", "b"})
    (t,) = m.pt
    assert t.action == External("a")
    assert t.target == SubDistribution({0: F(1, 3), 1: F(2, 3)})
    assert [(x.source, x.rate, x.target) for x in m.mt] == [(1, F(3, 2), 0)]


def test_prob_automaton_accepts_chi():
    p = parse_ma("prob_automaton\nstates s\ninitial s\nprob s chi(4) : 1 s\nprob s tau : 1 s\n")
    assert type(p) is ProbAutomaton
    assert [t.action for t in p.pt] == [Chi(4), TAU]


def test_syntax_errors_carry_line_and_column():
    err = _error("markov_automaton\nstates s t\nprob s a 1 t\n", ParseError)
    assert (err.line, err.column) == (3, 10)
    assert str(err).startswith("line 3:10:")

    err = _error("markov_automaton\nstates s\n  frobnicate s\n", ParseError)
    assert (err.line, err.column) == (3, 3)

    err = _error("states s\n", ParseError)
    assert err.line == 1

    err = _error("markov_automaton\nstates s t\ninitial s\nprob s a : 0.5 s, 0.5 t\n", ParseError)
    assert (err.line, err.column) == (4, 12)


def test_masses_must_sum_to_one():
    err = _error("markov_automaton\nstates s t\ninitial s\nprob s a : 1/3 s, 1/3 t\n", SemanticError)
    assert err.line == 4
    assert "2/3" in str(err)


@pytest.mark.parametrize(
    "text",
    [
        "markov_automaton\nstates s t\ninitial s\nmarkov s 0 t\n",
        "markov_automaton\nstates tau t\ninitial t\n",
        "markov_automaton\nstates s\ninitial s\nprob s chi(2) : 1 s\n",
        "prob_automaton\nstates s\ninitial s\nmarkov s 1 s\n",
        "markov_automaton\nstates s\ninitial s\nprob s a : 1 nowhere\n",
        "markov_automaton\nstates s\n",
        "markov_automaton\nstates s s\ninitial s\n",
        "markov_automaton\nstates s\ninitial s\nactions tau\n",
    ],
    ids=["zero-rate", "reserved-state", "chi-in-ma", "markov-in-pa", "unknown-target",
         "no-initial", "duplicate-state", "reserved-action"],
)
def test_semantic_errors(text):
    _error(text, SemanticError)


@pytest.mark.parametrize("name", corpus_names())
def test_print_parse_round_trip_on_corpus(name):
    m = load_corpus(name)
    assert parse_ma(print_ma(m)) == m
    pa = as_pa(m)
    assert parse_ma(print_ma(pa)) == pa


def test_distribution_lists():
    assert parse_distribution("1/2 A, 1/4 B, 1/4 A") == {"A": F(3, 4), "B": F(1, 4)}
    assert format_distribution({"A": F(3, 4), "B": F(1, 4)}) == "3/4 A, 1/4 B"
    with pytest.raises(SemanticError):
        parse_distribution("1 A, 1/2 B")
    with pytest.raises(ParseError):
        parse_distribution("1/2 A 1/2 B")


def test_load_rejects_bytes_that_are_not_utf8(tmp_path):
    path = tmp_path / "bad.ma"
    path.write_bytes(b"markov_automaton\n\xff\n")
    with pytest.raises(ParseError) as info:
        load_ma(str(path))
    assert (info.value.line, info.value.column) == (2, 1)
    assert isinstance(info.value.__cause__, UnicodeDecodeError)


def test_load_reads_crlf_files(tmp_path):
    path = tmp_path / "crlf.ma"
    path.write_bytes(SMALL.replace("\n", "\r\n").encode("utf-8"))
    assert load_ma(str(path)) == parse_ma(SMALL)
