"""
Shipped example automata (src/corpus/*.ma) and the pairs compared on them.

PURPOSE:
- corpus_names / load_corpus: list and parse the bundled `.ma` files.
- fig7_example(p, q): the two-root example for any p, q in (0,1).
- CORPUS_PAIRS: named comparisons with their expected weak verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import List, Optional, Tuple, Union

from src.errors import ModelError
from src.model_impl.chi_mapping import parallel_compose
from src.model_impl.transforms import with_initial
from src.model_interface.automaton import MarkovAutomaton
from src.tools.ma_parser import parse_ma
from src.utils.rationals import format_rational

_PACKAGE = "src.corpus"
_SUFFIX = ".ma"


def corpus_names() -> List[str]:
    return sorted(
        entry.name[: -len(_SUFFIX)]
        for entry in resources.files(_PACKAGE).iterdir()
        if entry.name.endswith(_SUFFIX)
    )


@lru_cache(maxsize=None)
def corpus_text(name: str) -> str:
    path = resources.files(_PACKAGE) / f"{name}{_SUFFIX}"
    if not path.is_file():
        raise ModelError(f"no corpus entry named {name!r}")
    return path.read_text(encoding="utf-8")


def load_corpus(name: str, initial: Optional[str] = None) -> MarkovAutomaton:
    """Parse corpus entry `name`, optionally re-rooted at state `initial`."""
    m = parse_ma(corpus_text(name))
    return m if initial is None else with_initial(m, initial)


def fig7_example(p: Union[Fraction, int, str] = Fraction(1, 2),
                 q: Union[Fraction, int, str] = Fraction(1, 2)) -> MarkovAutomaton:
    """
    The two-root example with branching weights p and q.

    notes:
    - t1's second tau target x·A ⊕ (1−x)·B uses x = p / (1 − (1−p)·q), the probability
      of reaching A from s1 when both of s1's and s2's looping branches are taken.
    """
    p, q = Fraction(p), Fraction(q)
    if not (0 < p < 1 and 0 < q < 1):
        raise ModelError("p and q must lie strictly between 0 and 1")
    x = p / (1 - (1 - p) * q)
    r = format_rational
    text = "\n".join(
        [
            "prob_automaton",
            "states s1 s2 t1 A B",
            "initial s1",
            "prob s1 tau : 1 s2",
            f"prob s1 tau : {r(p)} A, {r(1 - p)} s2",
            f"prob s2 tau : {r(q)} s1, {r(1 - q)} B",
            "prob t1 tau : 1 B",
            f"prob t1 tau : {r(x)} A, {r(1 - x)} B",
            "prob B b : 1 A",
        ]
    )
    return parse_ma(text + "\n")


@dataclass(frozen=True)
class CorpusPair:
    """
    attributes:
    - left / right: (corpus name, root state or None for the file's initial state)
    - weak: expected weak verdict under the chi(0) mapping
    - compose_with: corpus name both sides are composed with (or None)
    """

    name: str
    left: Tuple[str, Optional[str]]
    right: Tuple[str, Optional[str]]
    weak: bool
    compose_with: Optional[str] = None

    def automata(self) -> Tuple[MarkovAutomaton, MarkovAutomaton]:
        a, b = load_corpus(*self.left), load_corpus(*self.right)
        if self.compose_with is not None:
            other = load_corpus(self.compose_with)
            a, b = parallel_compose(a, other), parallel_compose(b, other)
        return a, b


CORPUS_PAIRS: Tuple[CorpusPair, ...] = (
    CorpusPair("fig1_m1_m2", ("fig1_m1", None), ("fig1_m2", None), weak=False),
    CorpusPair("fig1_m1_m3", ("fig1_m1", None), ("fig1_m3", None), weak=True),
    CorpusPair("fig2", ("fig2_m1", None), ("fig2_m2", None), weak=True),
    CorpusPair("fig3", ("fig3_ab", "A"), ("fig3_ab", "B"), weak=True),
    CorpusPair("fig5ab", ("fig5a", None), ("fig5b", None), weak=True),
    CorpusPair("fig5c", ("fig5c", "E"), ("fig5c", "D"), weak=False),
    CorpusPair("fig5_ef", ("fig5_ef", "E"), ("fig5_ef", "F"), weak=True),
    CorpusPair("fig6", ("fig6_rescale", "s"), ("fig6_rescale", "t"), weak=True),
    CorpusPair("fig7", ("fig7_example", "s1"), ("fig7_example", "t1"), weak=True),
    CorpusPair("fig8", ("fig8_nondet", "s"), ("fig8_nondet", "t"), weak=False),
    CorpusPair("fig10", ("fig1_m1", None), ("fig1_m2", None), weak=False, compose_with="fig10_m4"),
)


__all__ = ["corpus_names", "corpus_text", "load_corpus", "fig7_example", "CorpusPair", "CORPUS_PAIRS"]
