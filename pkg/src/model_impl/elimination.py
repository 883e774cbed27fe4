"""
Vanishing-state elimination.

PURPOSE:
- rescale: turn (s,τ,ν) into (s,τ,(ν−s)/(1−ν(s))), or drop it when ν = Δ_s.
- eliminate_state: rescale, then one of three cases:
    1) s is not initial: remove s, rewrite every target μ into μ_{s→ν}.
    2) s is initial with incoming arcs: add s' with (s',τ,ν) as the new initial, remove s.
    3) s is initial without incoming arcs: keep s in representation form.
- eliminate_all: an ordered elimination plan with transitive substitution of the
  representations of states eliminated earlier.

NOTE:
- Plans and representations are keyed by state name; indices shift after every removal.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import structlog

from src.constants.reserved import FRESH_SUFFIX
from src.errors import ModelError
from src.model_impl.transforms import drop_state, modified_automaton
from src.model_interface.automaton import ProbAutomaton, Transition
from src.model_interface.distribution import SubDistribution, dist_minus, dist_scale, substitute
from src.model_interface.report import NamedDistribution
from src.model_interface.types import TAU

log = structlog.get_logger(__name__)

EliminationPlan = Tuple[Tuple[str, NamedDistribution], ...]


def to_named(p: ProbAutomaton, mu: SubDistribution) -> NamedDistribution:
    return {p.name(s): q for s, q in mu.items()}


def from_named(p: ProbAutomaton, rep: Mapping[str, Fraction]) -> SubDistribution:
    return SubDistribution([(p.index_of(name), Fraction(q)) for name, q in rep.items()])


def substitute_named(rep: Mapping[str, Fraction], name: str, nu: Mapping[str, Fraction]) -> NamedDistribution:
    """Name-keyed μ_{s→ν}."""
    weight = rep.get(name)
    out = {k: Fraction(v) for k, v in rep.items() if k != name}
    if not weight:
        return out
    for k, v in nu.items():
        out[k] = out.get(k, Fraction(0)) + weight * v
    return out


def resolve(rep: Mapping[str, Fraction], representations: Mapping[str, NamedDistribution]) -> NamedDistribution:
    """Rewrite every eliminated name in `rep` through its (already resolved) representation."""
    out = dict(rep)
    for name, nu in representations.items():
        if name in out:
            out = substitute_named(out, name, nu)
    return out


def rescale(p: ProbAutomaton, s: int, nu: SubDistribution) -> Tuple[ProbAutomaton, Optional[SubDistribution]]:
    """
    Rescale the single transition (s,τ,ν).

    returns:
    - (automaton, ν_res) – ν_res = (ν−s)/(1−ν(s)); (automaton without s's transition, None)
      when ν = Δ_s.

    raises:
    - ModelError – if (s,τ,ν) is not the only transition emanating from s.
    """
    out = p.outgoing(s)
    if len(out) != 1 or out[0].action != TAU or out[0].target != nu:
        raise ModelError(f"{p.name(s)} is not in vanishing-representation form")
    if nu.is_dirac(s):
        return dataclasses.replace(p, pt=tuple(t for t in p.pt if t.source != s)), None
    self_mass = nu[s]
    if not self_mass:
        return p, nu
    rescaled = dist_scale(1 / (1 - self_mass), dist_minus(nu, s))
    return modified_automaton(p, s, rescaled), rescaled


def _fresh_name(p: ProbAutomaton, base: str) -> str:
    name = base + FRESH_SUFFIX
    while name in p.states:
        name += FRESH_SUFFIX
    return name


def _substituted(p: ProbAutomaton, s: int, nu: SubDistribution) -> List[Transition]:
    return [Transition(t.source, t.action, substitute(t.target, s, nu)) for t in p.pt if t.source != s]


def _eliminate_rescaled(p: ProbAutomaton, s: int, nu: SubDistribution) -> Tuple[ProbAutomaton, Optional[str], bool]:
    """Cases 1-3 on an already rescaled representation; returns (automaton, fresh name, removed)."""
    if s != p.initial:
        rewritten = dataclasses.replace(p, pt=tuple(_substituted(p, s, nu)))
        return drop_state(rewritten, s, rewritten.initial), None, True

    incoming = any(s in t.target for t in p.pt if t.source != s)
    if not incoming:
        return p, None, False

    fresh = _fresh_name(p, p.name(s))
    new_index = p.size
    pt = _substituted(p, s, nu) + [Transition(new_index, TAU, nu)]
    widened = type(p)(states=p.states + (fresh,), pt=tuple(pt), initial=new_index, actions=p.actions)
    return drop_state(widened, s, new_index), fresh, True


def eliminate_state(p: ProbAutomaton, s: int, nu: SubDistribution) -> ProbAutomaton:
    """
    Eliminate `s` using the vanishing representation ν.

    notes:
    - s's transitions are first replaced by the single (s,τ,ν).
    - After a self-loop-only rescale nothing is eliminated: s stays, transitionless.
    """
    p = modified_automaton(p, s, nu)
    p, rescaled = rescale(p, s, nu)
    if rescaled is None:
        return p
    return _eliminate_rescaled(p, s, rescaled)[0]


@dataclass(frozen=True)
class EliminationResult:
    """
    attributes:
    - automaton: the automaton after all eliminations
    - representations: eliminated name → representation over surviving names
    - renamed: old initial name → fresh initial name (case 2)
    - kept: names left in place (case 3, or a representation with no escaping mass)
    """

    automaton: ProbAutomaton
    representations: Dict[str, NamedDistribution] = field(default_factory=dict)
    renamed: Dict[str, str] = field(default_factory=dict)
    kept: Tuple[str, ...] = ()


class Eliminator:
    """Sequential elimination keeping every recorded representation fully resolved."""

    def __init__(self, p: ProbAutomaton):
        self.automaton = p
        self.representations: Dict[str, NamedDistribution] = {}
        self.renamed: Dict[str, str] = {}
        self.kept: List[str] = []

    def eliminate(self, name: str, rep: Mapping[str, Fraction]) -> None:
        rep = resolve(rep, self.representations)
        p = self.automaton
        s = p.index_of(name)
        nu = from_named(p, rep)
        p, rescaled = rescale(modified_automaton(p, s, nu), s, nu)
        if rescaled is None:
            log.warning("eliminate.no_escape", state=name)
            self.kept.append(name)
            self.automaton = p
            return

        rescaled_named = to_named(p, rescaled)
        p, fresh, removed = _eliminate_rescaled(p, s, rescaled)
        self.automaton = p
        if not removed:
            self.kept.append(name)
            log.debug("eliminate.kept_initial", state=name)
            return

        for other, other_rep in self.representations.items():
            self.representations[other] = substitute_named(other_rep, name, rescaled_named)
        self.representations[name] = rescaled_named
        if fresh is not None:
            self.renamed[name] = fresh
        log.debug("eliminate.state", state=name, fresh=fresh, remaining=p.size)

    def result(self) -> EliminationResult:
        return EliminationResult(
            automaton=self.automaton,
            representations=dict(self.representations),
            renamed=dict(self.renamed),
            kept=tuple(self.kept),
        )


def eliminate_all(p: ProbAutomaton, plan: Sequence[Tuple[str, Mapping[str, Fraction]]]) -> EliminationResult:
    """Apply `plan` in order; later representations are rewritten through earlier eliminations."""
    eliminator = Eliminator(p)
    for name, rep in plan:
        eliminator.eliminate(name, rep)
    return eliminator.result()


__all__ = [
    "EliminationPlan",
    "EliminationResult",
    "Eliminator",
    "rescale",
    "eliminate_state",
    "eliminate_all",
    "resolve",
    "substitute_named",
    "to_named",
    "from_named",
]
