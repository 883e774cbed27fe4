"""
Normal forms: the complete elimination of all vanishing states.

PURPOSE:
- normal_form: refine one automaton (weak semantics), then eliminate every vanishing
  state it reports, lowest index first.
- dist_equiv_on_normal_form: distribution-level weak bisimilarity on a normal form,
  i.e. equal mass on every block of the final partition.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple, Union

import structlog

from src.config import load_settings
from src.errors import MassMismatch, ModelError
from src.model_impl.chi_mapping import as_pa
from src.model_impl.elimination import eliminate_all, resolve, to_named
from src.model_impl.refinement import refine_partition, report_from_outcome, resolve_mode
from src.model_interface.automaton import MarkovAutomaton, ProbAutomaton
from src.model_interface.distribution import SubDistribution
from src.model_interface.report import DecisionReport, NamedDistribution
from src.model_interface.types import ChiMode, Semantics
from src.observability import timed_segment

log = structlog.get_logger(__name__)

DistributionInput = Union[SubDistribution, Mapping[str, Fraction]]


def normal_form(m: Union[MarkovAutomaton, ProbAutomaton], mode: Optional[ChiMode] = None, *,
                preprocess: Optional[bool] = None,
                limit: Optional[int] = None) -> Tuple[ProbAutomaton, DecisionReport]:
    """
    Eliminate every vanishing state of PA(m).

    returns:
    - (p̂, report) – the report's partition, tangible set and `eliminated` map speak
      about p̂'s state names; `eliminated` maps every removed name (including states
      removed by preprocessing) to a distribution over p̂'s states.
    """
    mode = resolve_mode(mode)
    if preprocess is None:
        preprocess = load_settings().preprocess
    timings: Dict[str, float] = {}
    with timed_segment("to_pa", timings):
        p = as_pa(m, mode)
    root = p.name(p.initial)

    outcome = refine_partition(p, Semantics.WEAK, protected=(root,), preprocess=preprocess,
                               limit=limit, timings=timings)
    q = outcome.automaton
    vanishing = sorted(outcome.state.vanishing.items(), key=lambda kv: kv[0])
    plan = tuple((q.name(s), to_named(q, nu)) for s, nu in vanishing)

    with timed_segment("eliminate", timings):
        result = eliminate_all(q, plan)
    p_hat = result.automaton

    eliminated: Dict[str, NamedDistribution] = {
        name: resolve(rep, result.representations) for name, rep in outcome.eliminated.items()
    }
    eliminated.update(result.representations)

    base = report_from_outcome(outcome, (root, root), Semantics.WEAK, mode, timings)
    alive = set(p_hat.states)

    def rename(name: str) -> str:
        return result.renamed.get(name, name)

    partition = tuple(
        block
        for block in (tuple(rename(n) for n in b if rename(n) in alive) for b in base.partition)
        if block
    )
    new_root = rename(root)
    report = dataclasses.replace(
        base,
        initial=(new_root, new_root),
        partition=partition,
        tangible=tuple(n for n in base.tangible if n in alive),
        eliminated=eliminated,
        timings=dict(timings),
    )
    log.info("normalize.done", states=p.size, remaining=p_hat.size, eliminated=len(eliminated))
    return p_hat, report


def _named_input(dist: DistributionInput, p_hat: Optional[ProbAutomaton]) -> NamedDistribution:
    if isinstance(dist, SubDistribution):
        if p_hat is None:
            raise ModelError("index-keyed distributions need the normal-form automaton")
        return to_named(p_hat, dist)
    return {name: Fraction(q) for name, q in dist.items()}


def dist_equiv_on_normal_form(p_hat: Optional[ProbAutomaton], report: DecisionReport,
                              mu: DistributionInput, gamma: DistributionInput) -> bool:
    """
    μ ≈ γ on a normal form: equal mass on every block of the report's partition.

    notes:
    - Name-keyed inputs may mention eliminated states; they are rewritten through
      report.eliminated first.

    raises:
    - MassMismatch – if |μ| ≠ |γ|.
    - ModelError – if a state is neither in the partition nor eliminated.
    """
    mu_n = _named_input(mu, p_hat)
    gamma_n = _named_input(gamma, p_hat)
    mu_mass = sum(mu_n.values(), Fraction(0))
    gamma_mass = sum(gamma_n.values(), Fraction(0))
    if mu_mass != gamma_mass:
        raise MassMismatch(f"distributions of mass {mu_mass} and {gamma_mass} cannot be related")

    def block_vector(rep: NamedDistribution) -> Tuple[Fraction, ...]:
        masses = [Fraction(0)] * len(report.partition)
        for name, q in resolve(rep, report.eliminated).items():
            index = report.block_index(name)
            if index is None:
                raise ModelError(f"state {name!r} is not part of the normal form")
            masses[index] += q
        return tuple(masses)

    return block_vector(mu_n) == block_vector(gamma_n)


__all__ = ["normal_form", "dist_equiv_on_normal_form"]
