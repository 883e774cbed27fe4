"""
MA → PA mapping with chi actions, plus unsynchronised parallel composition.

PURPOSE:
- Rates: rate(s,s'), exit rate rate(s), successor distribution P_s.
- ma_to_pa: keep every PT; each stable state gets one chi(rate(s)) transition to P_s
  (maximal progress: unstable states lose their timed behaviour).
- parallel_compose: pure interleaving of two MAs over reachable state pairs.

NOTE:
- LEGACY_NO_CHI_ZERO omits the chi(0) transition of stable deadlocks; it exists only to
  reproduce the congruence counterexample of the older definition.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Dict, List, Set, Tuple, Union

import structlog

from src.constants.reserved import PAIR_SEPARATOR
from src.model_interface.automaton import (
    MarkovAutomaton,
    MarkovianTransition,
    ProbAutomaton,
    Transition,
    is_stable,
)
from src.model_interface.distribution import SubDistribution, dirac
from src.model_interface.types import Action, Chi, ChiMode

log = structlog.get_logger(__name__)


def rate_between(m: MarkovAutomaton, s: int, t: int) -> Fraction:
    """rate(s, t): sum of all timed rates from s to t (0 if none)."""
    return sum((x.rate for x in m.timed(s) if x.target == t), Fraction(0))


def exit_rate(m: MarkovAutomaton, s: int) -> Fraction:
    return sum((x.rate for x in m.timed(s)), Fraction(0))


def successor_distribution(m: MarkovAutomaton, s: int) -> SubDistribution:
    """P_s: normalised rate vector, or Δ_s when the exit rate is 0."""
    total = exit_rate(m, s)
    if total == 0:
        return dirac(s)
    targets = sorted({x.target for x in m.timed(s)})
    return SubDistribution({t: rate_between(m, s, t) / total for t in targets})


def _emits_chi(m: MarkovAutomaton, s: int, mode: ChiMode) -> bool:
    if not is_stable(m, s):
        return False
    return mode is ChiMode.WITH_CHI_ZERO or exit_rate(m, s) != 0


def chi_action_set(m: MarkovAutomaton, mode: ChiMode = ChiMode.WITH_CHI_ZERO) -> Set[Action]:
    """{chi(r) | r an exit rate of a stable state that receives a chi transition}."""
    return {Chi(exit_rate(m, s)) for s in range(m.size) if _emits_chi(m, s, mode)}


def ma_to_pa(m: MarkovAutomaton, mode: ChiMode = ChiMode.WITH_CHI_ZERO) -> ProbAutomaton:
    """
    PA(M) = (S, Act^chi, →, ∅, s0).

    parameters:
    - m: MarkovAutomaton
    - mode: ChiMode – WITH_CHI_ZERO (default) or LEGACY_NO_CHI_ZERO

    returns:
    - ProbAutomaton – all PT of m, plus one chi transition per stable state (subject to mode).
    """
    chi = [
        Transition(s, Chi(exit_rate(m, s)), successor_distribution(m, s))
        for s in range(m.size)
        if _emits_chi(m, s, mode)
    ]
    pa = ProbAutomaton(states=m.states, pt=tuple(m.pt) + tuple(chi), initial=m.initial, actions=m.actions)
    log.debug("chi_mapping.to_pa", states=m.size, chi_transitions=len(chi), mode=mode.value)
    return pa


def as_pa(m: Union[MarkovAutomaton, ProbAutomaton], mode: ChiMode = ChiMode.WITH_CHI_ZERO) -> ProbAutomaton:
    """Identity on ProbAutomaton inputs (their chi actions are explicit), ma_to_pa otherwise."""
    if isinstance(m, ProbAutomaton):
        return m
    return ma_to_pa(m, mode)


def parallel_compose(a: MarkovAutomaton, b: MarkovAutomaton) -> MarkovAutomaton:
    """
    Interleaving composition a ∥ b over the pairs reachable from (a.s0, b.s0).

    notes:
    - No synchronisation: shared external names are interleaved (a warning is logged).
    - Pair names are "s|t"; pairs are indexed in breadth-first discovery order.
    """
    shared = sorted(a.actions & b.actions)
    if shared:
        log.warning("compose.shared_actions", actions=shared)

    start = (a.initial, b.initial)
    index: Dict[Tuple[int, int], int] = {start: 0}
    order: List[Tuple[int, int]] = [start]
    pt: List[Transition] = []
    mt: List[MarkovianTransition] = []

    def visit(pair: Tuple[int, int]) -> int:
        if pair not in index:
            index[pair] = len(order)
            order.append(pair)
            queue.append(pair)
        return index[pair]

    queue = deque([start])
    while queue:
        pair = queue.popleft()
        s, t = pair
        src = index[pair]
        for tr in a.outgoing(s):
            target = SubDistribution([(visit((s2, t)), q) for s2, q in tr.target.items()])
            pt.append(Transition(src, tr.action, target))
        for tr in b.outgoing(t):
            target = SubDistribution([(visit((s, t2)), q) for t2, q in tr.target.items()])
            pt.append(Transition(src, tr.action, target))
        for x in a.timed(s):
            mt.append(MarkovianTransition(src, x.rate, visit((x.target, t))))
        for x in b.timed(t):
            mt.append(MarkovianTransition(src, x.rate, visit((s, x.target))))

    names = tuple(f"{a.states[s]}{PAIR_SEPARATOR}{b.states[t]}" for s, t in order)
    kind = ProbAutomaton if isinstance(a, ProbAutomaton) and isinstance(b, ProbAutomaton) else MarkovAutomaton
    composed = kind(states=names, pt=tuple(pt), mt=tuple(mt), initial=0, actions=a.actions | b.actions)
    log.debug("compose.done", states=composed.size, transitions=len(pt), timed=len(mt))
    return composed


__all__ = [
    "rate_between",
    "exit_rate",
    "successor_distribution",
    "chi_action_set",
    "ma_to_pa",
    "as_pa",
    "parallel_compose",
]
