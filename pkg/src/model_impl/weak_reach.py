"""
Weak transitions via Dirac determinate schedulers.

PURPOSE:
- scheduler_outcome: exact absorption distribution of the phase-state chain a
  memoryless, non-randomised scheduler induces (loops become linear systems).
- generator_set: S(s,α), the hull-reduced outcomes of all well-formed schedulers.
- dirac_det_tau_targets: DiracDet(s,τ), every outcome kept (vanishing candidates).
- lift_weak: weak α transitions from a subdistribution.

CONTEXT:
- A phase-state is (state, BEFORE) or (state, AFTER): for a visible label α exactly one
  α step moves BEFORE→AFTER and only AFTER phase-states may stop. For tau the chain
  stays in BEFORE and stopping is allowed everywhere (including at the root).
- Enumeration is depth-first: the smallest reachable unassigned phase-state gets a choice
  next, so schedulers differing only off-path are never produced twice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

import structlog

from src.config import load_settings
from src.errors import IllFormedScheduler, SchedulerLimitExceeded
from src.model_impl.linsolve import solve
from src.model_impl.polytope import extreme_indices
from src.model_interface.automaton import ProbAutomaton
from src.model_interface.distribution import SubDistribution, as_vector, dirac
from src.model_interface.types import TAU, Action

log = structlog.get_logger(__name__)

BEFORE = 0
AFTER = 1
STOP = -1

PhaseState = Tuple[int, int]


@dataclass(frozen=True)
class WeakLabel:
    """Tau (⇒, staying put allowed) or Visible(α) (exactly one α on every path)."""

    action: Optional[Action] = None

    def __post_init__(self):
        if self.action == TAU:
            object.__setattr__(self, "action", None)

    @classmethod
    def tau(cls) -> "WeakLabel":
        return cls(None)

    @classmethod
    def visible(cls, action: Action) -> "WeakLabel":
        if action == TAU:
            raise IllFormedScheduler("tau is not a visible label")
        return cls(action)

    @classmethod
    def for_action(cls, action: Action) -> "WeakLabel":
        return cls.tau() if action == TAU else cls(action)

    @property
    def is_tau(self) -> bool:
        return self.action is None


@dataclass(frozen=True)
class DiracScheduler:
    """
    Memoryless choice per phase-state: STOP or the index of one transition in
    p.outgoing(state).
    """

    choice: Mapping[PhaseState, int] = field(default_factory=dict)


class _Divergent:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DIVERGENT"


DIVERGENT = _Divergent()

Outcome = Union[SubDistribution, _Divergent]


# -------------------- phase-state chain -------------------- #

def _options(p: ProbAutomaton, ps: PhaseState, label: WeakLabel) -> List[int]:
    state, phase = ps
    out = p.outgoing(state)
    taus = [i for i, t in enumerate(out) if t.action == TAU]
    if label.is_tau:
        return [STOP] + taus
    if phase == BEFORE:
        return [i for i, t in enumerate(out) if t.action == TAU or t.action == label.action]
    return [STOP] + taus


def _next_phase(p: ProbAutomaton, ps: PhaseState, index: int, label: WeakLabel) -> int:
    if label.is_tau or ps[1] == AFTER:
        return ps[1]
    return AFTER if p.outgoing(ps[0])[index].action == label.action else BEFORE


def _successors(p: ProbAutomaton, ps: PhaseState, index: int, label: WeakLabel) -> List[Tuple[PhaseState, Fraction]]:
    phase = _next_phase(p, ps, index, label)
    return [((t, phase), q) for t, q in p.outgoing(ps[0])[index].target.items()]


def _reachable(p: ProbAutomaton, root: int, label: WeakLabel, choice: Mapping[PhaseState, int]) -> List[PhaseState]:
    start = (root, BEFORE)
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        ps = order[i]
        i += 1
        opt = choice.get(ps)
        if opt is None or opt == STOP:
            continue
        for nxt, _ in _successors(p, ps, opt, label):
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
    return order


def _absorb(p: ProbAutomaton, root: int, label: WeakLabel, choice: Mapping[PhaseState, int],
            order: Sequence[PhaseState]) -> Outcome:
    start = (root, BEFORE)
    if choice[start] == STOP:
        return dirac(root)

    stops = [ps for ps in order if choice[ps] == STOP]
    transient = [ps for ps in order if choice[ps] != STOP]
    succ = {ps: _successors(p, ps, choice[ps], label) for ps in transient}

    # Phase-states that cannot reach a stop carry no mass into the outcome.
    live: Set[PhaseState] = set(stops)
    changed = True
    while changed:
        changed = False
        for ps in transient:
            if ps not in live and any(nxt in live for nxt, _ in succ[ps]):
                live.add(ps)
                changed = True
    if start not in live:
        return DIVERGENT

    live_transient = [ps for ps in transient if ps in live]
    row_of = {ps: i for i, ps in enumerate(live_transient)}
    col_of = {ps: j for j, ps in enumerate(stops)}
    n, k = len(live_transient), len(stops)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    rhs = [[Fraction(0)] * k for _ in range(n)]
    for ps in live_transient:
        i = row_of[ps]
        matrix[i][i] += 1
        for nxt, q in succ[ps]:
            if nxt in row_of:
                matrix[i][row_of[nxt]] -= q
            elif nxt in col_of:
                rhs[i][col_of[nxt]] += q

    absorbed = solve(matrix, rhs)[row_of[start]]
    if sum(absorbed, Fraction(0)) < 1:
        return DIVERGENT
    return SubDistribution([(stops[j][0], absorbed[j]) for j in range(k)])


def scheduler_outcome(p: ProbAutomaton, root: int, label: WeakLabel, sched: DiracScheduler) -> Outcome:
    """
    Distribution induced by `sched` from `root`, or DIVERGENT when mass < 1 is absorbed.

    raises:
    - IllFormedScheduler – a choice breaks the label discipline, or a reachable
      phase-state has no choice.
    """
    for ps, opt in sched.choice.items():
        if opt not in _options(p, ps, label):
            raise IllFormedScheduler(f"choice {opt} not allowed at {p.name(ps[0])} (phase {ps[1]})")
    order = _reachable(p, root, label, sched.choice)
    missing = [ps for ps in order if ps not in sched.choice]
    if missing:
        raise IllFormedScheduler(f"no choice for reachable state {p.name(missing[0][0])}")
    return _absorb(p, root, label, sched.choice, order)


# -------------------- enumeration -------------------- #

def enumerate_schedulers(p: ProbAutomaton, root: int, label: WeakLabel,
                         limit: Optional[int] = None) -> Iterator[DiracScheduler]:
    """
    Every well-formed Dirac scheduler, restricted to the phase-states it reaches.

    raises:
    - SchedulerLimitExceeded – after `limit` schedulers (default: MABISIM_SCHED_LIMIT).
    """
    if limit is None:
        limit = load_settings().sched_limit
    choice: Dict[PhaseState, int] = {}
    produced = 0

    def extend() -> Iterator[DiracScheduler]:
        nonlocal produced
        pending = [ps for ps in _reachable(p, root, label, choice) if ps not in choice]
        if not pending:
            produced += 1
            if produced > limit:
                log.warning("weak_reach.limit", state=p.name(root), limit=limit)
                raise SchedulerLimitExceeded(
                    f"more than {limit} schedulers from {p.name(root)}; raise MABISIM_SCHED_LIMIT"
                )
            yield DiracScheduler(dict(choice))
            return
        ps = min(pending)
        for opt in _options(p, ps, label):
            choice[ps] = opt
            yield from extend()
            del choice[ps]

    yield from extend()


def _outcomes(p: ProbAutomaton, s: int, label: WeakLabel, limit: Optional[int]) -> List[SubDistribution]:
    seen: Set[SubDistribution] = set()
    out: List[SubDistribution] = []
    for sched in enumerate_schedulers(p, s, label, limit):
        order = _reachable(p, s, label, sched.choice)
        mu = _absorb(p, s, label, sched.choice, order)
        if mu is DIVERGENT or mu in seen:
            continue
        seen.add(mu)
        out.append(mu)
    return out


def dirac_det_tau_targets(p: ProbAutomaton, s: int, limit: Optional[int] = None) -> List[SubDistribution]:
    """DiracDet(s,τ): all non-divergent outcomes, deduplicated, in scheduler construction order."""
    return _outcomes(p, s, WeakLabel.tau(), limit)


def _reduce(p: ProbAutomaton, dists: List[SubDistribution]) -> List[SubDistribution]:
    if len(dists) < 2:
        return dists
    vectors = [as_vector(mu, p.size) for mu in dists]
    return [dists[i] for i in extreme_indices(vectors)]


def generator_set(p: ProbAutomaton, s: int, alpha: Action, limit: Optional[int] = None) -> List[SubDistribution]:
    """
    S(s,α): extreme points of the weak (combined) α transitions from s.

    notes:
    - For α = τ the list always contains Δ_s; for visible α it is empty iff s has no
      weak α transition.
    """
    return _reduce(p, _outcomes(p, s, WeakLabel.for_action(alpha), limit))


def lift_weak(p: ProbAutomaton, mu: SubDistribution, alpha: Action,
              limit: Optional[int] = None) -> List[SubDistribution]:
    """Generators of {⊕ μ(s_i)·γ_i | γ_i ∈ S(s_i,α)}, hull-reduced."""
    per_state = [(s, q, generator_set(p, s, alpha, limit)) for s, q in mu.items()]
    if any(not gens for _, _, gens in per_state):
        return []
    combos: List[SubDistribution] = []
    seen: Set[SubDistribution] = set()
    for pick in itertools.product(*(gens for _, _, gens in per_state)):
        entries = [(t, q * m) for (_, q, _), gamma in zip(per_state, pick) for t, m in gamma.items()]
        lifted = SubDistribution(entries)
        if lifted not in seen:
            seen.add(lifted)
            combos.append(lifted)
    return _reduce(p, combos)


__all__ = [
    "BEFORE",
    "AFTER",
    "STOP",
    "WeakLabel",
    "DiracScheduler",
    "DIVERGENT",
    "scheduler_outcome",
    "enumerate_schedulers",
    "generator_set",
    "dirac_det_tau_targets",
    "lift_weak",
]
