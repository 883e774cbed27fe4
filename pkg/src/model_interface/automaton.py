"""
Markov automata and probabilistic automata.

PURPOSE:
- Immutable automaton model shared by every algorithm: named states with dense
  indices, action-labelled probabilistic transitions (PT) and Markovian timed
  transitions (MT).
- ProbAutomaton is the MT-free image of the MA→PA mapping; only it may carry chi actions.

NOTE:
- Duplicate PT/MT entries are dropped on construction (transition sets, not lists).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

from src.errors import ModelError
from src.model_interface.distribution import SubDistribution
from src.model_interface.types import TAU, Action, Chi, External, action_key


@dataclass(frozen=True)
class Transition:
    source: int
    action: Action
    target: SubDistribution


@dataclass(frozen=True)
class MarkovianTransition:
    source: int
    rate: Fraction
    target: int


def _dedupe(items: Iterable) -> tuple:
    seen: Set = set()
    out: List = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return tuple(out)


@dataclass(frozen=True)
class MarkovAutomaton:
    """
    A finite Markov automaton (S, Act, PT, MT, s0).

    attributes:
    - states: tuple[str, ...] – display names; the position is the state index
    - pt: tuple[Transition, ...] – action-labelled probabilistic transitions
    - mt: tuple[MarkovianTransition, ...] – timed transitions with positive rates
    - initial: int – index of s0
    - actions: frozenset[str] – declared external action names (used ones are added)
    """

    states: Tuple[str, ...]
    pt: Tuple[Transition, ...] = ()
    mt: Tuple[MarkovianTransition, ...] = ()
    initial: int = 0
    actions: FrozenSet[str] = field(default_factory=frozenset)

    allows_chi = False

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "pt", _dedupe(self.pt))
        object.__setattr__(self, "mt", _dedupe(self.mt))
        used = {t.action.name for t in self.pt if isinstance(t.action, External)}
        object.__setattr__(self, "actions", frozenset(self.actions) | frozenset(used))
        self._validate()

    def _validate(self) -> None:
        n = len(self.states)
        if n == 0:
            raise ModelError("an automaton needs at least one state")
        if len(set(self.states)) != n:
            raise ModelError("duplicate state names")
        if not 0 <= self.initial < n:
            raise ModelError(f"initial state index {self.initial} out of range")
        for t in self.pt:
            if not 0 <= t.source < n or any(not 0 <= s < n for s in t.target.support):
                raise ModelError(f"transition {t} references an unknown state")
            if not t.target.is_full:
                raise ModelError(f"transition from {self.states[t.source]} has mass {t.target.mass}, expected 1")
            if isinstance(t.action, Chi) and not self.allows_chi:
                raise ModelError("chi actions only appear in probabilistic automata")
        for m in self.mt:
            if not (0 <= m.source < n and 0 <= m.target < n):
                raise ModelError(f"timed transition {m} references an unknown state")
            if m.rate <= 0:
                raise ModelError(f"timed transition rates must be positive, got {m.rate}")
        for name in self.actions:
            External(name)

    # -------------------- lookups -------------------- #

    @property
    def size(self) -> int:
        return len(self.states)

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.states)}

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ModelError(f"unknown state {name!r}") from None

    def name(self, state: int) -> str:
        return self.states[state]

    @cached_property
    def _outgoing(self) -> Tuple[Tuple[Transition, ...], ...]:
        by_source: List[List[Transition]] = [[] for _ in self.states]
        for t in self.pt:
            by_source[t.source].append(t)
        return tuple(tuple(ts) for ts in by_source)

    def outgoing(self, state: int) -> Tuple[Transition, ...]:
        """PT emanating from `state`, in declaration order (the scheduler option order)."""
        return self._outgoing[state]

    def timed(self, state: int) -> Tuple[MarkovianTransition, ...]:
        return tuple(m for m in self.mt if m.source == state)

    @property
    def action_alphabet(self) -> Tuple[Action, ...]:
        """All actions labelling some PT, plus tau, in action_key order."""
        acts = {t.action for t in self.pt} | {TAU}
        acts |= {External(a) for a in self.actions}
        return tuple(sorted(acts, key=action_key))

    def successors(self, state: int) -> Set[int]:
        out = {s for t in self.outgoing(state) for s in t.target.support}
        out |= {m.target for m in self.timed(state)}
        return out

    def has_incoming(self, state: int) -> bool:
        return any(state in t.target for t in self.pt) or any(m.target == state for m in self.mt)


@dataclass(frozen=True)
class ProbAutomaton(MarkovAutomaton):
    """A Markov automaton without timed transitions; actions range over Act^chi."""

    allows_chi = True

    def _validate(self) -> None:
        if self.mt:
            raise ModelError("probabilistic automata have no timed transitions")
        super()._validate()


def is_stable(m: MarkovAutomaton, state: int) -> bool:
    """True iff no tau transition emanates from `state`."""
    if not 0 <= state < m.size:
        raise ModelError(f"state index {state} out of range")
    return not any(t.action == TAU for t in m.outgoing(state))


__all__ = [
    "Transition",
    "MarkovianTransition",
    "MarkovAutomaton",
    "ProbAutomaton",
    "is_stable",
]
