"""
Structural automaton transformations.

PURPOSE:
- modified_automaton: the local change P_(s,ν) (all of s's transitions replaced by one tau to ν).
- direct_sum: disjoint union of two automata, second summand offset by the first's size.
- with_initial: re-root an automaton and drop the states unreachable from the new root.
- drop_state: remove one state and re-index the rest (used by elimination).
"""

from __future__ import annotations

import dataclasses
from collections import deque
from typing import Dict, Iterable, Tuple, TypeVar

from src.constants.reserved import LEFT_PREFIX, RIGHT_PREFIX
from src.errors import ModelError
from src.model_interface.automaton import MarkovAutomaton, MarkovianTransition, ProbAutomaton, Transition
from src.model_interface.distribution import SubDistribution
from src.model_interface.types import TAU

A = TypeVar("A", bound=MarkovAutomaton)


def modified_automaton(p: ProbAutomaton, state: int, nu: SubDistribution) -> ProbAutomaton:
    """
    P_(s,ν): every transition emanating from `state` is replaced by (state, tau, ν).

    notes:
    - The state keeps its index so convex sets of p and of the result share coordinates.
    """
    if not nu.is_full:
        raise ModelError(f"vanishing representation must be a full distribution, got mass {nu.mass}")
    kept = [t for t in p.pt if t.source != state]
    return dataclasses.replace(p, pt=tuple(kept) + (Transition(state, TAU, nu),))


def _renamed(m: A, prefix: str) -> Tuple[str, ...]:
    return tuple(prefix + name for name in m.states)


def direct_sum(a: A, b: A) -> Tuple[A, int]:
    """
    Disjoint union of two automata of the same kind.

    returns:
    - (sum, offset) – b's state i becomes offset + i; display names get P1./P2. prefixes;
      the sum's initial state is a's.
    """
    if type(a) is not type(b):
        raise ModelError("direct sums need two automata of the same kind")
    offset = a.size
    pt = list(a.pt) + [Transition(t.source + offset, t.action, t.target.shift(offset)) for t in b.pt]
    mt = list(a.mt) + [MarkovianTransition(m.source + offset, m.rate, m.target + offset) for m in b.mt]
    summed = type(a)(
        states=_renamed(a, LEFT_PREFIX) + _renamed(b, RIGHT_PREFIX),
        pt=tuple(pt),
        mt=tuple(mt),
        initial=a.initial,
        actions=a.actions | b.actions,
    )
    return summed, offset


def reachable_from(m: MarkovAutomaton, root: int) -> Tuple[int, ...]:
    seen = {root}
    queue = deque([root])
    while queue:
        s = queue.popleft()
        for t in sorted(m.successors(s)):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return tuple(sorted(seen))


def restrict_states(m: A, keep: Iterable[int], initial: int) -> A:
    """Sub-automaton on `keep` (which must be closed under successors), re-indexed densely."""
    keep = sorted(set(keep))
    index: Dict[int, int] = {old: new for new, old in enumerate(keep)}
    pt = tuple(
        Transition(index[t.source], t.action, t.target.remap(index)) for t in m.pt if t.source in index
    )
    mt = tuple(
        MarkovianTransition(index[x.source], x.rate, index[x.target]) for x in m.mt if x.source in index
    )
    return type(m)(
        states=tuple(m.states[s] for s in keep),
        pt=pt,
        mt=mt,
        initial=index[initial],
        actions=m.actions,
    )


def with_initial(m: A, name: str) -> A:
    """The automaton rooted at state `name`, restricted to what that state can reach."""
    root = m.index_of(name)
    return restrict_states(m, reachable_from(m, root), root)


def drop_state(m: A, state: int, initial: int) -> A:
    """
    Remove `state`; no remaining transition may still reference it.

    raises:
    - ModelError – if a transition still targets `state`.
    """
    if state == initial:
        raise ModelError("cannot drop the initial state")
    if any(state in t.target for t in m.pt if t.source != state):
        raise ModelError(f"state {m.states[state]} still has incoming transitions")
    keep = [s for s in range(m.size) if s != state]
    stripped = dataclasses.replace(m, pt=tuple(t for t in m.pt if t.source != state))
    return restrict_states(stripped, keep, initial)


__all__ = [
    "modified_automaton",
    "direct_sum",
    "reachable_from",
    "restrict_states",
    "with_initial",
    "drop_state",
]
