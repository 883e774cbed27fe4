"""
Seeded random models for property checks.

PURPOSE:
- random_automaton: small automata whose branch weights come from {1/4, 1/3, 1/2, 1},
  drawn from a numpy Generator so every suite is reproducible from its seed.
- random_pair: two independently drawn automata for two-sided properties.
- random_points: rational point sets for convex-hull checks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from src.model_interface.automaton import MarkovAutomaton, MarkovianTransition, ProbAutomaton, Transition
from src.model_interface.distribution import SubDistribution
from src.model_interface.types import TAU, Action, External

F = Fraction

# every way to split mass 1 into branches of 1/4, 1/3, 1/2 or 1
BRANCH_SHAPES: Tuple[Tuple[Fraction, ...], ...] = (
    (F(1),),
    (F(1, 2), F(1, 2)),
    (F(1, 2), F(1, 4), F(1, 4)),
    (F(1, 3), F(1, 3), F(1, 3)),
    (F(1, 4), F(1, 4), F(1, 4), F(1, 4)),
)


def _target(rng: np.random.Generator, n: int, max_branch: int) -> SubDistribution:
    shapes = [w for w in BRANCH_SHAPES if len(w) <= min(max_branch, n)]
    weights = shapes[int(rng.integers(0, len(shapes)))]
    support = [int(s) for s in rng.choice(n, size=len(weights), replace=False)]
    return SubDistribution(zip(support, weights))


def random_automaton(rng: np.random.Generator, n_states: int, *,
                     actions: Sequence[str] = ("a", "b"),
                     tau_bias: float = 0.5,
                     max_out: int = 3,
                     max_branch: int = 3,
                     markov_rate: float = 0.0) -> MarkovAutomaton:
    """
    A random automaton on states s0..s{n-1}, rooted at s0.

    parameters:
    - tau_bias: probability that a drawn transition is labelled tau
    - max_out: max transitions per state, a timed one included (0..max_out drawn uniformly)
    - max_branch: max support size of a probabilistic target
    - markov_rate: chance that a state gets a timed transition (0 → ProbAutomaton)
    """
    names = tuple(f"s{i}" for i in range(n_states))
    pt: List[Transition] = []
    mt: List[MarkovianTransition] = []
    for s in range(n_states):
        budget = int(rng.integers(0, max_out + 1))
        if budget and markov_rate and rng.random() < markov_rate:
            rate = Fraction(int(rng.integers(1, 4)))
            mt.append(MarkovianTransition(s, rate, int(rng.integers(0, n_states))))
            budget -= 1
        for _ in range(budget):
            action: Action = TAU if rng.random() < tau_bias else External(str(rng.choice(list(actions))))
            pt.append(Transition(s, action, _target(rng, n_states, max_branch)))
    kind = MarkovAutomaton if markov_rate else ProbAutomaton
    return kind(states=names, pt=tuple(pt), mt=tuple(mt), initial=0)


def random_pair(rng: np.random.Generator, max_states: int = 4, **kwargs) -> Tuple[MarkovAutomaton, MarkovAutomaton]:
    """Two automata of 2..max_states states each, drawn one after the other."""
    first = random_automaton(rng, int(rng.integers(2, max_states + 1)), **kwargs)
    second = random_automaton(rng, int(rng.integers(2, max_states + 1)), **kwargs)
    return first, second


def random_points(rng: np.random.Generator, count: int, dimension: int,
                  denominator: int = 4) -> List[Tuple[Fraction, ...]]:
    grid = rng.integers(0, denominator + 1, size=(count, dimension))
    return [tuple(Fraction(int(x), denominator) for x in row) for row in grid]


__all__ = ["BRANCH_SHAPES", "random_automaton", "random_pair", "random_points"]
