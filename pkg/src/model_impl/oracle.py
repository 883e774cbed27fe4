"""
Brute-force oracle for naive weak bisimulation on tiny automata.

PURPOSE:
- check_naive_partition: direct check of the naive weak bisimulation conditions for one
  partition (hull membership = existence of a combined weak response).
- coarsest_naive_partition_bruteforce: scan every partition of the state space.

NOTE:
- Partitions are generated as restricted-growth strings and scanned by block count
  (coarsest first); Bell(6) = 203.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import structlog

from src.config import load_settings
from src.errors import MaBisimError, TooLarge
from src.model_impl.polytope import ConvexSet, contains, quotient_project
from src.model_impl.weak_reach import generator_set
from src.model_interface.automaton import ProbAutomaton
from src.model_interface.distribution import as_vector, block_masses
from src.model_interface.partition import Partition
from src.model_interface.types import Action

log = structlog.get_logger(__name__)


@dataclass(frozen=True)
class CandidatePartition:
    partition: Partition
    valid: bool


class _Responses:
    """Generator sets S(y,α) as vectors, computed once per (y, α)."""

    def __init__(self, p: ProbAutomaton, limit: Optional[int]):
        self.p = p
        self.limit = limit
        self._sets: Dict[Tuple[int, Action], ConvexSet] = {}

    def get(self, y: int, alpha: Action) -> ConvexSet:
        key = (y, alpha)
        if key not in self._sets:
            gens = generator_set(self.p, y, alpha, self.limit)
            self._sets[key] = ConvexSet(self.p.size, tuple(as_vector(mu, self.p.size) for mu in gens))
        return self._sets[key]


def _check(p: ProbAutomaton, part: Partition, responses: _Responses) -> bool:
    for block in part.blocks:
        if len(block) < 2:
            continue
        for x in block:
            for t in p.outgoing(x):
                target = block_masses(t.target, part.blocks)
                for y in block:
                    if y == x:
                        continue
                    if not contains(quotient_project(responses.get(y, t.action), part), target):
                        return False
    return True


def check_naive_partition(p: ProbAutomaton, part: Partition, limit: Optional[int] = None) -> bool:
    """
    True iff every strong x −α→ μ is matched by every y in x's block with a combined
    weak α̂ move μ' such that μ(C) = μ'(C) for all blocks C.
    """
    return _check(p, part, _Responses(p, limit))


def set_partitions(n: int) -> Iterator[Partition]:
    """Every partition of {0..n-1}, via restricted-growth strings."""
    if n == 0:
        return
    labels = [0] * n

    def extend(i: int, top: int) -> Iterator[Partition]:
        if i == n:
            blocks: List[List[int]] = [[] for _ in range(top + 1)]
            for s, b in enumerate(labels):
                blocks[b].append(s)
            yield Partition.from_blocks(blocks)
            return
        for b in range(top + 2):
            labels[i] = b
            yield from extend(i + 1, max(top, b))

    labels[0] = 0
    yield from extend(1, 0)


def candidate_partitions(p: ProbAutomaton, limit: Optional[int] = None) -> Iterator[CandidatePartition]:
    responses = _Responses(p, limit)
    for part in sorted(set_partitions(p.size), key=len):
        yield CandidatePartition(part, _check(p, part, responses))


def coarsest_naive_partition_bruteforce(p: ProbAutomaton, bound: Optional[int] = None,
                                        limit: Optional[int] = None) -> Partition:
    """
    The coarsest partition passing check_naive_partition.

    raises:
    - TooLarge – if p has more states than `bound` (default MABISIM_ORACLE_BOUND).
    - MaBisimError – if some passing partition does not refine the coarsest one.
    """
    if bound is None:
        bound = load_settings().oracle_bound
    if p.size > bound:
        raise TooLarge(f"oracle is limited to {bound} states, automaton has {p.size}")

    passing = [c.partition for c in candidate_partitions(p, limit) if c.valid]
    coarsest = passing[0]
    for part in passing[1:]:
        if not part.refines(coarsest):
            raise MaBisimError("passing partitions are not closed under union")
    log.debug("oracle.done", states=p.size, passing=len(passing), blocks=len(coarsest))
    return coarsest


__all__ = [
    "CandidatePartition",
    "check_naive_partition",
    "set_partitions",
    "candidate_partitions",
    "coarsest_naive_partition_bruteforce",
]
