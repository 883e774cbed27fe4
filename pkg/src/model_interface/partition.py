"""
Partitions of a dense state space.

Blocks are kept sorted internally and ordered by their minimum state index, so two
partitions with the same blocks compare (and hash) equal and iteration is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Sequence, Tuple

from src.errors import ModelError


@dataclass(frozen=True)
class Partition:
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        normalised = [tuple(sorted(set(b))) for b in self.blocks]
        if any(not b for b in normalised):
            raise ModelError("partition blocks must be nonempty")
        seen = [s for b in normalised for s in b]
        if len(seen) != len(set(seen)):
            raise ModelError("partition blocks must be disjoint")
        object.__setattr__(self, "blocks", tuple(sorted(normalised, key=lambda b: b[0])))

    @classmethod
    def single(cls, size: int) -> "Partition":
        return cls((tuple(range(size)),))

    @classmethod
    def discrete(cls, size: int) -> "Partition":
        return cls(tuple((s,) for s in range(size)))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(tuple(b) for b in blocks))

    @cached_property
    def _block_of(self) -> Dict[int, int]:
        return {s: i for i, block in enumerate(self.blocks) for s in block}

    def block_of(self, state: int) -> int:
        try:
            return self._block_of[state]
        except KeyError:
            raise ModelError(f"state {state} is not covered by the partition") from None

    def same_block(self, s: int, t: int) -> bool:
        return self.block_of(s) == self.block_of(t)

    def covers(self, size: int) -> bool:
        return sorted(self._block_of) == list(range(size))

    def __len__(self) -> int:
        return len(self.blocks)

    def refines(self, other: "Partition") -> bool:
        """True iff every block of self lies inside one block of other."""
        return all(len({other.block_of(s) for s in block}) == 1 for block in self.blocks)

    def replace_block(self, index: int, groups: Sequence[Sequence[int]]) -> "Partition":
        if sorted(s for g in groups for s in g) != list(self.blocks[index]):
            raise ModelError("groups must exactly cover the replaced block")
        rest = [b for i, b in enumerate(self.blocks) if i != index]
        return Partition.from_blocks(rest + [tuple(g) for g in groups])

    def named(self, names: Sequence[str]) -> Tuple[Tuple[str, ...], ...]:
        return tuple(tuple(names[s] for s in block) for block in self.blocks)


__all__ = ["Partition"]
