"""
Exact convex sets of distribution vectors (V-representation only).

PURPOSE:
- hull_reduce: keep only the extreme points of a finite point set.
- contains / set_equal: LP-based hull membership and equality.
- restrict_zero: intersection with coordinate hyperplanes x_i = 0.
- quotient_project: block sums modulo a partition.

NOTE:
- All coordinates are nonnegative, so x_i = 0 on a convex combination iff it holds on
  every positively weighted generator: restriction is generator filtering, exactly.
- Restriction and projection do not commute; callers restrict first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import AbstractSet, Iterable, List, Optional, Sequence, Tuple

from src.errors import DimensionMismatch
from src.model_impl.simplex import is_feasible
from src.model_interface.partition import Partition

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class ConvexSet:
    """conv(generators) in ℚ^dimension; an empty generator list is the empty set."""

    dimension: int
    generators: Tuple[Vector, ...] = ()

    def __post_init__(self):
        gens = tuple(tuple(Fraction(x) for x in g) for g in self.generators)
        if any(len(g) != self.dimension for g in gens):
            raise DimensionMismatch(f"generator of wrong dimension for a {self.dimension}-dimensional set")
        object.__setattr__(self, "generators", gens)

    @property
    def is_empty(self) -> bool:
        return not self.generators

    def __len__(self) -> int:
        return len(self.generators)


def _dimension_of(points: Sequence[Sequence[Fraction]], dimension: Optional[int]) -> int:
    dims = {len(p) for p in points}
    if dimension is not None:
        dims.add(dimension)
    if len(dims) > 1:
        raise DimensionMismatch(f"points of mixed dimensions {sorted(dims)}")
    return dims.pop() if dims else 0


def _in_hull(generators: Sequence[Vector], v: Vector) -> bool:
    if not generators:
        return False
    if v in generators:
        return True
    dim = len(v)
    rows = [[g[d] for g in generators] for d in range(dim)]
    rows.append([Fraction(1)] * len(generators))
    return is_feasible(rows, list(v) + [Fraction(1)])


def extreme_indices(points: Sequence[Sequence[Fraction]]) -> List[int]:
    """
    Indices (first occurrences) of the extreme points of conv(points).

    notes:
    - A point is dropped when the LP finds it inside the hull of the points still kept
      or not yet examined; removing such a point never changes the hull.
    """
    vectors = [tuple(Fraction(x) for x in p) for p in points]
    _dimension_of(vectors, None)
    unique: List[int] = []
    seen = set()
    for i, v in enumerate(vectors):
        if v not in seen:
            seen.add(v)
            unique.append(i)
    kept = list(unique)
    for i in unique:
        others = [vectors[j] for j in kept if j != i]
        if others and _in_hull(others, vectors[i]):
            kept.remove(i)
    return kept


def hull_reduce(points: Iterable[Sequence[Fraction]], dimension: Optional[int] = None) -> ConvexSet:
    """
    Canonical generator list: exactly the extreme points of conv(points).

    raises:
    - DimensionMismatch – if points (or `dimension`) disagree on the dimension.
    """
    points = [tuple(Fraction(x) for x in p) for p in points]
    dim = _dimension_of(points, dimension)
    return ConvexSet(dim, tuple(points[i] for i in extreme_indices(points)))


def contains(c: ConvexSet, v: Sequence[Fraction]) -> bool:
    """True iff v = Σ λ_i g_i with λ ≥ 0, Σ λ_i = 1 (exact LP)."""
    if len(v) != c.dimension:
        raise DimensionMismatch(f"vector of dimension {len(v)} against a {c.dimension}-dimensional set")
    return _in_hull(c.generators, tuple(Fraction(x) for x in v))


def set_equal(a: ConvexSet, b: ConvexSet) -> bool:
    """Mutual inclusion; two empty sets are equal whatever their dimensions."""
    if a.is_empty or b.is_empty:
        return a.is_empty and b.is_empty
    if a.dimension != b.dimension:
        raise DimensionMismatch(f"comparing sets of dimension {a.dimension} and {b.dimension}")
    if set(a.generators) == set(b.generators):
        return True
    return all(_in_hull(b.generators, g) for g in a.generators) and all(
        _in_hull(a.generators, g) for g in b.generators
    )


def restrict_zero(c: ConvexSet, zero_coords: AbstractSet[int]) -> ConvexSet:
    """c ∩ {x | x_i = 0 for i in zero_coords}: keep the generators vanishing there."""
    if not zero_coords:
        return c
    return ConvexSet(c.dimension, tuple(g for g in c.generators if all(g[i] == 0 for i in zero_coords)))


def quotient_project(c: ConvexSet, part: Partition) -> ConvexSet:
    """Map every generator to its block sums, then hull-reduce."""
    projected = [tuple(sum((g[s] for s in block), Fraction(0)) for block in part.blocks) for g in c.generators]
    return hull_reduce(projected, dimension=len(part))


__all__ = [
    "Vector",
    "ConvexSet",
    "extreme_indices",
    "hull_reduce",
    "contains",
    "set_equal",
    "restrict_zero",
    "quotient_project",
]
