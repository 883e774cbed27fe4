"""
Exact subdistributions over dense state indices.

PURPOSE:
- SubDistribution: immutable map state index → positive Fraction with total mass ≤ 1.
- The algebra used throughout the engine: ⊕ (dist_sum), scaling, μ−s, Δ_s, the
  elimination substitution μ_{s→ν}, and block/vector views for the polytope layer.

NOTE:
- Only strictly positive masses are stored, sorted by state index, so structural
  equality is equality of distributions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from src.errors import MassOverflow, ModelError, NotInSupport

Rational = Union[Fraction, int]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SubDistribution:
    __slots__ = ("_items", "_mass")

    def __init__(self, entries: Union[Mapping[int, Rational], Iterable[Tuple[int, Rational]]] = ()):
        pairs = entries.items() if isinstance(entries, Mapping) else entries
        acc: Dict[int, Fraction] = {}
        for state, q in pairs:
            q = Fraction(q)
            if q < 0:
                raise ModelError(f"negative mass {q} on state {state}")
            if q:
                acc[int(state)] = acc.get(int(state), _ZERO) + q
        mass = sum(acc.values(), _ZERO)
        if mass > 1:
            raise MassOverflow(f"total mass {mass} exceeds 1")
        self._items: Tuple[Tuple[int, Fraction], ...] = tuple(sorted(acc.items()))
        self._mass = mass

    # -------------------- read access -------------------- #

    def __getitem__(self, state: int) -> Fraction:
        for s, q in self._items:
            if s == state:
                return q
        return _ZERO

    def get(self, state: int) -> Fraction:
        return self[state]

    def items(self) -> Tuple[Tuple[int, Fraction], ...]:
        return self._items

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(s for s, _ in self._items)

    @property
    def mass(self) -> Fraction:
        return self._mass

    @property
    def is_full(self) -> bool:
        return self._mass == _ONE

    def is_dirac(self, state: Optional[int] = None) -> bool:
        if len(self._items) != 1 or self._items[0][1] != _ONE:
            return False
        return state is None or self._items[0][0] == state

    def __iter__(self) -> Iterator[int]:
        return iter(self.support)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __contains__(self, state: object) -> bool:
        return any(s == state for s, _ in self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubDistribution):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        inner = ", ".join(f"{s}: {q}" for s, q in self._items)
        return f"SubDistribution({{{inner}}})"

    # -------------------- re-indexing -------------------- #

    def remap(self, mapping: Mapping[int, int]) -> "SubDistribution":
        """Rename states through `mapping`; states mapped to the same index are merged."""
        return SubDistribution([(mapping[s], q) for s, q in self._items])

    def shift(self, offset: int) -> "SubDistribution":
        return SubDistribution([(s + offset, q) for s, q in self._items])


EMPTY = SubDistribution()


def dirac(state: int) -> SubDistribution:
    return SubDistribution({state: 1})


def dist_sum(a: SubDistribution, b: SubDistribution) -> SubDistribution:
    """
    μ ⊕ μ'.

    raises:
    - MassOverflow – if |a| + |b| > 1.
    """
    if a.mass + b.mass > 1:
        raise MassOverflow(f"|a| + |b| = {a.mass + b.mass} exceeds 1")
    return SubDistribution(list(a.items()) + list(b.items()))


def dist_scale(c: Rational, mu: SubDistribution) -> SubDistribution:
    """
    c·μ for c ≥ 0.

    raises:
    - MassOverflow – if c·|μ| > 1.
    - ModelError – if c < 0.
    """
    c = Fraction(c)
    if c < 0:
        raise ModelError(f"negative scale factor {c}")
    if c * mu.mass > 1:
        raise MassOverflow(f"c·|μ| = {c * mu.mass} exceeds 1")
    return SubDistribution([(s, c * q) for s, q in mu.items()])


def dist_minus(mu: SubDistribution, state: int) -> SubDistribution:
    """
    μ − s: drop the mass on `state`.

    raises:
    - NotInSupport – if μ(state) = 0.
    """
    if state not in mu:
        raise NotInSupport(f"state {state} is not in the support of {mu!r}")
    return SubDistribution([(s, q) for s, q in mu.items() if s != state])


def substitute(mu: SubDistribution, state: int, nu: SubDistribution) -> SubDistribution:
    """μ_{s→ν} = (μ − s) ⊕ μ(s)·ν; μ unchanged when s ∉ Supp(μ)."""
    weight = mu[state]
    if not weight:
        return mu
    rest = dist_minus(mu, state)
    return SubDistribution(list(rest.items()) + [(t, weight * q) for t, q in nu.items()])


def block_masses(mu: SubDistribution, blocks: Sequence[Sequence[int]]) -> Tuple[Fraction, ...]:
    """μ(C) for every block C, in block order."""
    return tuple(sum((mu[s] for s in block), _ZERO) for block in blocks)


def as_vector(mu: SubDistribution, size: int) -> Tuple[Fraction, ...]:
    vec = [_ZERO] * size
    for s, q in mu.items():
        vec[s] = q
    return tuple(vec)


def from_vector(vec: Sequence[Rational]) -> SubDistribution:
    return SubDistribution([(i, q) for i, q in enumerate(vec) if q])


__all__ = [
    "Rational",
    "SubDistribution",
    "EMPTY",
    "dirac",
    "dist_sum",
    "dist_scale",
    "dist_minus",
    "substitute",
    "block_masses",
    "as_vector",
    "from_vector",
]
