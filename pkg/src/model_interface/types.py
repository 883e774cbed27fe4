"""
Action alphabet and mode enums.

PURPOSE:
- Act^chi = internal tau, named external actions, and synthetic chi(rate) actions.
- A total, deterministic action order (tau, externals by name, chi by rate) used by
  every loop that iterates over actions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Tuple, Union

from src.constants.reserved import CHI_PREFIX, CHI_SUFFIX, TAU_TOKEN
from src.errors import ModelError
from src.utils.rationals import format_rational


@dataclass(frozen=True)
class Tau:
    def __str__(self) -> str:
        return TAU_TOKEN


@dataclass(frozen=True)
class External:
    name: str

    def __post_init__(self):
        if not self.name or self.name == TAU_TOKEN or self.name.startswith(CHI_PREFIX):
            raise ModelError(f"reserved or empty action name: {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Chi:
    """chi(r): 'stable with exit rate r'; only ever produced by the MA→PA mapping."""

    rate: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rate", Fraction(self.rate))
        if self.rate < 0:
            raise ModelError(f"negative chi rate: {self.rate}")

    def __str__(self) -> str:
        return f"{CHI_PREFIX}{format_rational(self.rate)}{CHI_SUFFIX}"


Action = Union[Tau, External, Chi]

TAU = Tau()


def action_key(action: Action) -> Tuple[int, str, Fraction]:
    """Sort key: tau first, then externals by name, then chi by rate."""
    if isinstance(action, Tau):
        return (0, "", Fraction(0))
    if isinstance(action, External):
        return (1, action.name, Fraction(0))
    return (2, "", action.rate)


class ChiMode(str, Enum):
    WITH_CHI_ZERO = "with_chi_zero"
    LEGACY_NO_CHI_ZERO = "legacy_no_chi_zero"

    @classmethod
    def from_flag(cls, chi_zero: bool) -> "ChiMode":
        return cls.WITH_CHI_ZERO if chi_zero else cls.LEGACY_NO_CHI_ZERO


class Semantics(str, Enum):
    WEAK = "weak"
    NAIVE = "naive"
