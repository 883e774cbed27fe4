# PURPOSE: Canonical text form of exact rationals ("p/q" or "p").
# CONTEXT: Used by the `.ma` parser/printer, report serialisation and chi(r) tokens.

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """
    Parse an integer or `p/q` literal into a Fraction.

    raises:
    - ValueError – on anything else (decimals and exponents are rejected) or a zero denominator.
    """
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(q: Union[Fraction, int]) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
