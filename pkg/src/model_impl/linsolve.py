# PURPOSE: Exact Gauss-Jordan elimination over Fractions.
# CONTEXT: Absorption probabilities of scheduler-induced chains (weak_reach) are the
#          solution of (I - Q) X = R; no floating point is ever involved.

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from src.errors import MaBisimError


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """
    Solve A X = B for square nonsingular A with k right-hand sides.

    parameters:
    - matrix: n×n rows of A
    - rhs: n×k rows of B

    returns:
    - n×k rows of X

    raises:
    - MaBisimError – if A is singular.
    """
    n = len(matrix)
    width = len(rhs[0]) if n else 0
    rows = [[Fraction(v) for v in matrix[i]] + [Fraction(v) for v in rhs[i]] for i in range(n)]

    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise MaBisimError("singular linear system")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        if lead != 1:
            rows[col] = [v / lead for v in rows[col]]
        for r in range(n):
            if r != col:
                factor = rows[r][col]
                if factor:
                    rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]

    return [row[n:n + width] for row in rows]
