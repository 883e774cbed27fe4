"""
Exact phase-one simplex.

PURPOSE:
- Decide feasibility of {x ≥ 0 | A x = b} over the rationals.
- Used for convex-hull membership (src.model_impl.polytope.contains).

NOTE:
- Artificial variables start as the basis; the objective is the sum of artificials.
  Bland's rule (smallest entering index, smallest leaving basis index on ties)
  guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

_ZERO = Fraction(0)


def _pivot(tableau: List[List[Fraction]], cost: List[Fraction], row: int, col: int) -> List[Fraction]:
    lead = tableau[row][col]
    tableau[row] = [v / lead for v in tableau[row]]
    pivot_row = tableau[row]
    for r, current in enumerate(tableau):
        if r != row:
            factor = current[col]
            if factor:
                tableau[r] = [a - factor * b for a, b in zip(current, pivot_row)]
    factor = cost[col]
    return [c - factor * v for c, v in zip(cost, pivot_row[:-1])]


def is_feasible(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> bool:
    """
    True iff some x ≥ 0 satisfies rows · x = rhs exactly.

    parameters:
    - rows: m constraint rows of equal length n
    - rhs: m right-hand sides
    """
    m = len(rows)
    if m == 0:
        return True
    n = len(rows[0])

    tableau: List[List[Fraction]] = []
    for i in range(m):
        row = [Fraction(v) for v in rows[i]]
        b = Fraction(rhs[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
        artificial = [_ZERO] * m
        artificial[i] = Fraction(1)
        tableau.append(row + artificial + [b])

    basis = [n + i for i in range(m)]
    # Reduced costs of the phase-one objective with the artificial basis.
    cost = [-sum((tableau[i][j] for i in range(m)), _ZERO) for j in range(n)] + [_ZERO] * m

    while True:
        enter = next((j for j, c in enumerate(cost) if c < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # Phase one is bounded below by 0; an unbounded ray cannot occur.
            break
        cost = _pivot(tableau, cost, leave, enter)
        basis[leave] = enter

    return all(tableau[i][-1] == 0 for i in range(m) if basis[i] >= n)


__all__ = ["is_feasible"]
