"""Two-phase primal simplex over exact rationals.

Small dense problems only (tens of rows/columns); every pivot uses
Fraction arithmetic, so optima and dual values are exact. Bland's rule
prevents cycling.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

LE, GE, EQ = "<=", ">=", "=="


@dataclass(frozen=True)
class Row:
    """One constraint: coeffs . x  <sense>  rhs, over x >= 0."""

    coeffs: tuple[Fraction, ...]
    sense: str
    rhs: Fraction


@dataclass(frozen=True)
class SimplexResult:
    status: str
    value: Fraction | None
    x: tuple[Fraction, ...] | None
    # dual value per input row, oriented for the original senses:
    # y_i >= 0 for <=, y_i <= 0 for >=, free for ==, and for a maximization
    # problem: sum_i y_i a_ij >= c_j for all j, value = sum_i y_i b_i.
    duals: tuple[Fraction, ...] | None


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = tab[r][c]
    tab[r] = [v / piv for v in tab[r]]
    for i, row in enumerate(tab):
        if i != r and row[c] != 0:
            f = row[c]
            tab[i] = [a - f * b for a, b in zip(row, tab[r])]
    basis[r] = c


def _optimize(
    tab: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    allowed: Sequence[bool],
) -> str:
    """Maximize cost.x in place; last tableau column is the rhs."""
    m = len(tab)
    ncols = len(tab[0]) - 1
    # reduced-cost row z_j = c_B B^-1 A_j - c_j, maintained by pivoting
    z = [Fraction(0)] * (ncols + 1)
    for j in range(ncols + 1):
        z[j] = sum(cost[basis[i]] * tab[i][j] for i in range(m)) - (
            cost[j] if j < ncols else Fraction(0)
        )
    while True:
        enter = next(
            (j for j in range(ncols) if allowed[j] and z[j] < 0), None
        )
        if enter is None:
            return OPTIMAL
        # ratio test, Bland tie-break on basis index
        best: tuple[Fraction, int, int] | None = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                key = (ratio, basis[i])
                if best is None or key < (best[0], best[1]):
                    best = (ratio, basis[i], i)
        if best is None:
            return UNBOUNDED
        leave = best[2]
        _pivot(tab, basis, leave, enter)
        piv = z[enter]
        if piv != 0:
            z = [a - piv * b for a, b in zip(z, tab[leave])]


def solve(c: Sequence[Fraction], rows: Sequence[Row]) -> SimplexResult:
    """Maximize c.x subject to the rows and x >= 0."""
    nvars = len(c)
    c = [Fraction(v) for v in c]
    m = len(rows)

    # normalize rhs >= 0; remember row sign for dual orientation
    norm: list[tuple[tuple[Fraction, ...], str, Fraction]] = []
    flipped = [False] * m
    for i, row in enumerate(rows):
        coeffs = tuple(Fraction(v) for v in row.coeffs)
        if len(coeffs) != nvars:
            raise ValueError("row length mismatch")
        rhs = Fraction(row.rhs)
        sense = row.sense
        if rhs < 0:
            coeffs = tuple(-v for v in coeffs)
            rhs = -rhs
            sense = {LE: GE, GE: LE, EQ: EQ}[sense]
            flipped[i] = True
        norm.append((coeffs, sense, rhs))

    # columns: structural | slack/surplus | artificial; record layout
    slack_col: dict[int, int] = {}
    art_col: dict[int, int] = {}
    ncols = nvars
    for i, (_, sense, _) in enumerate(norm):
        if sense in (LE, GE):
            slack_col[i] = ncols
            ncols += 1
    for i, (_, sense, _) in enumerate(norm):
        if sense in (GE, EQ):
            art_col[i] = ncols
            ncols += 1

    tab: list[list[Fraction]] = []
    basis: list[int] = []
    for i, (coeffs, sense, rhs) in enumerate(norm):
        row = [Fraction(0)] * (ncols + 1)
        row[:nvars] = list(coeffs)
        row[-1] = rhs
        if sense == LE:
            row[slack_col[i]] = Fraction(1)
            basis.append(slack_col[i])
        elif sense == GE:
            row[slack_col[i]] = Fraction(-1)
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        tab.append(row)

    art_set = set(art_col.values())
    if art_set:
        cost1 = [Fraction(0)] * ncols
        for j in art_set:
            cost1[j] = Fraction(-1)
        allowed1 = [True] * ncols
        status = _optimize(tab, basis, cost1, allowed1)
        assert status == OPTIMAL  # phase 1 is always bounded
        if any(basis[i] in art_set and tab[i][-1] != 0 for i in range(m)):
            return SimplexResult(INFEASIBLE, None, None, None)

    cost2 = [Fraction(0)] * ncols
    cost2[:nvars] = c
    allowed2 = [j not in art_set for j in range(ncols)]
    status = _optimize(tab, basis, cost2, allowed2)
    if status == UNBOUNDED:
        return SimplexResult(UNBOUNDED, None, None, None)

    x = [Fraction(0)] * nvars
    for i, b in enumerate(basis):
        if b < nvars:
            x[b] = tab[i][-1]
    value = sum(ci * xi for ci, xi in zip(c, x))

    # duals from the final reduced costs of each row's identity column:
    # z_j = c_B B^-1 A_j - c_j, and the slack/artificial column of row i
    # carries +/- e_i with zero cost.
    z = [Fraction(0)] * ncols
    for j in range(ncols):
        z[j] = sum(cost2[basis[i]] * tab[i][j] for i in range(m)) - cost2[j]
    duals = [Fraction(0)] * m
    for i, (_, sense, _) in enumerate(norm):
        if i in art_col:
            y = z[art_col[i]]
        else:  # <= row: slack column is +e_i
            y = z[slack_col[i]]
        duals[i] = -y if flipped[i] else y
    return SimplexResult(OPTIMAL, value, tuple(x), tuple(duals))
