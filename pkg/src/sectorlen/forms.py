"""MacWilliams identities, Kravchuk polynomials and shadow inequalities as
evaluatable linear forms over sector vectors.

Coefficients are kept as exact rationals; floats appear only when a form is
evaluated on a numeric sector vector.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .pauli import DensityMatrix, ValidationError, partial_trace_raw
from .sectors import SectorVector

EQUALITY_ZERO = "equality_zero"
GEQ_ZERO = "geq_zero"


@dataclass(frozen=True)
class LinearForm:
    """A named linear form c_0 A_0 + ... + c_n A_n, asserted = 0 or >= 0."""

    name: str
    n: int
    coeffs: tuple[Fraction, ...]
    kind: str

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValidationError("coefficient count must be n + 1")
        if self.kind not in (EQUALITY_ZERO, GEQ_ZERO):
            raise ValidationError(f"unknown form kind {self.kind!r}")

    def value(self, a: Sequence[float] | SectorVector) -> float:
        if isinstance(a, SectorVector):
            a = a.a
        if len(a) != self.n + 1:
            raise ValidationError("sector vector length mismatch")
        return float(sum(float(c) * float(x) for c, x in zip(self.coeffs, a)))

    def value_exact(self, a: Sequence[Fraction]) -> Fraction:
        return sum(
            (c * Fraction(x) for c, x in zip(self.coeffs, a)), start=Fraction(0)
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "kind": self.kind,
            "num": [c.numerator for c in self.coeffs],
            "den": [c.denominator for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, d: dict) -> "LinearForm":
        coeffs = tuple(
            Fraction(int(p), int(q)) for p, q in zip(d["num"], d["den"])
        )
        return cls(d["name"], int(d["n"]), coeffs, d["kind"])


def kravchuk(k: int, r: int, n: int) -> int:
    """K_k(r; n) = sum_j (-1)^j 3^(k-j) C(r, j) C(n-r, k-j), exact integer."""
    if not (0 <= k <= n and 0 <= r <= n):
        raise ValidationError(f"kravchuk arguments k={k}, r={r} outside 0..{n}")
    return sum(
        (-1) ** j * 3 ** (k - j) * comb(r, j) * comb(n - r, k - j)
        for j in range(k + 1)
    )


def macwilliams_form(m: int, n: int) -> LinearForm:
    """The pure-state identity M_m = 0 as a linear form over A_0..A_n."""
    if not 0 <= m <= n:
        raise ValidationError(f"m={m} outside 0..{n}")
    coeffs = tuple(
        Fraction(2**m * comb(n - j, m) - 2 ** (n - m) * comb(n - j, n - m))
        for j in range(n + 1)
    )
    return LinearForm(f"M_{m}", n, coeffs, EQUALITY_ZERO)


def macwilliams_residual(v: SectorVector, m: int) -> float:
    return macwilliams_form(m, v.n).value(v)


def shadow_form(k: int, n: int) -> LinearForm:
    """The all-states inequality B_k >= 0 with exact Kravchuk coefficients."""
    if not 0 <= k <= n:
        raise ValidationError(f"k={k} outside 0..{n}")
    coeffs = tuple(
        Fraction((-1) ** r * kravchuk(k, r, n), 2**n) for r in range(n + 1)
    )
    return LinearForm(f"B_{k}", n, coeffs, GEQ_ZERO)


def shadow_value(v: SectorVector, k: int) -> float:
    return shadow_form(k, v.n).value(v)


def shadow_value_matrix(rho: DensityMatrix, k: int) -> float:
    """Independent matrix-level oracle for B_k (n <= 4 only):
    sum over |T| = k and all S of (-1)^{|S cap T-bar|} Tr(rho_S^2)."""
    n = rho.n
    if n > 4:
        raise ValidationError("matrix oracle implemented for n <= 4 only")
    if not 0 <= k <= n:
        raise ValidationError(f"k={k} outside 0..{n}")
    qubits = range(n)
    purity: dict[frozenset, float] = {frozenset(): 1.0}
    for m in range(1, n + 1):
        for kept in itertools.combinations(qubits, m):
            r = partial_trace_raw(rho.mat, n, kept)
            purity[frozenset(kept)] = float(np.real(np.einsum("ij,ji->", r, r)))
    total = 0.0
    for t_set in itertools.combinations(qubits, k):
        t_bar = frozenset(qubits) - frozenset(t_set)
        for m in range(n + 1):
            for s_set in itertools.combinations(qubits, m):
                sign = (-1) ** len(frozenset(s_set) & t_bar)
                total += sign * purity[frozenset(s_set)]
    return total


def macwilliams_rank(n: int) -> int:
    """Exact rank of the full set {M_0, ..., M_n} over the rationals."""
    rows = [list(macwilliams_form(m, n).coeffs) for m in range(n + 1)]
    rank = 0
    col = 0
    nrows = len(rows)
    while col <= n and rank < nrows:
        piv = next((r for r in range(rank, nrows) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        for r in range(nrows):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / lead
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank
