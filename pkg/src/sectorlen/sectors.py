"""Sector lengths, sector entropies, mutual linear entropies and the
translations between the three coordinate systems.

Two independent computation routes exist for sector lengths:

* ``pauli``  -- sum of squared Bloch coefficients, grouped by weight;
* ``purity`` -- inclusion-exclusion over the purities of all reduced states.

They agree to 1e-10 wherever both run; the purity route is canonical for
n > 7 where enumerating all 4^n coefficients becomes wasteful.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .pauli import (
    BlochCoefficients,
    DensityMatrix,
    ValidationError,
    bloch_tensor,
    partial_trace_raw,
    weight_tensor,
)

MAX_QUBITS = 10
PAULI_ROUTE_MAX = 7


@dataclass(frozen=True)
class SectorVector:
    """(A_0, ..., A_n); A_0 = 1 and all entries nonnegative up to tolerance."""

    n: int
    a: tuple[float, ...]

    def __post_init__(self):
        if len(self.a) != self.n + 1:
            raise ValidationError("sector vector has wrong length")
        if abs(self.a[0] - 1.0) > 1e-9:
            raise ValidationError(f"A_0 = {self.a[0]}, expected 1")
        if min(self.a) < -1e-9:
            raise ValidationError("negative sector length")

    def __getitem__(self, k: int) -> float:
        return self.a[k]

    def body(self) -> tuple[float, ...]:
        """(A_1, ..., A_n) without the normalization entry."""
        return self.a[1:]

    def total(self) -> float:
        return float(sum(self.a))

    def to_dict(self) -> dict:
        return {"n": self.n, "A": list(self.a)}

    @classmethod
    def from_dict(cls, d: dict) -> "SectorVector":
        return cls(int(d["n"]), tuple(float(x) for x in d["A"]))


@dataclass(frozen=True)
class EntropyVector:
    """Sector entropies (S_L^(1), ..., S_L^(n))."""

    n: int
    s: tuple[float, ...]

    def __post_init__(self):
        if len(self.s) != self.n:
            raise ValidationError("entropy vector has wrong length")

    def __getitem__(self, k: int) -> float:
        if not 1 <= k <= self.n:
            raise ValidationError(f"sector index {k} outside 1..{self.n}")
        return self.s[k - 1]


@dataclass(frozen=True)
class MutualVector:
    """Mutual linear entropies (I_L^(1), ..., I_L^(n))."""

    n: int
    i: tuple[float, ...]

    def __post_init__(self):
        if len(self.i) != self.n:
            raise ValidationError("mutual vector has wrong length")

    def __getitem__(self, k: int) -> float:
        if not 1 <= k <= self.n:
            raise ValidationError(f"sector index {k} outside 1..{self.n}")
        return self.i[k - 1]


def sectors_from_bloch(bc: BlochCoefficients) -> SectorVector:
    w = weight_tensor(bc.n)
    sq = bc.tensor**2
    a = [float(sq[w == k].sum()) for k in range(bc.n + 1)]
    return SectorVector(bc.n, tuple(a))


def _sectors_pauli(mat: np.ndarray, n: int) -> np.ndarray:
    c = bloch_tensor(mat, n).real
    w = weight_tensor(n)
    sq = c**2
    return np.array([sq[w == k].sum() for k in range(n + 1)])


def subset_purities(mat: np.ndarray, n: int) -> dict[frozenset, float]:
    """Tr(rho_S^2) for every nonempty subset S of 0-based qubits."""
    out: dict[frozenset, float] = {}
    for m in range(1, n + 1):
        for kept in itertools.combinations(range(n), m):
            r = partial_trace_raw(mat, n, kept)
            out[frozenset(kept)] = float(np.real(np.einsum("ij,ji->", r, r)))
    return out


def _sectors_from_size_purities(q: Sequence[float], n: int) -> np.ndarray:
    # q[m] = sum over |S| = m of Tr(rho_S^2); triangular inversion
    a = np.zeros(n + 1)
    a[0] = 1.0
    for m in range(1, n + 1):
        a[m] = (2**m) * q[m] - sum(comb(n - k, m - k) * a[k] for k in range(m))
    return a


def _sectors_purity(mat: np.ndarray, n: int) -> np.ndarray:
    q = np.zeros(n + 1)
    q[0] = 1.0
    for kept, val in subset_purities(mat, n).items():
        q[len(kept)] += val
    return _sectors_from_size_purities(q, n)


def sector_lengths(rho: DensityMatrix, method: str = "auto") -> SectorVector:
    """Sector vector (A_0, ..., A_n) of a state."""
    n = rho.n
    if n > MAX_QUBITS:
        raise ValidationError(f"n={n} exceeds supported maximum {MAX_QUBITS}")
    if method == "auto":
        method = "pauli" if n <= PAULI_ROUTE_MAX else "purity"
    if method == "pauli":
        a = _sectors_pauli(rho.mat, n)
    elif method == "purity":
        a = _sectors_purity(rho.mat, n)
    elif method == "cross":
        a = _sectors_pauli(rho.mat, n)
        b = _sectors_purity(rho.mat, n)
        if np.max(np.abs(a - b)) > 1e-10:
            raise ValidationError("sector-length routes disagree beyond 1e-10")
    else:
        raise ValidationError(f"unknown method {method!r}")
    return SectorVector(n, tuple(np.maximum(a, 0.0)))


def sector_lengths_batch(mats: np.ndarray, n: int) -> np.ndarray:
    """(B, n+1) sector vectors for a batch of 2^n x 2^n states (purity route)."""
    mats = np.asarray(mats, dtype=complex)
    b = mats.shape[0]
    t = mats.reshape((b,) + (2,) * (2 * n))
    q = np.zeros((b, n + 1))
    q[:, 0] = 1.0
    for m in range(1, n + 1):
        for kept in itertools.combinations(range(n), m):
            row = list(range(1, n + 1))
            col = [n + k + 1 if k in kept else k + 1 for k in range(n)]
            out = [0] + [k + 1 for k in kept] + [n + k + 1 for k in kept]
            r = np.einsum(t, [0] + row + col, out)
            d = 2**m
            r = r.reshape(b, d, d)
            q[:, m] += np.real(np.einsum("nij,nji->n", r, r))
    a = np.zeros((b, n + 1))
    a[:, 0] = 1.0
    for m in range(1, n + 1):
        a[:, m] = (2**m) * q[:, m] - sum(
            comb(n - k, m - k) * a[:, k] for k in range(m)
        )
    return np.maximum(a, 0.0)


def sector_entropies(rho: DensityMatrix) -> EntropyVector:
    """S_L^(k) = sum over all k-party reductions of 2[1 - Tr(rho_K^2)]."""
    n = rho.n
    q = np.zeros(n + 1)
    for kept, val in subset_purities(rho.mat, n).items():
        q[len(kept)] += val
    s = tuple(2.0 * (comb(n, k) - q[k]) for k in range(1, n + 1))
    return EntropyVector(n, s)


def sectors_to_entropies(v: SectorVector) -> EntropyVector:
    """Closed-form map S_L^(k) = 2^(1-k)[C(n,k) 2^k - sum_j C(n-j,k-j) A_j]."""
    n = v.n
    s = []
    for k in range(1, n + 1):
        tot = comb(n, k) * 2**k - sum(comb(n - j, k - j) * v.a[j] for j in range(k + 1))
        s.append(tot / 2 ** (k - 1))
    return EntropyVector(n, tuple(s))


def entropies_to_sectors(e: EntropyVector) -> SectorVector:
    """Inverse map A_k = C(n,k) - sum_j (-1)^(k-j) 2^(j-1) C(n-j,k-j) S_L^(j)."""
    n = e.n
    a = [1.0]
    for k in range(1, n + 1):
        val = comb(n, k) - sum(
            (-1) ** (k - j) * 2 ** (j - 1) * comb(n - j, k - j) * e.s[j - 1]
            for j in range(1, k + 1)
        )
        a.append(val)
    return SectorVector(n, tuple(a))


def mutual_entropies(e: EntropyVector) -> MutualVector:
    """I_L^(k) = sum_j (-1)^(j-1) C(n-j, k-j) S_L^(j)."""
    n = e.n
    i = []
    for k in range(1, n + 1):
        i.append(
            sum((-1) ** (j - 1) * comb(n - j, k - j) * e.s[j - 1] for j in range(1, k + 1))
        )
    return MutualVector(n, tuple(i))


def mutual_to_entropies(mv: MutualVector) -> EntropyVector:
    """Inverse of :func:`mutual_entropies` (triangular back-substitution)."""
    n = mv.n
    s = [0.0] * (n + 1)
    for k in range(1, n + 1):
        rest = sum(
            (-1) ** (j - 1) * comb(n - j, k - j) * s[j] for j in range(1, k)
        )
        sign = (-1) ** (k - 1)
        s[k] = (mv.i[k - 1] - rest) * sign
    return EntropyVector(n, tuple(s[1:]))


def pair_sector_sum(rho: DensityMatrix, pivot: int) -> float:
    """Sum over j != pivot of A_2 of the two-qubit reduction {pivot, j}."""
    n = rho.n
    if n < 2:
        raise ValidationError("pair_sector_sum requires n >= 2")
    if not 1 <= pivot <= n:
        raise ValidationError(f"pivot {pivot} outside 1..{n}")
    total = 0.0
    for j in range(1, n + 1):
        if j == pivot:
            continue
        r = partial_trace_raw(rho.mat, n, tuple(sorted((pivot - 1, j - 1))))
        total += _sectors_pauli(r, 2)[2]
    return total
