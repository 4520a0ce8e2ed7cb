"""Sector-length entanglement criteria, the product composition rule and
the two-body marginal representability condition.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .pauli import DensityMatrix, ValidationError, partial_trace_raw
from .sectors import SectorVector, pair_sector_sum

DEFAULT_TOL = 1e-9

# one-sided witnesses: exceeding the threshold certifies the property
SEPARABLE_A2_MAX = 1.0  # n = 2, all separable states
BISEP_A3_MAX = {3: 3.0, 4: 7.0}  # biseparable bound per qubit count


def compose_product(va: SectorVector, vb: SectorVector) -> SectorVector:
    """Sector vector of rho_A x rho_B: the convolution of the factors."""
    n = va.n + vb.n
    out = [0.0] * (n + 1)
    for j, x in enumerate(va.a):
        for k, y in enumerate(vb.a):
            out[j + k] += x * y
    return SectorVector(n, tuple(out))


@dataclass(frozen=True)
class DetectionResult:
    entangled: bool
    gme_detected: bool
    criterion_used: str
    threshold: float | None
    value: float | None
    note: str = ""


def detect(v: SectorVector, tol: float = DEFAULT_TOL) -> DetectionResult:
    """One-sided entanglement verdict from the sector vector alone."""
    n = v.n
    if n == 2:
        a2 = v[2]
        hit = a2 > SEPARABLE_A2_MAX + tol
        return DetectionResult(
            entangled=hit,
            gme_detected=hit,
            criterion_used="A_2 > 1 rules out separability",
            threshold=SEPARABLE_A2_MAX,
            value=a2,
        )
    if n in (3, 4):
        a3 = v[3]
        cap = BISEP_A3_MAX[n]
        hit = a3 > cap + tol
        note = (
            "A_4 carries no criterion: its biseparable and global maxima coincide"
            if n == 4
            else ""
        )
        return DetectionResult(
            entangled=hit,
            gme_detected=hit,
            criterion_used=f"A_3 > {cap:g} rules out biseparability",
            threshold=cap,
            value=a3,
            note=note,
        )
    raise ValidationError(f"no sector criterion implemented for n = {n}")


@dataclass(frozen=True)
class MarginalSpectra:
    """Eigenvalues of all one- and two-body marginals of a putative state."""

    n: int
    one_body: Mapping[int, tuple[float, ...]]
    two_body: Mapping[tuple[int, int], tuple[float, ...]]

    def __post_init__(self):
        for i, spec in self.one_body.items():
            _check_spectrum(f"one-body {i}", spec, 2)
        for pair, spec in self.two_body.items():
            _check_spectrum(f"two-body {pair}", spec, 4)

    @classmethod
    def from_state(cls, rho: DensityMatrix) -> "MarginalSpectra":
        n = rho.n
        one = {}
        two = {}
        for i in range(1, n + 1):
            r = partial_trace_raw(rho.mat, n, (i - 1,))
            one[i] = tuple(sorted(np.linalg.eigvalsh(r).real, reverse=True))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                r = partial_trace_raw(rho.mat, n, (i - 1, j - 1))
                two[(i, j)] = tuple(sorted(np.linalg.eigvalsh(r).real, reverse=True))
        return cls(n, one, two)

    @classmethod
    def from_dict(cls, d: dict) -> "MarginalSpectra":
        one = {int(k): tuple(map(float, v)) for k, v in d["one"].items()}
        two = {}
        for key, v in d["two"].items():
            i, j = (int(x) for x in key.split(","))
            two[(min(i, j), max(i, j))] = tuple(map(float, v))
        return cls(int(d["n"]), one, two)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "one": {str(i): list(v) for i, v in self.one_body.items()},
            "two": {f"{i},{j}": list(v) for (i, j), v in self.two_body.items()},
        }


def _check_spectrum(name: str, spec: tuple[float, ...], size: int) -> None:
    if len(spec) != size:
        raise ValidationError(f"{name} spectrum must have {size} entries")
    if abs(sum(spec) - 1.0) > 1e-10:
        raise ValidationError(f"{name} spectrum does not sum to 1")
    if min(spec) < -1e-10 or max(spec) > 1.0 + 1e-10:
        raise ValidationError(f"{name} spectrum entries outside [0, 1]")


@dataclass(frozen=True)
class RepresentabilityResult:
    passes: bool
    lhs: float
    rhs: float


def representability_check(spectra: MarginalSpectra, pivot: int) -> RepresentabilityResult:
    """Spectral necessary condition for the two-body marginals around one
    pivot qubit to originate from a common global state (n >= 4)."""
    n = spectra.n
    if n < 4:
        raise ValidationError("the spectral condition is proved for n >= 4")
    if pivot not in spectra.one_body:
        raise ValidationError(f"missing one-body spectrum for pivot {pivot}")
    lhs = 0.0
    rhs = 0.0
    for j in range(1, n + 1):
        if j == pivot:
            continue
        pair = (min(pivot, j), max(pivot, j))
        if pair not in spectra.two_body:
            raise ValidationError(f"missing two-body spectrum for pair {pair}")
        if j not in spectra.one_body:
            raise ValidationError(f"missing one-body spectrum for qubit {j}")
        lhs += 2.0 * sum(x * x for x in spectra.two_body[pair])
        rhs += sum(x * x for x in spectra.one_body[j])
    rhs += (n - 1) * sum(x * x for x in spectra.one_body[pivot])
    return RepresentabilityResult(lhs <= rhs + 1e-10, lhs, rhs)


@dataclass(frozen=True)
class PairSumResult:
    value: float
    bound: float
    passes: bool
    note: str = ""


def pair_sum_check(rho: DensityMatrix, pivot: int) -> PairSumResult:
    """Monogamy check: the pivot's summed two-body sectors stay below n - 1."""
    n = rho.n
    value = pair_sector_sum(rho, pivot)
    bound = float(n - 1)
    note = ""
    if n < 4:
        note = "bound proved for n >= 4; for n = 3 the cap A_2 <= 3 is stronger"
    return PairSumResult(value, bound, value <= bound + DEFAULT_TOL, note)
