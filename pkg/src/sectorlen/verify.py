"""Batched verification suites behind the `verify` CLI verb.

Each suite returns a list of check records (name, status, worst-case
slack, sample count, seed) suitable for JSON reporting; a suite passes
iff every record does.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import sssa
from .entangle import pair_sum_check
from .forms import (
    macwilliams_rank,
    macwilliams_residual,
    shadow_value,
    shadow_value_matrix,
)
from .pauli import DensityMatrix, ValidationError
from .sectors import (
    SectorVector,
    entropies_to_sectors,
    mutual_entropies,
    mutual_to_entropies,
    sector_lengths,
    sectors_to_entropies,
)
from .states import _complex_normals, fam_d, random_pure

SUITES = ("appendixA", "appendixB", "appendixC", "identities", "all")


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    worst: float
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def _check(name: str, passed: bool, worst: float, samples: int, seed: int) -> CheckResult:
    return CheckResult(name, "pass" if passed else "fail", float(worst), samples, seed)


def _random_pure_batch(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    vecs = _complex_normals(rng, (count, 2**n))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    return np.einsum("ni,nj->nij", vecs, vecs.conj())


def _random_mixed_batch(n: int, rank: int, count: int, rng: np.random.Generator) -> np.ndarray:
    g = _complex_normals(rng, (count, 2**n, rank))
    m = np.einsum("nir,njr->nij", g, g.conj())
    tr = np.einsum("nii->n", m).real
    return m / tr[:, None, None]


def suite_appendix_a(samples: int = 1000, seed: int = 41) -> list[CheckResult]:
    """Anticommuting-set structure plus the sampled uncertainty bounds."""
    out = [
        _check("set_structure_exact", sssa.anticommuting_sets_valid(), 0.0, 0, seed)
    ]
    rng = np.random.Generator(np.random.PCG64(seed))
    worst_set = -math.inf
    worst_match = 0.0
    worst_total = -math.inf
    for mat in _random_pure_batch(4, samples, rng):
        rho = DensityMatrix(mat, validate=False)
        sums = sssa.anticommuting_bound_check(rho)
        worst_set = max(worst_set, max(sums))
        worst_match = max(worst_match, abs(sum(sums) - pair_sum_check(rho, 1).value))
        worst_total = max(worst_total, sum(sums))
    out.append(_check("set_sums_le_1", worst_set <= 1.0 + 1e-9, worst_set, samples, seed))
    out.append(_check("total_equals_pair_sum", worst_match <= 1e-10, worst_match, samples, seed))
    out.append(_check("pair_sum_le_3_n4", worst_total <= 3.0 + 1e-9, worst_total, samples, seed))
    worst5 = -math.inf
    for mat in _random_pure_batch(5, samples, rng):
        rho = DensityMatrix(mat, validate=False)
        worst5 = max(worst5, pair_sum_check(rho, 1).value)
    out.append(_check("pair_sum_le_4_n5", worst5 <= 4.0 + 1e-9, worst5, samples, seed))
    return out


def suite_appendix_b(
    samples: int = 2000, product_samples: int = 100_000, seed: int = 43
) -> list[CheckResult]:
    """Choi-matrix construction, spectrum, symmetries, Breuer-Hall
    positivity on doubled products, and the sign of the overlap."""
    out = []
    choi = sssa.build_choi()
    neg = choi.negative_eigenvalues()
    out.append(
        _check(
            "single_negative_eigenvalue_-3/2",
            len(neg) == 1 and abs(neg[0] + 1.5) <= 1e-9,
            float(abs(neg[0] + 1.5)) if len(neg) else math.inf,
            0,
            seed,
        )
    )
    dev = float(np.max(np.abs(choi.eta_ta - sssa.reference_bloch_expansion())))
    out.append(_check("bloch_expansion_match", dev <= 1e-12, dev, 0, seed))

    sym = sssa.check_local_symmetries(choi)
    gate_worst = max(v for k, v in sym.items() if not k.startswith("rx"))
    out.append(_check("local_symmetries", gate_worst <= 1e-10, gate_worst, 0, seed))
    out.append(
        _check(
            "generic_rotation_breaks_choi_symmetry",
            sym["rx(0.3)_control_on_choi"] > 1e-3,
            sym["rx(0.3)_control_on_choi"],
            0,
            seed,
        )
    )

    rng = np.random.Generator(np.random.PCG64(seed))
    worst_rec = 0.0
    worst_overlap_match = 0.0
    for mat in _random_mixed_batch(3, 4, samples // 10, rng):
        rho = DensityMatrix(mat, validate=False)
        worst_rec = max(
            worst_rec,
            float(np.max(np.abs(choi.reconstruct(rho) - sssa.partial_inversion(rho)))),
        )
        worst_overlap_match = max(
            worst_overlap_match,
            abs(sssa.overlap(rho) - sssa.overlap_from_sectors(sector_lengths(rho))),
        )
    out.append(_check("choi_reconstruction", worst_rec <= 1e-10, worst_rec, samples // 10, seed))
    out.append(
        _check(
            "overlap_matrix_vs_sector_formula",
            worst_overlap_match <= 1e-10,
            worst_overlap_match,
            samples // 10,
            seed,
        )
    )

    best, count = sssa.random_product_scan(samples=product_samples, seed=seed)
    out.append(_check("product_scan_nonnegative", best >= -1e-9, best, count, seed))
    val, _ = sssa.minimize_product_overlap(seed=seed)
    out.append(_check("product_minimization_zero", val >= -1e-7, val, 12, seed))

    worst_bh = math.inf
    for mat in _random_mixed_batch(3, 2, 100, rng):
        bh = sssa.breuer_hall(np.kron(mat, mat))
        worst_bh = min(worst_bh, float(np.linalg.eigvalsh(bh)[0]))
    out.append(_check("breuer_hall_psd_on_products", worst_bh >= -1e-9, worst_bh, 100, seed))
    return out


def suite_appendix_c(samples: int = 1000, seed: int = 47) -> list[CheckResult]:
    """Projector-built functionals match the sector functionals up to one
    fitted positive scale."""
    out = []
    for name in sssa.PROJECTOR_PRESETS:
        fit = sssa.fit_projector_scale(name, samples=samples, seed=seed)
        out.append(
            _check(
                f"projector_{name}_scale",
                fit.scale > 0 and fit.residual <= 1e-8,
                fit.residual,
                samples,
                seed,
            )
        )
    return out


def suite_identities(seed: int = 53) -> list[CheckResult]:
    """MacWilliams residuals and ranks, shadow nonnegativity, the matrix
    oracle, and the coordinate round-trips."""
    out = []
    rng = np.random.Generator(np.random.PCG64(seed))

    worst_mw = 0.0
    count_mw = 0
    for n in range(2, 7):
        for mat in _random_pure_batch(n, 200, rng):
            v = sector_lengths(DensityMatrix(mat, validate=False))
            for m in range(n + 1):
                worst_mw = max(worst_mw, abs(macwilliams_residual(v, m)))
            count_mw += 1
    out.append(_check("macwilliams_residuals_pure", worst_mw <= 1e-8, worst_mw, count_mw, seed))

    ranks_ok = all(macwilliams_rank(n) == -(-n // 2) for n in range(2, 11))
    out.append(_check("macwilliams_rank", ranks_ok, 0.0, 9, seed))

    worst_shadow = math.inf
    count_sh = 0
    for n in range(2, 7):
        for mat in _random_mixed_batch(n, 2**n, 2000, rng):
            v = sector_lengths(DensityMatrix(mat, validate=False))
            for k in range(n + 1):
                worst_shadow = min(worst_shadow, shadow_value(v, k))
            count_sh += 1
    out.append(
        _check("shadow_nonnegative_mixed", worst_shadow >= -1e-9, worst_shadow, count_sh, seed)
    )

    worst_oracle = 0.0
    for n in range(2, 5):
        for mat in _random_mixed_batch(n, 3, 25, rng):
            rho = DensityMatrix(mat, validate=False)
            v = sector_lengths(rho)
            for k in range(n + 1):
                worst_oracle = max(
                    worst_oracle, abs(shadow_value(v, k) - shadow_value_matrix(rho, k))
                )
    out.append(_check("shadow_matrix_oracle", worst_oracle <= 1e-9, worst_oracle, 75, seed))

    worst_rt = 0.0
    for n in range(2, 7):
        for mat in _random_mixed_batch(n, 2, 50, rng):
            v = sector_lengths(DensityMatrix(mat, validate=False))
            e = sectors_to_entropies(v)
            back = entropies_to_sectors(e)
            worst_rt = max(worst_rt, max(abs(a - b) for a, b in zip(v.a, back.a)))
            i = mutual_entropies(e)
            eb = mutual_to_entropies(i)
            worst_rt = max(worst_rt, max(abs(a - b) for a, b in zip(e.s, eb.s)))
    out.append(_check("coordinate_round_trips", worst_rt <= 1e-12, worst_rt, 250, seed))

    worst_fd = 0.0
    for a in np.linspace(0.0, math.pi, 20):
        for b in np.linspace(0.0, math.pi, 20):
            v = sector_lengths(fam_d(a, b))
            worst_fd = max(worst_fd, abs(3.0 * (1.0 + v[3]) - v[1] - v[2]))
    out.append(_check("family_d_on_facet", worst_fd <= 1e-9, worst_fd, 400, seed))
    return out


def run_suite(name: str, quick: bool = False) -> list[CheckResult]:
    if name == "appendixA":
        return suite_appendix_a(samples=200 if quick else 1000)
    if name == "appendixB":
        return suite_appendix_b(product_samples=20_000 if quick else 100_000)
    if name == "appendixC":
        return suite_appendix_c(samples=200 if quick else 1000)
    if name == "identities":
        return suite_identities()
    if name == "all":
        out = []
        for suite in SUITES[:-1]:
            out.extend(run_suite(suite, quick=quick))
        return out
    raise ValidationError(f"unknown suite {name!r}; choose from {SUITES}")
