"""End-to-end acceptance suite.

Each test covers one acceptance criterion at its stated tolerance and
prints a single pass/fail line (visible regardless of capture) so the
whole gate can be audited from the test log.
"""
import math
import sys
import time
from fractions import Fraction
from math import comb

import numpy as np

from conftest import random_mixed_mats, random_pure_mats
from sectorlen import bounds as lp_bounds
from sectorlen import scan as scan_mod
from sectorlen import sssa
from sectorlen.forms import (
    macwilliams_rank,
    macwilliams_residual,
    shadow_value,
    shadow_value_matrix,
)
from sectorlen.pauli import DensityMatrix
from sectorlen.polytopes import facets
from sectorlen.sectors import (
    entropies_to_sectors,
    mutual_entropies,
    mutual_to_entropies,
    sector_lengths,
    sector_lengths_batch,
    sectors_to_entropies,
)
from sectorlen.states import chi4, ghz, product_zero


def _report(num: int, label: str, ok: bool) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {label}", file=sys.__stdout__)
    assert ok, f"criterion {num} failed: {label}"


def test_criterion_01_named_state_sectors():
    t0 = time.monotonic()
    dev = 0.0

    def check(rho, expected):
        nonlocal dev
        v = sector_lengths(rho)
        dev = max(dev, max(abs(a - b) for a, b in zip(v.a, expected)))

    check(ghz(3), (1, 0, 3, 4))
    check(chi4(), (1, 0, 2, 8, 5))
    for n in range(1, 9):
        check(product_zero(n), tuple(comb(n, k) for k in range(n + 1)))
    for n in range(3, 9):
        v = sector_lengths(ghz(n))
        expect = 2 ** (n - 1) + (1 if n % 2 == 0 else 0)
        dev = max(dev, abs(v[n] - expect))
    elapsed = time.monotonic() - t0
    _report(1, "named-state sector tuples exact to 1e-10", dev < 1e-10 and elapsed < 10.0)


def test_criterion_02_lp_certificates():
    t0 = time.monotonic()
    ok = True
    for n, val in ((3, 4), (4, 8), (5, 10)):
        c = lp_bounds.prove_a3(n)
        ok &= c.value == val and c.replay()
    for n in range(3, 11):
        c = lp_bounds.prove_a2(n)
        ok &= c.value == comb(n, 2) and c.replay()
    for n in (4, 6, 8, 10):
        c = lp_bounds.prove_an_even(n)
        ok &= c.value == 2 ** (n - 1) + 1 and c.replay()
    for n in (3, 5, 7, 9):
        c = lp_bounds.prove_an_odd(n)
        ok &= c.value == 2 ** (n - 1) and c.replay()
    elapsed = time.monotonic() - t0
    _report(2, "exact rational LP certificates with replayable duals", ok and elapsed < 60.0)


def test_criterion_03_shadow_insufficiency():
    rep = lp_bounds.shadow_insufficiency_report(8, 4)
    ok = (
        rep.optimum is not None
        and rep.optimum > Fraction(comb(8, 4))
        and rep.witness is not None
        and len(rep.witness) == 9
    )
    _report(3, "shadow constraints leave A_4 at n=8 above 70, witness emitted", ok)


def test_criterion_04_polytope_soundness():
    t0 = time.monotonic()
    _, sum3, _ = scan_mod.run_scan(3, 100_000, seed=12)
    _, sum2, _ = scan_mod.run_scan(2, 100_000, seed=13)
    elapsed = time.monotonic() - t0
    ok = sum3.violations == 0 and sum2.violations == 0 and elapsed < 300.0
    _report(4, "10^5 random 3-qubit and 2-qubit states, zero violations at 1e-9", ok)


def test_criterion_05_polytope_tightness():
    sweep = scan_mod.family_sweep(steps=50)
    poly = facets(3)
    fmap = {f.name: f for f in poly.facets}
    worst = 0.0
    for kind, body in sweep:
        facet = fmap["sssa"] if kind.startswith("famD") else fmap["state_inv"]
        worst = max(worst, abs(facet.slack(body)))
    hull_ok, hull_worst = scan_mod.hull_containment_check(
        samples=10_000, seed=3, steps=25, tol=1e-6
    )
    ok = worst < 1e-9 and hull_ok
    _report(5, "family sweeps saturate both facets; hull contains all samples", ok)


def test_criterion_06_choi_verification():
    choi = sssa.build_choi()
    neg = choi.negative_eigenvalues()
    ok = len(neg) == 1 and abs(neg[0] + 1.5) < 1e-9
    sym = sssa.check_local_symmetries(choi)
    gate_worst = max(v for k, v in sym.items() if not k.startswith("rx"))
    ok &= gate_worst < 1e-10
    best, count = sssa.random_product_scan(samples=100_000, seed=5)
    ok &= count == 100_000 and best >= -1e-9
    val, _ = sssa.minimize_product_overlap(seed=23)
    ok &= val >= -1e-7
    _report(6, "partial-inversion operator: spectrum, symmetries, nonnegativity", ok)


def test_criterion_07_anticommuting_sets():
    ok = sssa.anticommuting_sets_valid()
    worst_set = 0.0
    worst_total = 0.0
    for mat in random_pure_mats(4, 1000, seed=41):
        sums = sssa.anticommuting_bound_check(DensityMatrix(mat, validate=False))
        worst_set = max(worst_set, max(sums))
        worst_total = max(worst_total, sum(sums))
    ok &= worst_set <= 1.0 + 1e-9 and worst_total <= 3.0 + 1e-9
    from sectorlen.entangle import pair_sum_check

    worst5 = 0.0
    for mat in random_pure_mats(5, 1000, seed=43):
        worst5 = max(worst5, pair_sum_check(DensityMatrix(mat, validate=False), 1).value)
    ok &= worst5 <= 4.0 + 1e-9
    _report(7, "anticommuting sets exact; sampled uncertainty bounds hold", ok)


def test_criterion_08_projector_representation():
    ok = True
    for name in sssa.PROJECTOR_PRESETS:
        fit = sssa.fit_projector_scale(name, samples=1000, seed=11)
        ok &= fit.scale > 0 and fit.residual <= 1e-8
    _report(8, "projector-built functionals match up to positive scale", ok)


def test_criterion_09_identity_suites():
    rng_ok = True
    worst_mw = 0.0
    for n in range(2, 7):
        for mat in random_pure_mats(n, 200, seed=100 + n):
            v = sector_lengths(DensityMatrix(mat, validate=False))
            for m in range(n + 1):
                worst_mw = max(worst_mw, abs(macwilliams_residual(v, m)))
    rng_ok &= worst_mw <= 1e-8
    rng_ok &= all(macwilliams_rank(n) == -(-n // 2) for n in range(2, 7))
    from sectorlen.forms import shadow_form

    worst_shadow = math.inf
    for n in range(2, 7):
        coeffs = np.array(
            [[float(c) for c in shadow_form(k, n).coeffs] for k in range(n + 1)]
        )
        for chunk in range(10):  # 10^4 states per n, in memory-friendly chunks
            mats = random_mixed_mats(n, 2**n, 1000, seed=1000 * n + chunk)
            batch = sector_lengths_batch(mats, n)
            worst_shadow = min(worst_shadow, float((batch @ coeffs.T).min()))
    rng_ok &= worst_shadow >= -1e-9
    worst_oracle = 0.0
    for n in range(2, 5):
        for mat in random_mixed_mats(n, 3, 25, seed=300 + n):
            rho = DensityMatrix(mat, validate=False)
            v = sector_lengths(rho)
            for k in range(n + 1):
                worst_oracle = max(
                    worst_oracle, abs(shadow_value(v, k) - shadow_value_matrix(rho, k))
                )
    rng_ok &= worst_oracle <= 1e-9
    _report(9, "MacWilliams, rank, shadow and matrix-oracle identities", rng_ok)


def test_criterion_10_round_trips_and_tables():
    worst_rt = 0.0
    corpus = {}
    for n in range(2, 7):
        mats = random_mixed_mats(n, 4, 200, seed=400 + n)
        corpus[n] = mats
        for mat in mats[:50]:
            v = sector_lengths(DensityMatrix(mat, validate=False))
            e = sectors_to_entropies(v)
            back = entropies_to_sectors(e)
            worst_rt = max(worst_rt, max(abs(a - b) for a, b in zip(v.a, back.a)))
            i = mutual_entropies(e)
            eb = mutual_to_entropies(i)
            worst_rt = max(worst_rt, max(abs(a - b) for a, b in zip(e.s, eb.s)))
    ok = worst_rt <= 1e-12

    # general-n inequalities in all three coordinate systems
    for n, mats in corpus.items():
        for mat in mats:
            v = sector_lengths(DensityMatrix(mat, validate=False))
            e = sectors_to_entropies(v)
            i = mutual_entropies(e)
            ok &= v[1] <= n + 1e-9 and e[1] >= -1e-9 and i[1] >= -1e-9
            if n >= 3:
                ok &= v[2] <= comb(n, 2) + 1e-9
                ok &= e[2] >= (n - 1) / 2 * e[1] - 1e-9
                ok &= i[2] <= (n - 1) / 2 * i[1] + 1e-9
                # third-order mutual-information bound in all three systems
                lhs = comb(n, 3) + v[3]
                ok &= lhs >= comb(n - 1, 2) / 3 * v[1] + (n - 2) / 3 * v[2] - 1e-9
                ok &= e[3] <= (n - 2) / 3 * e[2] + comb(n - 1, 2) / 3 * e[1] + 1e-9
                ok &= i[3] <= (n - 2) / 3 * i[2] + 1e-9
            if n >= 5:
                ok &= v[3] <= comb(n, 3) + 1e-9
                ok &= e[3] >= (n - 2) / 2 * e[2] - comb(n - 1, 2) / 4 * e[1] - 1e-9
                ok &= i[3] >= (n - 2) / 2 * i[2] - comb(n - 1, 2) / 4 * i[1] - 1e-9

    # complete 2- and 3-qubit constraint sets in all three coordinate systems
    for mat in corpus[2]:
        v = sector_lengths(DensityMatrix(mat, validate=False))
        e = sectors_to_entropies(v)
        i = mutual_entropies(e)
        ok &= v[1] + v[2] <= 3 + 1e-9 and v[1] - v[2] <= 1 + 1e-9
        ok &= e[2] >= -1e-9 and e[2] <= e[1] + 1e-9
        ok &= i[2] <= i[1] + 1e-9 and i[2] >= -1e-9
    for mat in corpus[3]:
        v = sector_lengths(DensityMatrix(mat, validate=False))
        e = sectors_to_entropies(v)
        i = mutual_entropies(e)
        ok &= v[1] + v[2] + v[3] <= 7 + 1e-9
        ok &= v[1] - v[2] + v[3] <= 1 + 1e-9
        ok &= v[2] <= 3 + 1e-9
        ok &= v[1] + v[2] <= 3 * (1 + v[3]) + 1e-9
        ok &= e[3] >= -1e-9 and e[3] >= e[2] - e[1] - 1e-9
        ok &= e[2] >= e[1] - 1e-9
        ok &= 3 * e[3] <= 2 * e[2] - e[1] + 1e-9
        ok &= i[3] >= i[2] - i[1] - 1e-9 and i[3] >= -1e-9
        ok &= i[2] <= i[1] + 1e-9 and i[3] <= i[2] / 3 + 1e-9
    _report(10, "coordinate round-trips and the full inequality tables", ok)
