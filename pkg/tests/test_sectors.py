import math

import numpy as np
import pytest

from conftest import random_mixed_mats
from sectorlen.pauli import DensityMatrix, ValidationError
from sectorlen.sectors import (
    SectorVector,
    entropies_to_sectors,
    mutual_entropies,
    mutual_to_entropies,
    pair_sector_sum,
    sector_entropies,
    sector_lengths,
    sector_lengths_batch,
    sectors_to_entropies,
)
from sectorlen.states import bell_phi_plus, chi4, ghz, maximally_mixed, product_zero


def assert_sectors(rho, expected, tol=1e-10):
    v = sector_lengths(rho)
    assert max(abs(a - b) for a, b in zip(v.a, expected)) < tol


def test_named_states():
    assert_sectors(ghz(3), (1, 0, 3, 4))
    assert_sectors(chi4(), (1, 0, 2, 8, 5))
    assert_sectors(bell_phi_plus(), (1, 0, 3))
    assert_sectors(maximally_mixed(3), (1, 0, 0, 0))
    for n in range(1, 6):
        assert_sectors(product_zero(n), tuple(math.comb(n, k) for k in range(n + 1)))


def test_sector_vector_validation():
    with pytest.raises(ValidationError):
        SectorVector(2, (0.5, 0.0, 1.0))  # A_0 != 1
    with pytest.raises(ValidationError):
        SectorVector(2, (1.0, -0.5, 1.0))
    v = SectorVector(2, (1.0, 0.0, 3.0))
    assert v.body() == (0.0, 3.0)
    assert v[2] == 3.0


def test_methods_agree():
    for m in random_mixed_mats(3, 4, 10, seed=21):
        rho = DensityMatrix(m, validate=False)
        a = sector_lengths(rho, method="pauli").a
        b = sector_lengths(rho, method="purity").a
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-10


def test_batch_matches_scalar():
    mats = random_mixed_mats(3, 2, 16, seed=5)
    batch = sector_lengths_batch(mats, 3)
    for row, m in zip(batch, mats):
        v = sector_lengths(DensityMatrix(m, validate=False))
        assert max(abs(x - y) for x, y in zip(row, v.a)) < 1e-10


def test_total_is_scaled_purity():
    for m in random_mixed_mats(4, 3, 5, seed=8):
        rho = DensityMatrix(m, validate=False)
        v = sector_lengths(rho)
        assert abs(v.total() - 16 * rho.purity()) < 1e-9


def test_entropy_translation_ghz():
    v = sector_lengths(ghz(3))
    e = sectors_to_entropies(v)
    # all single- and two-body marginals are maximally mixed, global pure
    assert abs(e[1] - 3.0) < 1e-10
    assert abs(e[2] - 3.0) < 1e-10
    assert abs(e[3] - 0.0) < 1e-10
    i = mutual_entropies(e)
    assert abs(i[1] - 3.0) < 1e-10
    assert abs(i[3] - 0.0) < 1e-10


def test_entropy_direct_vs_translated():
    for m in random_mixed_mats(3, 3, 10, seed=13):
        rho = DensityMatrix(m, validate=False)
        direct = sector_entropies(rho)
        translated = sectors_to_entropies(sector_lengths(rho))
        assert max(abs(a - b) for a, b in zip(direct.s, translated.s)) < 1e-9


def test_round_trips():
    for m in random_mixed_mats(4, 4, 10, seed=29):
        v = sector_lengths(DensityMatrix(m, validate=False))
        e = sectors_to_entropies(v)
        assert max(abs(a - b) for a, b in zip(entropies_to_sectors(e).a, v.a)) < 1e-12
        i = mutual_entropies(e)
        back = mutual_to_entropies(i)
        assert max(abs(a - b) for a, b in zip(back.s, e.s)) < 1e-12


def test_pair_sector_sum_ghz():
    # each two-body marginal of GHZ_3 contributes A_2 = 1 (ZZ term only)
    total = pair_sector_sum(ghz(3), pivot=1)
    assert abs(total - 2.0) < 1e-10
