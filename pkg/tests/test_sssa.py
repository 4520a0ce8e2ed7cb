import numpy as np
import pytest

from conftest import random_mixed_mats
from sectorlen import sssa
from sectorlen.pauli import DensityMatrix, ValidationError
from sectorlen.sectors import sector_lengths
from sectorlen.states import ghz, maximally_mixed, product_zero, random_mixed


def test_anticommuting_sets_structure():
    assert sssa.anticommuting_sets_valid()
    assert len(sssa.ANTICOMMUTING_SETS) == 3
    assert all(len(s) == 9 for s in sssa.ANTICOMMUTING_SETS)


def test_anticommuting_sums_product_state():
    sums = sssa.anticommuting_bound_check(product_zero(4))
    # |0000> has only Z-type expectations: one unit contribution per set
    assert max(abs(s - 1.0) for s in sums) < 1e-10


def test_anticommuting_sums_bounded():
    for m in random_mixed_mats(4, 2, 30, seed=71):
        sums = sssa.anticommuting_bound_check(DensityMatrix(m, validate=False))
        assert max(sums) <= 1.0 + 1e-9
        assert sum(sums) <= 3.0 + 1e-9


def test_partial_inversion_overlap_formula():
    for m in random_mixed_mats(3, 4, 20, seed=73):
        rho = DensityMatrix(m, validate=False)
        v = sector_lengths(rho)
        assert abs(sssa.overlap(rho) - sssa.overlap_from_sectors(v)) < 1e-10
    with pytest.raises(ValidationError):
        sssa.partial_inversion(product_zero(2))


def test_overlap_reference_values():
    assert abs(sssa.overlap(ghz(3)) - 1.5) < 1e-10
    assert abs(sssa.overlap(maximally_mixed(3)) - 3.0 / 8.0) < 1e-10


def test_slack_forms_agree():
    for m in random_mixed_mats(3, 3, 10, seed=79):
        v = sector_lengths(DensityMatrix(m, validate=False))
        s = sssa.sssa_slack(v, form="sector")
        assert abs(s - sssa.sssa_slack(v, form="entropy")) < 1e-9
        assert abs(s - sssa.sssa_slack(v, form="mutual")) < 1e-9
        assert s >= -1e-9
    with pytest.raises(ValidationError):
        sssa.sssa_slack(v, form="bogus")


@pytest.fixture(scope="module")
def choi():
    return sssa.build_choi()


def test_choi_spectrum(choi):
    neg = choi.negative_eigenvalues()
    assert len(neg) == 1
    assert abs(neg[0] + 1.5) < 1e-9
    eigs = choi.spectrum()
    assert abs(max(eigs) - 0.5) < 1e-9


def test_choi_reconstruction(choi):
    rho = random_mixed(3, 5, seed=83)
    rebuilt = choi.reconstruct(rho)
    direct = sssa.partial_inversion(rho)
    assert np.max(np.abs(rebuilt - direct)) < 1e-10


def test_choi_bloch_expansion(choi):
    ref = sssa.reference_bloch_expansion()
    assert np.max(np.abs(choi.eta_ta - ref)) < 1e-12


def test_local_symmetries(choi):
    dev = sssa.check_local_symmetries(choi)
    gate_keys = [k for k in dev if not k.startswith("rx")]
    assert len(gate_keys) >= 6
    assert max(dev[k] for k in gate_keys) < 1e-10
    assert dev["rx(0.3)_control_on_choi"] > 1e-3


def test_product_overlap_nonnegative(choi):
    best, count = sssa.random_product_scan(samples=5000, seed=7)
    assert count == 5000
    assert best >= -1e-9


def test_product_minimization(choi):
    val, state = sssa.minimize_product_overlap(restarts=4, seed=19)
    assert val >= -1e-7


def test_projector_presets(choi):
    combo = sssa.eta_from_projectors(sssa.PROJECTOR_PRESETS["sssa"])
    assert np.max(np.abs(combo - 2.0 * choi.eta_ta)) < 1e-10
    for name in sssa.PROJECTOR_PRESETS:
        fit = sssa.fit_projector_scale(name, samples=100, seed=3)
        assert fit.scale > 0
        assert fit.residual < 1e-8


def test_breuer_hall_map():
    rho = random_mixed(3, 2, seed=89)
    sigma = np.kron(rho.mat, rho.mat)
    out = sssa.breuer_hall(sigma)
    assert np.max(np.abs(out - out.conj().T)) < 1e-10
    assert np.linalg.eigvalsh(out)[0] > -1e-9
    with pytest.raises(ValidationError):
        sssa.breuer_hall(sigma, u=np.eye(8))  # not skew-symmetric
