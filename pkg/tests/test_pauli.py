import numpy as np
import pytest

from sectorlen.pauli import (
    DensityMatrix,
    PauliString,
    ValidationError,
    anticommutes,
    bloch_decompose,
    bloch_reconstruct,
    bloch_tensor,
    even_projection,
    matrix_from_bloch_tensor,
    matrix_of,
    partial_trace,
    partial_transpose,
    state_inversion,
)
from sectorlen.states import bell_phi_plus, ghz, maximally_mixed, random_mixed


def test_pauli_string_basic():
    p = PauliString("XIZ")
    assert p.n == 3
    assert p.weight == 2
    assert str(p) == "XIZ"
    assert PauliString("x1z") == p  # case and '1' alias for identity
    with pytest.raises(ValidationError):
        PauliString("ABC")


def test_matrix_of_is_correct_kron():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)
    assert np.allclose(matrix_of("XZ"), np.kron(x, z))
    m = matrix_of("Y")
    assert np.allclose(m @ m, np.eye(2))


def test_anticommutation():
    assert anticommutes("X", "Y")
    assert not anticommutes("X", "X")
    assert not anticommutes("XY", "YX")  # two clashes cancel
    assert anticommutes("XI", "YI")
    with pytest.raises(ValidationError):
        anticommutes("X", "XX")


def test_density_matrix_validation():
    with pytest.raises(ValidationError):
        DensityMatrix(np.eye(4))  # trace 4
    with pytest.raises(ValidationError):
        DensityMatrix(np.array([[0.5, 1.0], [0.0, 0.5]]))  # not Hermitian
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([1.5, -0.5]))  # negative eigenvalue
    rho = DensityMatrix(np.diag([0.5, 0.5]))
    assert rho.n == 1 and rho.dim == 2
    with pytest.raises(AttributeError):
        rho.n = 2


def test_bloch_round_trip():
    rho = random_mixed(3, 5, seed=2)
    bc = bloch_decompose(rho)
    back = bloch_reconstruct(bc)
    assert np.max(np.abs(back.mat - rho.mat)) < 1e-12


def test_bloch_tensor_round_trip():
    rho = random_mixed(2, 3, seed=4)
    t = bloch_tensor(rho.mat, 2)
    assert abs(t[0, 0] - 1.0) < 1e-12  # identity coefficient is the trace
    back = matrix_from_bloch_tensor(t, 2)
    assert np.max(np.abs(back - rho.mat)) < 1e-12


def test_bell_bloch_coefficients():
    bc = bloch_decompose(bell_phi_plus())
    t = bloch_tensor(bell_phi_plus().mat, 2)
    assert bc is not None
    # Phi+ = (II + XX - YY + ZZ) / 4
    assert abs(t[1, 1] - 1.0) < 1e-12
    assert abs(t[2, 2] + 1.0) < 1e-12
    assert abs(t[3, 3] - 1.0) < 1e-12
    assert abs(t[1, 0]) < 1e-12


def test_partial_trace_ghz():
    red = partial_trace(ghz(3), keep=[1])
    assert red.n == 1
    assert np.allclose(red.mat, np.eye(2) / 2)
    pair = partial_trace(ghz(3), keep=[1, 3])
    assert np.allclose(pair.mat, np.diag([0.5, 0.0, 0.0, 0.5]))


def test_partial_transpose_detects_bell():
    pt = partial_transpose(bell_phi_plus(), [1])
    eigs = np.linalg.eigvalsh(pt)
    assert eigs[0] < -0.49  # NPT with eigenvalue -1/2


def test_state_inversion_flips_odd_weights():
    rho = random_mixed(2, 2, seed=9)
    inv = state_inversion(rho)
    t = bloch_tensor(rho.mat, 2)
    ti = bloch_tensor(inv.mat, 2)
    for i in range(4):
        for j in range(4):
            w = (i > 0) + (j > 0)
            sign = -1.0 if w % 2 else 1.0
            assert abs(ti[i, j] - sign * t[i, j]) < 1e-12


def test_even_projection_idempotent():
    rho = random_mixed(2, 3, seed=11)
    e = even_projection(rho)
    e2 = even_projection(e)
    assert np.max(np.abs(e.mat - e2.mat)) < 1e-12
    t = bloch_tensor(e.mat, 2)
    assert abs(t[1, 0]) < 1e-12 and abs(t[0, 2]) < 1e-12  # odd weights gone


def test_maximally_mixed_has_no_correlations():
    t = bloch_tensor(maximally_mixed(2).mat, 2)
    assert abs(t[0, 0] - 1.0) < 1e-15
    assert np.max(np.abs(t.ravel()[1:])) < 1e-15
