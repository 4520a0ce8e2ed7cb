"""Dense multi-qubit operator algebra: Pauli strings, Bloch decomposition,
partial trace/transpose and state inversion.

Qubit 1 is the leftmost Kronecker factor (most significant bit of the
computational-basis index). All matrices are dense; intended for n <= 10.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

PAULI_LETTERS = "IXYZ"

# sigma[0..3] = I, X, Y, Z
SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


class ValidationError(ValueError):
    """Raised when an input fails a state/argument validity check."""


class PauliString:
    """A word over {I, X, Y, Z}; the basis label of one Bloch coefficient."""

    __slots__ = ("letters",)

    def __init__(self, letters: str | Iterable[str]):
        s = "".join(letters).upper().replace("1", "I")
        if len(s) < 1 or any(c not in PAULI_LETTERS for c in s):
            raise ValidationError(f"invalid Pauli string {letters!r}")
        object.__setattr__(self, "letters", s)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("PauliString is immutable")

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> int:
        return sum(1 for c in self.letters if c != "I")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(PAULI_LETTERS.index(c) for c in self.letters)

    def matrix(self) -> np.ndarray:
        m = np.array([[1.0 + 0j]])
        for c in self.letters:
            m = np.kron(m, SIGMA[PAULI_LETTERS.index(c)])
        return m

    def anticommutes(self, other: "PauliString") -> bool:
        if not isinstance(other, PauliString):
            other = PauliString(other)
        if other.n != self.n:
            raise ValidationError("Pauli strings of different length")
        clashes = sum(
            1
            for a, b in zip(self.letters, other.letters)
            if a != "I" and b != "I" and a != b
        )
        return clashes % 2 == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, PauliString) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"PauliString({self.letters!r})"

    def __str__(self) -> str:
        return self.letters


def matrix_of(p: PauliString | str) -> np.ndarray:
    """Dense 2^n x 2^n matrix of a Pauli string (Kronecker product, in order)."""
    if not isinstance(p, PauliString):
        p = PauliString(p)
    return p.matrix()


def anticommutes(p: PauliString | str, q: PauliString | str) -> bool:
    """True iff the number of positions with differing non-identity letters is odd."""
    if not isinstance(p, PauliString):
        p = PauliString(p)
    return p.anticommutes(q)


def _infer_n(mat: np.ndarray) -> int:
    d = mat.shape[0]
    if mat.ndim != 2 or mat.shape[1] != d or d < 2 or d & (d - 1):
        raise ValidationError(f"matrix shape {mat.shape} is not 2^n x 2^n")
    return d.bit_length() - 1


class DensityMatrix:
    """A 2^n x 2^n Hermitian unit-trace PSD matrix.

    Validation (hermiticity, trace, PSD up to tolerance) runs on
    construction unless ``validate=False`` is passed by internal callers
    that produce guaranteed-valid output.
    """

    __slots__ = ("n", "mat")

    def __init__(self, mat: np.ndarray, validate: bool = True):
        mat = np.asarray(mat, dtype=complex)
        n = _infer_n(mat)
        if validate:
            if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
                raise ValidationError("matrix is not Hermitian")
            if abs(mat.trace() - 1.0) > max(TRACE_TOL, 1e-13 * mat.shape[0]):
                raise ValidationError(f"trace is {mat.trace():.6g}, expected 1")
            if np.linalg.eigvalsh(mat)[0] < -PSD_TOL:
                raise ValidationError("matrix has a negative eigenvalue")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mat", mat)

    def __setattr__(self, *a):
        raise AttributeError("DensityMatrix is immutable")

    @property
    def dim(self) -> int:
        return 2**self.n

    def purity(self) -> float:
        return float(np.real(np.einsum("ij,ji->", self.mat, self.mat)))

    def __repr__(self) -> str:
        return f"DensityMatrix(n={self.n})"


def _pauli_transform_matrix() -> np.ndarray:
    # W[a, 2*j + i] = sigma_a[i, j]; one-qubit step of the trace transform
    W = np.empty((4, 4), dtype=complex)
    for a in range(4):
        for j in range(2):
            for i in range(2):
                W[a, 2 * j + i] = SIGMA[a, i, j]
    return W


def _pauli_synth_matrix() -> np.ndarray:
    # V[2*i + j, a] = sigma_a[i, j]; one-qubit step of the reconstruction
    V = np.empty((4, 4), dtype=complex)
    for a in range(4):
        for i in range(2):
            for j in range(2):
                V[2 * i + j, a] = SIGMA[a, i, j]
    return V


_W = _pauli_transform_matrix()
_V = _pauli_synth_matrix()


def bloch_tensor(mat: np.ndarray, n: int) -> np.ndarray:
    """Tensor c[a_1..a_n] = Tr(sigma_{a_1} x ... x sigma_{a_n} . mat), shape (4,)*n."""
    # interleave row/col bits per qubit, combine to one base-4 axis each
    t = np.asarray(mat, dtype=complex).reshape((2,) * (2 * n))
    perm = []
    for k in range(n):
        perm.extend([k, n + k])  # combined per-qubit axis (row_k, col_k)
    t = t.transpose(perm).reshape((4,) * n)
    for _ in range(n):
        t = np.tensordot(t, _W, axes=([0], [1]))
    return t


def matrix_from_bloch_tensor(c: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`bloch_tensor` including the 2^-n normalization."""
    t = np.asarray(c, dtype=complex)
    for _ in range(n):
        t = np.tensordot(t, _V, axes=([0], [1]))
    # axes are now (p_1..p_n) with p_k = 2*i_k + j_k
    t = t.reshape((2,) * (2 * n))
    perm = [2 * k for k in range(n)] + [2 * k + 1 for k in range(n)]
    return t.transpose(perm).reshape(2**n, 2**n) / 2**n


@lru_cache(maxsize=16)
def weight_tensor(n: int) -> np.ndarray:
    """w[a_1..a_n] = number of non-identity letters, shape (4,)*n."""
    w = np.zeros((), dtype=np.int64)
    for _ in range(n):
        w = w[..., None] + (np.arange(4) != 0)
    return w


class BlochCoefficients:
    """Real coefficients of the Bloch expansion, indexed by Pauli strings."""

    __slots__ = ("n", "tensor")

    def __init__(self, n: int, tensor: np.ndarray):
        tensor = np.asarray(tensor, dtype=float)
        if tensor.shape != (4,) * n:
            raise ValidationError("coefficient tensor has wrong shape")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "tensor", tensor)

    def __setattr__(self, *a):
        raise AttributeError("BlochCoefficients is immutable")

    def coeff(self, p: PauliString | str) -> float:
        if not isinstance(p, PauliString):
            p = PauliString(p)
        if p.n != self.n:
            raise ValidationError("Pauli string length mismatch")
        return float(self.tensor[p.indices])

    def to_dict(self, tol: float = 1e-12) -> dict[str, float]:
        out = {}
        for idx in np.argwhere(np.abs(self.tensor) > tol):
            name = "".join(PAULI_LETTERS[a] for a in idx)
            out[name] = float(self.tensor[tuple(idx)])
        return out

    @classmethod
    def from_dict(cls, n: int, coeff: dict[str, float]) -> "BlochCoefficients":
        t = np.zeros((4,) * n)
        t[(0,) * n] = 1.0  # identity coefficient defaults to 1
        for name, val in coeff.items():
            t[PauliString(name).indices] = float(val)
        return cls(n, t)

    def items(self, tol: float = 1e-12):
        for name, val in self.to_dict(tol).items():
            yield PauliString(name), val


def bloch_decompose(rho: DensityMatrix) -> BlochCoefficients:
    """Coefficients Tr(P rho) for every Pauli string P."""
    c = bloch_tensor(rho.mat, rho.n)
    if np.max(np.abs(c.imag)) > 1e-10:
        raise ValidationError("Bloch coefficients have imaginary residue")
    return BlochCoefficients(rho.n, c.real)


def bloch_reconstruct(bc: BlochCoefficients) -> DensityMatrix:
    """State 2^-n sum_P coeff(P) P from its Bloch coefficients."""
    return DensityMatrix(matrix_from_bloch_tensor(bc.tensor, bc.n))


def _as_zero_based(qubits: Iterable[int], n: int) -> tuple[int, ...]:
    qs = tuple(sorted(set(int(q) for q in qubits)))
    if any(q < 1 or q > n for q in qs):
        raise ValidationError(f"qubit indices {qs} outside 1..{n}")
    return tuple(q - 1 for q in qs)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the 1-based qubits in ``keep`` (order preserved)."""
    n = rho.n
    kept = _as_zero_based(keep, n)
    if not kept:
        raise ValidationError("keep must be a nonempty subset of qubits")
    reduced = partial_trace_raw(rho.mat, n, kept)
    return DensityMatrix(reduced, validate=False)


def partial_trace_raw(mat: np.ndarray, n: int, kept: Sequence[int]) -> np.ndarray:
    """Partial trace of a 2^n x 2^n array, keeping the 0-based qubits ``kept``."""
    t = np.asarray(mat).reshape((2,) * (2 * n))
    row = list(range(n))
    col = [n + k if k in kept else k for k in range(n)]
    out = [k for k in kept] + [n + k for k in kept]
    r = np.einsum(t, row + col, out)
    d = 2 ** len(kept)
    return r.reshape(d, d)


def partial_transpose(rho: DensityMatrix | np.ndarray, subset: Iterable[int]) -> np.ndarray:
    """Transpose applied to the 1-based qubits in ``subset`` only."""
    if isinstance(rho, DensityMatrix):
        mat, n = rho.mat, rho.n
    else:
        mat = np.asarray(rho, dtype=complex)
        n = _infer_n(mat)
    sub = _as_zero_based(subset, n)
    if not sub:
        return mat.copy()
    t = mat.reshape((2,) * (2 * n))
    perm = list(range(2 * n))
    for k in sub:
        perm[k], perm[n + k] = perm[n + k], perm[k]
    return t.transpose(perm).reshape(mat.shape)


@lru_cache(maxsize=16)
def _y_all(n: int) -> np.ndarray:
    m = np.array([[1.0 + 0j]])
    for _ in range(n):
        m = np.kron(m, SIGMA[2])
    return m


def state_inversion(rho: DensityMatrix) -> DensityMatrix:
    """Y^n rho^T Y^n: flips the sign of all odd-weight Bloch coefficients."""
    Y = _y_all(rho.n)
    return DensityMatrix(Y @ rho.mat.T @ Y, validate=False)


def even_projection(rho: DensityMatrix) -> DensityMatrix:
    """(rho + inversion(rho))/2: same even-weight coefficients, zero odd ones."""
    inv = state_inversion(rho)
    return DensityMatrix(0.5 * (rho.mat + inv.mat), validate=False)
