"""Verification lab for the sector-length inequality machinery:
anticommuting-set bounds, the three-qubit partial-inversion map and its
Choi matrix, the Breuer-Hall operator, and the flip-projector
representation of the same functionals.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np
from scipy.optimize import minimize as _nm_minimize

from .pauli import (
    DensityMatrix,
    PauliString,
    SIGMA,
    ValidationError,
    bloch_tensor,
    matrix_from_bloch_tensor,
    partial_trace_raw,
    partial_transpose,
    weight_tensor,
)
from .sectors import (
    SectorVector,
    mutual_entropies,
    sector_lengths,
    sector_lengths_batch,
    sectors_to_entropies,
)
from .states import _complex_normals

# ---------------------------------------------------------------------------
# anticommuting sets: all 27 weight-2 Pauli words anchored on qubit 1,
# distributed into three pairwise-anticommuting families of nine
# ---------------------------------------------------------------------------

ANTICOMMUTING_SETS: tuple[tuple[PauliString, ...], ...] = tuple(
    tuple(PauliString(s) for s in group)
    for group in (
        ("XXII", "XYII", "XZII", "YIXI", "YIYI", "YIZI", "ZIIX", "ZIIY", "ZIIZ"),
        ("YXII", "YYII", "YZII", "ZIXI", "ZIYI", "ZIZI", "XIIX", "XIIY", "XIIZ"),
        ("ZXII", "ZYII", "ZZII", "XIXI", "XIYI", "XIZI", "YIIX", "YIIY", "YIIZ"),
    )
)


def anticommuting_sets_valid() -> bool:
    """Exact structural check: pairwise anticommutation within each set,
    and the union covers every two-body word touching qubit 1 exactly once."""
    seen = set()
    for group in ANTICOMMUTING_SETS:
        for a in range(9):
            for b in range(a + 1, 9):
                if not group[a].anticommutes(group[b]):
                    return False
        seen.update(p.letters for p in group)
    expected = {
        "".join(
            (a if q == 0 else b if q == j else "I") for q in range(4)
        )
        for j in range(1, 4)
        for a in "XYZ"
        for b in "XYZ"
    }
    return seen == expected


def anticommuting_bound_check(rho: DensityMatrix) -> tuple[float, float, float]:
    """Squared-expectation sum over each of the three sets; each is at most 1
    and the total equals the summed two-body sectors anchored on qubit 1."""
    if rho.n != 4:
        raise ValidationError("anticommuting sets are defined for n = 4")
    c = bloch_tensor(rho.mat, 4).real
    sums = []
    for group in ANTICOMMUTING_SETS:
        sums.append(float(sum(c[p.indices] ** 2 for p in group)))
    return tuple(sums)


# ---------------------------------------------------------------------------
# partial inversion and the closed-form overlap
# ---------------------------------------------------------------------------

_PAIRS = ((1, 2), (1, 3), (2, 3))


def _pair_y(pair: tuple[int, int]) -> np.ndarray:
    ops = [SIGMA[2] if q in pair else SIGMA[0] for q in (1, 2, 3)]
    return np.kron(np.kron(ops[0], ops[1]), ops[2])


_PAIR_Y = tuple(_pair_y(p) for p in _PAIRS)


def _partial_inversion_raw(mat: np.ndarray) -> np.ndarray:
    out = np.zeros((8, 8), dtype=complex)
    for pair, y in zip(_PAIRS, _PAIR_Y):
        out += y @ partial_transpose(mat, pair) @ y
    return out


def partial_inversion(rho: DensityMatrix) -> np.ndarray:
    """Sum of the three pairwise partial inversions of a 3-qubit state.

    Hermitian but in general not positive semidefinite.
    """
    if rho.n != 3:
        raise ValidationError("partial inversion is defined for n = 3")
    return _partial_inversion_raw(rho.mat)


def overlap(rho: DensityMatrix) -> float:
    """Tr(rho M(rho)) computed on the matrix route."""
    m = partial_inversion(rho)
    return float(np.real(np.einsum("ij,ji->", rho.mat, m)))


def overlap_from_sectors(v: SectorVector) -> float:
    """The same overlap from the sector vector: (3 - A_1 - A_2 + 3 A_3)/8."""
    if v.n != 3:
        raise ValidationError("overlap formula is for n = 3")
    return (3.0 - v[1] - v[2] + 3.0 * v[3]) / 8.0


def sssa_slack(v: SectorVector, form: str = "sector") -> float:
    """Slack 3(1 + A_3) - A_1 - A_2 of the symmetric subadditivity facet.

    Three equivalent coordinate forms: "sector", "entropy"
    (2 S^(2) - S^(1) - 3 S^(3), scaled by 4) and "mutual"
    (I^(2) - 3 I^(3), scaled by 4).
    """
    if v.n != 3:
        raise ValidationError("the facet lives in the 3-qubit chart")
    if form == "sector":
        return 3.0 * (1.0 + v[3]) - v[1] - v[2]
    e = sectors_to_entropies(v)
    if form == "entropy":
        return 4.0 * (2.0 * e[2] - e[1] - 3.0 * e[3])
    if form == "mutual":
        i = mutual_entropies(e)
        return 4.0 * (i[2] - 3.0 * i[3])
    raise ValidationError(f"unknown form {form!r}")


# ---------------------------------------------------------------------------
# Choi matrix of the map, its partial transpose and its symmetries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChoiMatrix:
    """eta = (id x M)(|phi+><phi+|) on the 8 x 8 maximally entangled state,
    together with its partial transpose over the first block."""

    eta: np.ndarray
    eta_ta: np.ndarray

    def spectrum(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.eta_ta)

    def negative_eigenvalues(self, tol: float = 1e-9) -> np.ndarray:
        s = self.spectrum()
        return s[s < -tol]

    def reconstruct(self, rho: DensityMatrix | np.ndarray) -> np.ndarray:
        """M(rho) = 8 Tr_A[(rho^T x 1) eta]."""
        mat = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho)
        big = np.kron(mat.T, np.eye(8)) @ self.eta
        return 8.0 * partial_trace_raw(big, 6, (3, 4, 5))

    def product_overlap(self, rho: DensityMatrix) -> float:
        """Tr[(rho x rho) eta^{T_A}] = Tr(rho M(rho)) / 8."""
        rr = np.kron(rho.mat, rho.mat)
        return float(np.real(np.einsum("ij,ji->", rr, self.eta_ta)))


def build_choi() -> ChoiMatrix:
    """Choi matrix of the partial-inversion map, eta = (1/8) sum_ij E_ij x M(E_ij)."""
    eta = np.zeros((64, 64), dtype=complex)
    e = np.zeros((8, 8), dtype=complex)
    for i in range(8):
        for j in range(8):
            e[i, j] = 1.0
            m = _partial_inversion_raw(e)
            e[i, j] = 0.0
            # kron(E_ij, m) places m in block (i, j)
            eta[i * 8 : i * 8 + 8, j * 8 : j * 8 + 8] = m / 8.0
    eta_ta = partial_transpose(eta, (1, 2, 3))
    return ChoiMatrix(eta, eta_ta)


def reference_bloch_expansion() -> np.ndarray:
    """eta^{T_A} from its Bloch form: (1/64) sum over matched Pauli words
    Xi x Xi with coefficient +3 at weights 0 and 3, -1 at weights 1 and 2."""
    w = weight_tensor(3)
    coeff = np.where((w == 0) | (w == 3), 3.0, -1.0)
    t = np.zeros((4,) * 6)
    for idx in np.ndindex((4,) * 3):
        t[idx + idx] = coeff[idx]
    return matrix_from_bloch_tensor(t, 6).real


_GATES = {
    "X": SIGMA[1],
    "Y": SIGMA[2],
    "Z": SIGMA[3],
    "P": np.diag([1.0, 1j]),
    "T": np.diag([1.0, np.exp(1j * np.pi / 4)]),
    "H": np.array([[1, 1], [1, -1]]) / np.sqrt(2),
}


def _embed(ops: Mapping[int, np.ndarray], n: int = 6) -> np.ndarray:
    m = np.array([[1.0 + 0j]])
    for q in range(1, n + 1):
        m = np.kron(m, ops.get(q, SIGMA[0]))
    return m


def _qubit_permutation(perm: tuple[int, int, int]) -> np.ndarray:
    """64 x 64 permutation applying perm to both 3-qubit blocks."""
    order = [perm[0] - 1, perm[1] - 1, perm[2] - 1]
    order = order + [3 + q for q in order]
    idx = np.arange(64)
    bits = (idx[:, None] >> (5 - np.arange(6))) & 1
    new = np.zeros(64, dtype=int)
    for pos, src in enumerate(order):
        new |= bits[:, src] << (5 - pos)
    p = np.zeros((64, 64))
    p[new, idx] = 1.0
    return p


def check_local_symmetries(choi: ChoiMatrix | None = None) -> dict[str, float]:
    """Max deviation of U eta^{T_A} U^dag from eta^{T_A} for the discrete
    local gates applied at matched positions (V11V11 and its shifts),
    simultaneous block permutations and the block swap.

    eta^{T_A} is a polynomial in the three pair flips, so it is invariant
    under *any* matched V x V; the generic-rotation negative control is
    therefore evaluated on eta itself, whose matched-gate symmetry group
    is genuinely discrete.
    """
    if choi is None:
        choi = build_choi()
    target = choi.eta_ta
    out = {}
    for name, v in _GATES.items():
        dev = 0.0
        for pos in (1, 2, 3):
            u = _embed({pos: v, pos + 3: v})
            dev = max(dev, float(np.max(np.abs(u @ target @ u.conj().T - target))))
        out[name] = dev
    for perm in ((2, 1, 3), (1, 3, 2), (2, 3, 1)):
        p = _qubit_permutation(perm)
        out[f"perm{perm}"] = float(np.max(np.abs(p @ target @ p.T - target)))
    # block swap: exchange the two 8-dim factors
    f = np.zeros((64, 64))
    for i in range(8):
        for j in range(8):
            f[i * 8 + j, j * 8 + i] = 1.0
    out["block_swap"] = float(np.max(np.abs(f @ target @ f.T - target)))
    th = 0.3
    rx = np.array(
        [[np.cos(th / 2), -1j * np.sin(th / 2)], [-1j * np.sin(th / 2), np.cos(th / 2)]]
    )
    u = _embed({1: rx, 4: rx})
    out["rx(0.3)_control_on_choi"] = float(
        np.max(np.abs(u @ choi.eta @ u.conj().T - choi.eta))
    )
    return out


# ---------------------------------------------------------------------------
# Breuer-Hall operator
# ---------------------------------------------------------------------------

_YYY = np.kron(np.kron(SIGMA[2], SIGMA[2]), SIGMA[2])


def breuer_hall(sigma: DensityMatrix | np.ndarray, u: np.ndarray | None = None) -> np.ndarray:
    """Tr_B(sigma) x 1 - sigma - (1 x U) sigma^{T_B} (1 x U^dag) on a
    6-qubit input, with U a skew-symmetric unitary on the last block."""
    mat = sigma.mat if isinstance(sigma, DensityMatrix) else np.asarray(sigma, complex)
    if mat.shape != (64, 64):
        raise ValidationError("expected a 6-qubit (64 x 64) matrix")
    if u is None:
        u = _YYY
    if np.max(np.abs(u.T + u)) > 1e-12:
        raise ValidationError("U must be skew-symmetric (U^T = -U)")
    if np.max(np.abs(u @ u.conj().T - np.eye(8))) > 1e-12:
        raise ValidationError("U must be unitary")
    red = partial_trace_raw(mat, 6, (0, 1, 2))
    tb = partial_transpose(mat, (4, 5, 6))
    uu = np.kron(np.eye(8), u)
    return np.kron(red, np.eye(8)) - mat - uu @ tb @ uu.conj().T


# ---------------------------------------------------------------------------
# flip-projector representation
# ---------------------------------------------------------------------------


def _pair_flip(i: int) -> np.ndarray:
    """Swap of qubits i and i+3 (1-based) on the 6-qubit space."""
    idx = np.arange(64)
    a = (idx >> (6 - i)) & 1
    b = (idx >> (3 - i)) & 1
    swapped = idx ^ (((a ^ b) << (6 - i)) | ((a ^ b) << (3 - i)))
    p = np.zeros((64, 64))
    p[swapped, idx] = 1.0
    return p


def eta_from_projectors(ctilde: Mapping[str, float]) -> np.ndarray:
    """Linear combination sum_s ctilde[s] P_s1 P_s2 P_s3 of symmetric (+)
    and antisymmetric (-) projector products over the three matched pairs.

    Keys are sign words like "--+"; omitted words contribute zero.
    """
    eye = np.eye(64)
    flips = [_pair_flip(i) for i in (1, 2, 3)]
    out = np.zeros((64, 64))
    for word, c in ctilde.items():
        if len(word) != 3 or any(ch not in "+-" for ch in word):
            raise ValidationError(f"invalid sign word {word!r}")
        if c == 0.0:
            continue
        term = eye * float(c)
        for ch, f in zip(word, flips):
            term = term @ ((eye + f) / 2.0 if ch == "+" else (eye - f) / 2.0)
        out += term
    return out


# the three functional presets: projector coefficients and the sector-space
# form each one represents as a bilinear functional
PROJECTOR_PRESETS: dict[str, dict[str, float]] = {
    "sssa": {"---": -3.0, "--+": 1.0, "-+-": 1.0, "+--": 1.0},
    "a2_cap": {"---": -3.0, "-++": 1.0, "+-+": 1.0, "++-": 1.0},
    "b0": {"---": 1.0},
}

SECTOR_FUNCTIONALS: dict[str, Callable[[SectorVector], float]] = {
    "sssa": lambda v: 3.0 - v[1] - v[2] + 3.0 * v[3],
    "a2_cap": lambda v: 3.0 - v[2],
    "b0": lambda v: (1.0 - v[1] + v[2] - v[3]) / 8.0,
}


@dataclass(frozen=True)
class ScaleFit:
    name: str
    scale: float
    residual: float
    samples: int


def fit_projector_scale(name: str, samples: int = 200, seed: int = 11) -> ScaleFit:
    """Least-squares proportionality constant between Tr[(rho x rho) eta_c]
    for the named projector preset and the matching sector functional,
    measured over random mixed states."""
    if name not in PROJECTOR_PRESETS:
        raise ValidationError(f"unknown preset {name!r}")
    op = eta_from_projectors(PROJECTOR_PRESETS[name])
    func = SECTOR_FUNCTIONALS[name]
    rng = np.random.Generator(np.random.PCG64(seed))
    xs = np.empty(samples)
    ys = np.empty(samples)
    for t in range(samples):
        g = _complex_normals(rng, (8, 4))
        m = g @ g.conj().T
        m /= np.trace(m).real
        rho = DensityMatrix(m, validate=False)
        rr = np.kron(m, m)
        xs[t] = func(sector_lengths(rho))
        ys[t] = float(np.real(np.einsum("ij,ji->", rr, op)))
    scale = float(np.dot(xs, ys) / np.dot(xs, xs))
    residual = float(np.max(np.abs(ys - scale * xs)))
    return ScaleFit(name, scale, residual, samples)


# ---------------------------------------------------------------------------
# random-product scan and gradient-free minimization of the overlap
# ---------------------------------------------------------------------------


def product_overlap_batch(eta_ta: np.ndarray, mats: np.ndarray) -> np.ndarray:
    """Tr[(rho x rho) eta^{T_A}] for a (count, 8, 8) batch of states."""
    e = np.asarray(eta_ta).reshape(8, 8, 8, 8)
    # Tr[(rho x rho) E] = sum_{abcd} rho[b,a] rho[d,c] E[(a,c),(b,d)]
    return np.real(np.einsum("nba,ndc,acbd->n", mats, mats, e))


def random_product_scan(
    samples: int = 100_000, seed: int = 5, block: int = 2048
) -> tuple[float, int]:
    """Minimum of Tr[(rho x rho) eta^{T_A}] over random pure 3-qubit states.

    Streams in blocks; returns (minimum, sample count).
    """
    eta_ta = build_choi().eta_ta
    rng = np.random.Generator(np.random.PCG64(seed))
    best = np.inf
    done = 0
    while done < samples:
        m = min(block, samples - done)
        vecs = _complex_normals(rng, (m, 8))
        vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
        mats = np.einsum("ni,nj->nij", vecs, vecs.conj())
        best = min(best, float(product_overlap_batch(eta_ta, mats).min()))
        done += m
    return best, done


def _vec_from_params(x: np.ndarray) -> np.ndarray:
    v = x[:8] + 1j * x[8:]
    nrm = np.linalg.norm(v)
    return v / nrm if nrm > 1e-12 else np.full(8, 1 / np.sqrt(8), complex)


def minimize_product_overlap(
    restarts: int = 12, seed: int = 23
) -> tuple[float, np.ndarray]:
    """Gradient-free (Nelder-Mead) minimization of Tr[(rho x rho) eta^{T_A}]
    over pure rho, i.e. over the doubled products the relaxation encloses;
    returns (minimum, state vector) of the best restart. The minimum is
    zero, attained e.g. on computational product states."""
    rng = np.random.Generator(np.random.PCG64(seed))
    eta_ta = build_choi().eta_ta

    def objective(x: np.ndarray) -> float:
        u = _vec_from_params(x)
        w = np.kron(u, u)
        return float(np.real(w.conj() @ eta_ta @ w))

    best = (np.inf, None)
    for _ in range(restarts):
        x0 = rng.standard_normal(16)
        res = _nm_minimize(
            objective, x0, method="Nelder-Mead",
            options={"maxiter": 6000, "xatol": 1e-10, "fatol": 1e-14},
        )
        if res.fun < best[0]:
            best = (float(res.fun), res.x)
    return best[0], _vec_from_params(best[1])
