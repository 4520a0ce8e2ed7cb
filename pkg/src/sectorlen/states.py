"""Named states, boundary-state families and seeded random-state generation.

All constructors are deterministic; random kinds draw from a PCG64 stream
with Gaussian variates produced by the Marsaglia polar method, so the same
(seed, shape) always yields bit-identical output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .pauli import DensityMatrix, ValidationError, matrix_of, state_inversion

RANDOM_KINDS = frozenset({"random_pure", "random_mixed"})
FAMILY_KINDS = frozenset({"fam_A", "fam_B", "fam_C", "fam_D"})
KINDS = frozenset(
    {"ghz", "chi4", "product_zero", "bell_phi_plus", "maximally_mixed", "inversion_mix"}
) | FAMILY_KINDS | RANDOM_KINDS


def _pure(vec: np.ndarray) -> DensityMatrix:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()), validate=False)


def ghz(n: int) -> DensityMatrix:
    """(|0..0> + |1..1>)/sqrt(2) as a density matrix."""
    if n < 2:
        raise ValidationError("ghz requires n >= 2")
    v = np.zeros(2**n)
    v[0] = v[-1] = 1.0
    return _pure(v)


def chi4() -> DensityMatrix:
    """The highly entangled 4-qubit state with amplitudes 1/sqrt6 on the
    weight-1 basis kets and sqrt2/sqrt6 on |1111>."""
    v = np.zeros(16)
    v[[1, 2, 4, 8]] = 1.0
    v[15] = math.sqrt(2.0)
    return _pure(v / math.sqrt(6.0))


def product_zero(n: int) -> DensityMatrix:
    """|0><0| tensored n times; attains A_k = C(n, k) for every k."""
    if n < 1:
        raise ValidationError("product_zero requires n >= 1")
    v = np.zeros(2**n)
    v[0] = 1.0
    return _pure(v)


def bell_phi_plus() -> DensityMatrix:
    """(|00> + |11>)/sqrt(2)."""
    return ghz(2)


def maximally_mixed(n: int) -> DensityMatrix:
    if n < 1:
        raise ValidationError("maximally_mixed requires n >= 1")
    d = 2**n
    return DensityMatrix(np.eye(d) / d, validate=False)


def _check_unit(name: str, x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"{name}={x} outside [0, 1]")
    return x


def _check_angle(name: str, x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= math.pi:
        raise ValidationError(f"{name}={x} outside [0, pi]")
    return x


_PLUS = np.array([1.0, 1.0]) / math.sqrt(2.0)
_MINUS = np.array([1.0, -1.0]) / math.sqrt(2.0)


def fam_a(p: float, alpha: float) -> DensityMatrix:
    """Mixture of the GHZ/|+++> superposition with (1 + XXX)/8."""
    p = _check_unit("p", p)
    alpha = _check_angle("alpha", alpha)
    c, s = math.cos(alpha / 2), math.sin(alpha / 2)
    ghz_vec = np.zeros(8)
    ghz_vec[0] = ghz_vec[7] = 1.0 / math.sqrt(2.0)
    ppp = np.kron(np.kron(_PLUS, _PLUS), _PLUS)
    g = (c * ghz_vec + s * ppp) / math.sqrt(1.0 + c * s)
    mixed = (np.eye(8) + matrix_of("XXX").real) / 8.0
    return DensityMatrix(p * np.outer(g, g) + (1.0 - p) * mixed)


def fam_b(p: float, alpha: float) -> DensityMatrix:
    """Mixture of a tilted product state with (1 + cos(a) Z11 + sin(a) XXX)/8."""
    p = _check_unit("p", p)
    alpha = _check_angle("alpha", alpha)
    c, s = math.cos(alpha / 2), math.sin(alpha / 2)
    h = np.kron(np.array([c, -s]), np.kron(_PLUS, _MINUS))
    mixed = (
        np.eye(8)
        + math.cos(alpha) * matrix_of("ZII").real
        + math.sin(alpha) * matrix_of("XXX").real
    ) / 8.0
    return DensityMatrix(p * np.outer(h, h) + (1.0 - p) * mixed)


def fam_c(p: float, q: float) -> DensityMatrix:
    """Diagonal mixture p/2 1x|00><00| + q/2 1x|01><01| + (1-p-q)|000><000|."""
    p = _check_unit("p", p)
    q = _check_unit("q", q)
    if q > p + 1e-15:
        raise ValidationError("fam_C requires q <= p")
    if p + q > 1.0 + 1e-15:
        raise ValidationError("fam_C requires p + q <= 1")
    rho = np.zeros((8, 8))
    rho[0, 0] += p / 2.0  # |000>
    rho[4, 4] += p / 2.0  # |100>
    rho[1, 1] += q / 2.0  # |001>
    rho[5, 5] += q / 2.0  # |101>
    rho[0, 0] += max(1.0 - p - q, 0.0)
    return DensityMatrix(rho / np.trace(rho).real, validate=False)


def fam_d(alpha: float, beta: float) -> DensityMatrix:
    """Mixture p |Phi(alpha)><Phi(alpha)| x |0><0| +
    (1-p) |Phi(beta)><Phi(beta)| x |1><1| with the weight
    p = sin(beta)/[sin(alpha) + sin(beta)].

    The slack of the symmetric-subadditivity facet evaluates to
    8 [p sin(alpha) - (1-p) sin(beta)]^2, which this weight cancels for
    every (alpha, beta), so the whole family lies on the facet.
    """
    alpha = _check_angle("alpha", alpha)
    beta = _check_angle("beta", beta)
    sa, sb = math.sin(alpha), math.sin(beta)
    # both sines vanish only for diagonal |Phi>; every weight stays on the
    # facet there, use 1/2
    p = 0.5 if sa + sb == 0.0 else sb / (sa + sb)

    def phi(angle: float) -> np.ndarray:
        v = np.zeros(4)
        v[0] = math.cos(angle / 2)
        v[3] = math.sin(angle / 2)
        return v

    pa, pb = phi(alpha), phi(beta)
    zero = np.diag([1.0, 0.0])
    one = np.diag([0.0, 1.0])
    rho = p * np.kron(np.outer(pa, pa), zero) + (1.0 - p) * np.kron(
        np.outer(pb, pb), one
    )
    return DensityMatrix(rho, validate=False)


def inversion_mix(rho: DensityMatrix, p: float) -> DensityMatrix:
    """p rho + (1-p) inversion(rho); scales odd sectors by (1-2p)^2."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p={p} outside [0, 1]")
    inv = state_inversion(rho)
    return DensityMatrix(p * rho.mat + (1.0 - p) * inv.mat, validate=False)


def _polar_normals(rng: np.random.Generator, count: int) -> np.ndarray:
    """Marsaglia polar method on the uniform stream; deterministic per stream."""
    out = np.empty(count)
    filled = 0
    while filled < count:
        need = count - filled
        m = max(need, 64)
        u = 2.0 * rng.random(m) - 1.0
        v = 2.0 * rng.random(m) - 1.0
        s = u * u + v * v
        ok = (s > 0.0) & (s < 1.0)
        f = np.sqrt(-2.0 * np.log(s[ok]) / s[ok])
        pair = np.empty(2 * int(ok.sum()))
        pair[0::2] = u[ok] * f
        pair[1::2] = v[ok] * f
        take = min(need, pair.size)
        out[filled : filled + take] = pair[:take]
        filled += take
    return out


def _complex_normals(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    count = int(np.prod(shape))
    flat = _polar_normals(rng, 2 * count)
    return (flat[0::2] + 1j * flat[1::2]).reshape(shape)


def random_pure(n: int, seed: int) -> DensityMatrix:
    """Haar-distributed pure state (normalized complex Gaussian vector)."""
    if n < 1:
        raise ValidationError("random_pure requires n >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    return _pure(_complex_normals(rng, (2**n,)))


def random_mixed(n: int, rank: int, seed: int) -> DensityMatrix:
    """rho = G G^dag / Tr(G G^dag) with G a 2^n x rank complex Gaussian matrix."""
    if n < 1:
        raise ValidationError("random_mixed requires n >= 1")
    if not 1 <= rank <= 2**n:
        raise ValidationError(f"rank={rank} outside 1..{2**n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    g = _complex_normals(rng, (2**n, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, validate=False)


def random_mixed_batch(
    n: int, rank: int, rng: np.random.Generator, count: int
) -> np.ndarray:
    """(count, 2^n, 2^n) array of normalized Wishart states from one stream."""
    if not 1 <= rank <= 2**n:
        raise ValidationError(f"rank={rank} outside 1..{2**n}")
    g = _complex_normals(rng, (count, 2**n, rank))
    m = np.einsum("nir,njr->nij", g, g.conj())
    tr = np.einsum("nii->n", m).real
    return m / tr[:, None, None]


def random_product_mixture(
    n: int, terms: int, seed: int
) -> DensityMatrix:
    """Fully separable state: uniform mixture of random pure product states."""
    rng = np.random.Generator(np.random.PCG64(seed))
    d = 2**n
    acc = np.zeros((d, d), dtype=complex)
    w = rng.random(terms)
    w /= w.sum()
    for t in range(terms):
        vec = np.array([1.0 + 0j])
        for _ in range(n):
            q = _complex_normals(rng, (2,))
            vec = np.kron(vec, q / np.linalg.norm(q))
        acc += w[t] * np.outer(vec, vec.conj())
    return DensityMatrix(acc, validate=False)


@dataclass(frozen=True)
class StateRecipe:
    """Deterministic description of a state; same recipe -> identical matrix."""

    kind: str
    n: int = 0
    params: Mapping[str, float] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown state kind {self.kind!r}")

    @classmethod
    def from_dict(cls, d: Mapping) -> "StateRecipe":
        return cls(
            kind=str(d["kind"]),
            n=int(d.get("n", 0)),
            params={k: float(v) for k, v in dict(d.get("params", {})).items()},
            seed=int(d.get("seed", 0)),
        )

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.n:
            d["n"] = self.n
        if self.params:
            d["params"] = dict(self.params)
        if self.kind in RANDOM_KINDS:
            d["seed"] = self.seed
        return d


def family_state(recipe: StateRecipe) -> DensityMatrix:
    if recipe.kind not in FAMILY_KINDS:
        raise ValidationError(f"{recipe.kind!r} is not a boundary family")
    p = recipe.params
    if recipe.kind == "fam_A":
        return fam_a(p["p"], p["alpha"])
    if recipe.kind == "fam_B":
        return fam_b(p["p"], p["alpha"])
    if recipe.kind == "fam_C":
        return fam_c(p["p"], p["q"])
    return fam_d(p["alpha"], p["beta"])


def make_state(recipe: StateRecipe) -> DensityMatrix:
    """Instantiate any recipe kind."""
    k = recipe.kind
    if k == "ghz":
        return ghz(recipe.n)
    if k == "chi4":
        return chi4()
    if k == "product_zero":
        return product_zero(recipe.n)
    if k == "bell_phi_plus":
        return bell_phi_plus()
    if k == "maximally_mixed":
        return maximally_mixed(recipe.n)
    if k in FAMILY_KINDS:
        return family_state(recipe)
    if k == "random_pure":
        return random_pure(recipe.n, recipe.seed)
    if k == "random_mixed":
        rank = int(recipe.params.get("rank", 2**recipe.n))
        return random_mixed(recipe.n, rank, recipe.seed)
    if k == "inversion_mix":
        base = StateRecipe.from_dict(dict(recipe.params.get("base", {})))  # pragma: no cover
        return inversion_mix(make_state(base), recipe.params["p"])
    raise ValidationError(f"unknown state kind {k!r}")
