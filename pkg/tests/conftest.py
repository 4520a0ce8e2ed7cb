import numpy as np
import pytest

from sectorlen.pauli import DensityMatrix
from sectorlen.states import _complex_normals


def random_mixed_mats(n: int, rank: int, count: int, seed: int) -> np.ndarray:
    """Batch of Wishart density matrices of a given rank, shape (count, d, d)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    g = _complex_normals(rng, (count, 2**n, rank))
    m = np.einsum("nir,njr->nij", g, g.conj())
    tr = np.einsum("nii->n", m).real
    return m / tr[:, None, None]


def random_pure_mats(n: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    vecs = _complex_normals(rng, (count, 2**n))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    return np.einsum("ni,nj->nij", vecs, vecs.conj())


@pytest.fixture
def mixed_states_3q():
    return [DensityMatrix(m, validate=False) for m in random_mixed_mats(3, 4, 30, 17)]
