"""Sector lengths of multi-qubit quantum states.

Basis-independent k-body correlation measures, exact-rational linear
programming over the identities that constrain them, complete 2- and
3-qubit polytope charts, and numerical verification of the supporting
operator constructions.
"""
from .pauli import (
    BlochCoefficients,
    DensityMatrix,
    PauliString,
    ValidationError,
    anticommutes,
    bloch_decompose,
    bloch_reconstruct,
    even_projection,
    matrix_of,
    partial_trace,
    partial_transpose,
    state_inversion,
)
from .sectors import (
    EntropyVector,
    MutualVector,
    SectorVector,
    entropies_to_sectors,
    mutual_entropies,
    mutual_to_entropies,
    pair_sector_sum,
    sector_entropies,
    sector_lengths,
    sectors_to_entropies,
)
from .bounds import (
    BoundCertificate,
    LiftedBound,
    corollary2_form,
    prove_a2,
    prove_a3,
    prove_an_even,
    prove_an_odd,
    shadow_insufficiency_report,
)
from .entangle import detect, representability_check
from .polytopes import Polytope, entanglement_lines, facets, implied_inequalities
from .serialize import parse_recipe, resolve_state
from .sssa import build_choi, partial_inversion, sssa_slack

__version__ = "0.1.0"

__all__ = [
    "BlochCoefficients",
    "BoundCertificate",
    "LiftedBound",
    "Polytope",
    "build_choi",
    "corollary2_form",
    "detect",
    "entanglement_lines",
    "facets",
    "implied_inequalities",
    "parse_recipe",
    "partial_inversion",
    "prove_a2",
    "prove_a3",
    "prove_an_even",
    "prove_an_odd",
    "representability_check",
    "resolve_state",
    "shadow_insufficiency_report",
    "sssa_slack",
    "DensityMatrix",
    "EntropyVector",
    "MutualVector",
    "PauliString",
    "SectorVector",
    "ValidationError",
    "anticommutes",
    "bloch_decompose",
    "bloch_reconstruct",
    "entropies_to_sectors",
    "even_projection",
    "matrix_of",
    "mutual_entropies",
    "mutual_to_entropies",
    "pair_sector_sum",
    "partial_trace",
    "partial_transpose",
    "sector_entropies",
    "sector_lengths",
    "sectors_to_entropies",
    "state_inversion",
]
