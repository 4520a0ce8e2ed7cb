"""File formats and the terse state mini-language used by the CLI.

Density matrix (JSON): {"n": int, "re": [[...]], "im": [[...]]}.
Bloch coefficients (JSON): {"n": int, "coeff": {"XZI": float, ...}}.
Sector vector (JSON): {"n": int, "A": [1.0, ...]} including A_0.
State recipe (JSON): {"kind": ..., "n": ..., "params": {...}, "seed": ...}.
Marginal spectra (JSON): {"n": ..., "one": {...}, "two": {...}}.
"""
from __future__ import annotations

import json
import math
import os

import numpy as np

from .entangle import MarginalSpectra
from .pauli import BlochCoefficients, DensityMatrix, ValidationError
from .sectors import SectorVector
from .states import StateRecipe, make_state


def density_to_dict(rho: DensityMatrix) -> dict:
    return {
        "n": rho.n,
        "re": rho.mat.real.tolist(),
        "im": rho.mat.imag.tolist(),
    }


def density_from_dict(d: dict) -> DensityMatrix:
    n = int(d["n"])
    re = np.asarray(d["re"], dtype=float)
    im = np.asarray(d.get("im", np.zeros_like(re)), dtype=float)
    mat = re + 1j * im
    if mat.shape != (2**n, 2**n):
        raise ValidationError(f"matrix shape {mat.shape} does not match n={n}")
    return DensityMatrix(mat)


def bloch_to_dict(bc: BlochCoefficients) -> dict:
    coeff = bc.to_dict()
    coeff.pop("I" * bc.n, None)  # identity coefficient is implied
    return {"n": bc.n, "coeff": coeff}


def bloch_from_dict(d: dict) -> BlochCoefficients:
    return BlochCoefficients.from_dict(int(d["n"]), dict(d.get("coeff", {})))


def sector_to_dict(v: SectorVector) -> dict:
    return {"n": v.n, "A": list(v.a)}


def sector_from_dict(d: dict) -> SectorVector:
    return SectorVector(int(d["n"]), tuple(float(x) for x in d["A"]))


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dump_json(path: str, obj: dict) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def spectra_from_file(path: str) -> MarginalSpectra:
    return MarginalSpectra.from_dict(load_json(path))


# ---------------------------------------------------------------------------
# state mini-language:  ghz:3 | chi4 | bell | prod0:5 | mixed:3
#                       famA:p=0.5,a=1.2 | famB:p=..,a=.. | famC:p=..,q=..
#                       famD:a=1.5708,b=1.5708
#                       rand:3:seed=7[:rank=4]   (rank omitted -> pure)
# or a path to a density-matrix / recipe JSON file
# ---------------------------------------------------------------------------

_FAM_KEYS = {
    "famA": ("fam_A", {"p": "p", "a": "alpha", "alpha": "alpha"}),
    "famB": ("fam_B", {"p": "p", "a": "alpha", "alpha": "alpha"}),
    "famC": ("fam_C", {"p": "p", "q": "q"}),
    "famD": ("fam_D", {"a": "alpha", "b": "beta", "alpha": "alpha", "beta": "beta"}),
}


def _parse_kv(parts: list[str]) -> dict[str, float]:
    out: dict[str, float] = {}
    for chunk in parts:
        for item in chunk.split(","):
            if not item:
                continue
            if "=" not in item:
                raise ValidationError(f"expected key=value, got {item!r}")
            k, v = item.split("=", 1)
            try:
                out[k.strip()] = float(v)
            except ValueError as exc:
                raise ValidationError(f"bad numeric value in {item!r}") from exc
    return out


def parse_recipe(spec: str) -> StateRecipe:
    """Parse a mini-language token into a recipe (no file dispatch)."""
    head, *rest = spec.split(":")
    if head == "ghz":
        return StateRecipe("ghz", n=_int_arg(spec, rest))
    if head == "chi4":
        return StateRecipe("chi4", n=4)
    if head == "bell":
        return StateRecipe("bell_phi_plus", n=2)
    if head == "prod0":
        return StateRecipe("product_zero", n=_int_arg(spec, rest))
    if head == "mixed":
        return StateRecipe("maximally_mixed", n=_int_arg(spec, rest))
    if head in _FAM_KEYS:
        kind, keymap = _FAM_KEYS[head]
        raw = _parse_kv(rest)
        try:
            params = {keymap[k]: v for k, v in raw.items()}
        except KeyError as exc:
            raise ValidationError(f"unknown parameter {exc.args[0]!r} for {head}") from exc
        return StateRecipe(kind, n=3, params=params)
    if head == "rand":
        if not rest:
            raise ValidationError("rand requires a qubit count, e.g. rand:3:seed=7")
        n = _int_arg(spec, rest[:1])
        kv = _parse_kv(rest[1:])
        seed = int(kv.pop("seed", 0))
        rank = kv.pop("rank", None)
        if kv:
            raise ValidationError(f"unknown rand options {sorted(kv)}")
        if rank is None:
            return StateRecipe("random_pure", n=n, seed=seed)
        rank = int(rank)
        return StateRecipe("random_mixed", n=n, params={"rank": rank}, seed=seed)
    raise ValidationError(f"unrecognized state spec {spec!r}")


def _int_arg(spec: str, rest: list[str]) -> int:
    if len(rest) != 1:
        raise ValidationError(f"state spec {spec!r} needs exactly one qubit count")
    try:
        n = int(rest[0])
    except ValueError as exc:
        raise ValidationError(f"bad qubit count in {spec!r}") from exc
    if not 1 <= n <= 10:
        raise ValidationError(f"qubit count {n} outside 1..10")
    return n


def resolve_state(spec: str) -> tuple[DensityMatrix, str]:
    """Mini-language token or JSON file path -> (state, description)."""
    if os.path.exists(spec) or spec.endswith(".json"):
        d = load_json(spec)
        if "re" in d:
            return density_from_dict(d), f"file:{spec}"
        if "coeff" in d:
            from .pauli import bloch_reconstruct

            return bloch_reconstruct(bloch_from_dict(d)), f"file:{spec}"
        if "kind" in d:
            recipe = StateRecipe.from_dict(d)
            return make_state(recipe), f"file:{spec}"
        raise ValidationError(f"unrecognized JSON payload in {spec}")
    recipe = parse_recipe(spec)
    return make_state(recipe), spec


def format_float(x: float) -> str:
    """Fixed 17-significant-digit representation for lossless CSV round-trips."""
    if isinstance(x, float) and (math.isnan(x) or math.isinf(x)):
        return repr(x)
    return f"{float(x):.17g}"
