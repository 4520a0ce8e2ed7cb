"""Random-state scans over the 2- and 3-qubit polytopes and the boundary
family sweeps that trace out its facets.

Sampling is deterministic for a given seed regardless of worker count:
the stream is split into fixed-size blocks seeded from SeedSequence
children, and workers only decide who computes which block.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .pauli import DensityMatrix, ValidationError
from .polytopes import BISEP_A3, FULL_SEP_A3, Polytope, facets
from .sectors import sector_lengths, sector_lengths_batch
from .states import _complex_normals, fam_a, fam_b, fam_c, fam_d, inversion_mix

BLOCK = 2048


def thread_count() -> int:
    env = os.environ.get("SECTORLEN_THREADS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            raise ValidationError(f"SECTORLEN_THREADS={env!r} is not an integer")
    return min(4, os.cpu_count() or 1)


@dataclass(frozen=True)
class ScanRecord:
    kind: str
    body: tuple[float, ...]
    classification: str
    nearest_facet: str
    slack: float


@dataclass(frozen=True)
class ScanSummary:
    n: int
    seed: int
    samples: int
    violations: int
    facet_histogram: dict[str, int]
    min_slack: float


def _sample_block(n: int, rank: int, count: int, child: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(child))
    d = 2**n
    g = _complex_normals(rng, (count, d, rank))
    m = np.einsum("nir,njr->nij", g, g.conj())
    tr = np.einsum("nii->n", m).real
    mats = m / tr[:, None, None]
    return sector_lengths_batch(mats, n)


def run_scan(
    n: int,
    samples: int,
    seed: int,
    ranks: tuple[int, ...] | None = None,
    tol: float = 1e-9,
    workers: int | None = None,
) -> tuple[list[ScanRecord], ScanSummary, Polytope]:
    """Sample Wishart states of the given ranks, classify every sector
    vector against the polytope, and summarize violations."""
    if n not in (2, 3):
        raise ValidationError("scans cover the complete polytopes, n in {2, 3}")
    if samples < 1:
        raise ValidationError("samples must be positive")
    ranks = tuple(ranks) if ranks else tuple(range(1, 2**n + 1))
    if any(not 1 <= r <= 2**n for r in ranks):
        raise ValidationError(f"ranks {ranks} outside 1..{2**n}")
    poly = facets(n)

    # fixed block layout: block i draws from child i, rank cycles per block
    blocks = []
    remaining = samples
    idx = 0
    while remaining > 0:
        cnt = min(BLOCK, remaining)
        blocks.append((idx, ranks[idx % len(ranks)], cnt))
        remaining -= cnt
        idx += 1
    children = np.random.SeedSequence(seed).spawn(len(blocks))

    workers = workers or thread_count()
    def work(args):
        i, rank, cnt = args
        return _sample_block(n, rank, cnt, children[i])

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, blocks))
    else:
        parts = [work(b) for b in blocks]

    records: list[ScanRecord] = []
    hist = {f.name: 0 for f in poly.facets}
    violations = 0
    min_slack = math.inf
    for (i, rank, cnt), sect in zip(blocks, parts):
        for row in sect:
            body = tuple(float(x) for x in row[1:])
            cls = poly.contains(body, tol=tol)
            name, slack = poly.nearest_facet(body)
            if cls.status == "outside":
                violations += 1
            for b in cls.boundary_facets:
                hist[b] += 1
            min_slack = min(min_slack, slack)
            records.append(
                ScanRecord(f"rand:{n}:rank={rank}", body, cls.status, name, slack)
            )
    summary = ScanSummary(n, seed, samples, violations, hist, min_slack)
    return records, summary, poly


# ---------------------------------------------------------------------------
# boundary family sweeps (3-qubit chart)
# ---------------------------------------------------------------------------


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    return np.linspace(lo, hi, steps)


def family_sweep(steps: int = 50) -> list[tuple[str, tuple[float, float, float]]]:
    """Grid sweeps of the four boundary families; every output point lies on
    the state-inversion facet (families A-C) or the symmetric-subadditivity
    facet (family D)."""
    out = []
    ps = _grid(0.0, 1.0, steps)
    angles = _grid(0.0, math.pi, steps)
    for p in ps:
        for a in angles:
            v = sector_lengths(fam_a(p, a))
            out.append((f"famA:p={p:.6g},a={a:.6g}", v.body()))
            v = sector_lengths(fam_b(p, a))
            out.append((f"famB:p={p:.6g},a={a:.6g}", v.body()))
    for p in ps:
        for frac in _grid(0.0, 1.0, steps):
            q = min(p, 1.0 - p) * frac
            v = sector_lengths(fam_c(p, q))
            out.append((f"famC:p={p:.6g},q={q:.6g}", v.body()))
    # the D family's facet chart is highly nonuniform near degenerate
    # weights, so sweep it on a denser grid than the other families
    fine = _grid(0.0, math.pi, 2 * steps)
    for a in fine:
        for b in fine:
            v = sector_lengths(fam_d(a, b))
            out.append((f"famD:a={a:.6g},b={b:.6g}", v.body()))
    return out


def sweep_with_mixing(
    steps: int = 25, mix_steps: int = 5
) -> np.ndarray:
    """Family sweep states pushed into the interior with inversion mixing;
    returns an array of body coordinates whose hull fills the polytope."""
    pts = []
    ps = _grid(0.0, 1.0, steps)
    angles = _grid(0.0, math.pi, steps)
    mix = _grid(0.0, 0.5, mix_steps)
    makers = []
    for p in ps:
        for a in angles:
            makers.append(lambda p=p, a=a: fam_a(p, a))
            makers.append(lambda p=p, a=a: fam_b(p, a))
            makers.append(lambda p=p, a=a: fam_c(p, min(p, 1.0 - p) * a / math.pi))
            makers.append(lambda p=p, a=a: fam_d(math.pi * p, a))
    for make in makers:
        rho = make()
        for m in mix:
            v = sector_lengths(inversion_mix(rho, m) if m > 0 else rho)
            pts.append(v.body())
    return np.array(pts)


def facet_coverage(
    sweep: list[tuple[str, tuple[float, float, float]]] | None = None,
    cells: int = 12,
    tol: float = 1e-7,
) -> dict[str, float]:
    """Fraction of feasible grid cells on each nontrivial facet that contain
    at least one on-facet sweep point (projected to the facet's free
    coordinates A_1, A_2)."""
    if sweep is None:
        sweep = family_sweep()
    poly = facets(3)
    fmap = {f.name: f for f in poly.facets}
    targets = {"state_inv": fmap["state_inv"], "sssa": fmap["sssa"]}
    out = {}
    for name, facet in targets.items():
        on = [
            b for _, b in sweep if abs(facet.slack(b)) <= tol
        ]
        # feasible (A_1, A_2) region of the facet, scanned on cell centers
        covered = np.zeros((cells, cells), dtype=bool)
        feasible = np.zeros((cells, cells), dtype=bool)
        a1s = np.linspace(0.0, 3.0, cells + 1)
        a2s = np.linspace(0.0, 3.0, cells + 1)
        for i in range(cells):
            for j in range(cells):
                c1 = 0.5 * (a1s[i] + a1s[i + 1])
                c2 = 0.5 * (a2s[j] + a2s[j + 1])
                a3 = _facet_a3(name, c1, c2)
                if a3 is None:
                    continue
                body = (c1, c2, a3)
                if poly.contains(body, tol=1e-9).status != "outside":
                    feasible[i, j] = True
        for b in on:
            i = min(cells - 1, int(b[0] / 3.0 * cells))
            j = min(cells - 1, int(b[1] / 3.0 * cells))
            covered[i, j] = True
        hits = int((covered & feasible).sum())
        total = int(feasible.sum())
        out[name] = hits / total if total else 0.0
    return out


def _facet_a3(name: str, a1: float, a2: float) -> float | None:
    if name == "state_inv":  # 1 - A_1 + A_2 - A_3 = 0
        return 1.0 - a1 + a2
    if name == "sssa":  # A_1 + A_2 = 3(1 + A_3)
        return (a1 + a2) / 3.0 - 1.0
    return None


def hull_containment_check(
    samples: int = 10_000, seed: int = 3, steps: int = 25, tol: float = 1e-6
) -> tuple[bool, float]:
    """Tightness check: the convex hull of the boundary-family sweep plus
    inversion mixing must contain every randomly sampled sector vector.
    Returns (passes, worst signed distance outside a hull facet)."""
    from scipy.spatial import ConvexHull

    pts = sweep_with_mixing(steps=steps)
    eq = ConvexHull(pts).equations  # rows (a, b) with a.x + b <= 0 inside
    recs, _, _ = run_scan(3, samples, seed=seed)
    bodies = np.array([r.body for r in recs])
    worst = float((bodies @ eq[:, :3].T + eq[:, 3]).max())
    return worst <= tol, worst


def entanglement_summary(records: list[ScanRecord], n: int) -> dict[str, int]:
    """Counts of sampled points past the full-separability and
    biseparability thresholds (3-qubit chart only)."""
    if n != 3:
        return {}
    not_full = sum(1 for r in records if r.body[2] > FULL_SEP_A3 + 1e-9)
    gme = sum(1 for r in records if r.body[2] > BISEP_A3 + 1e-9)
    return {"beyond_full_separability": not_full, "beyond_biseparability": gme}
