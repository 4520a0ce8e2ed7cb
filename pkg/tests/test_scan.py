import pytest

from sectorlen.pauli import ValidationError
from sectorlen.scan import (
    entanglement_summary,
    facet_coverage,
    family_sweep,
    hull_containment_check,
    run_scan,
    sweep_with_mixing,
    thread_count,
)


def test_run_scan_basic():
    samples = 2048 * 8  # one block per rank
    records, summary, poly = run_scan(3, samples, seed=1)
    assert summary.samples == samples
    assert len(records) == samples
    assert summary.violations == 0
    kinds = {r.kind for r in records}
    assert any("rank=1" in k for k in kinds)
    assert any("rank=8" in k for k in kinds)


def test_run_scan_deterministic_across_workers():
    r1, _, _ = run_scan(3, 3000, seed=9, workers=1)
    r4, _, _ = run_scan(3, 3000, seed=9, workers=4)
    assert r1 == r4


def test_run_scan_rank_filter():
    records, _, _ = run_scan(2, 500, seed=2, ranks=(1,))
    assert all(r.kind.endswith("rank=1") for r in records)
    with pytest.raises(ValidationError):
        run_scan(2, 100, seed=0, ranks=(9,))
    with pytest.raises(ValidationError):
        run_scan(4, 100, seed=0)


def test_family_sweep_on_facets():
    sweep = family_sweep(steps=12)
    from sectorlen.polytopes import facets

    poly = facets(3)
    fmap = {f.name: f for f in poly.facets}
    for kind, body in sweep:
        facet = fmap["sssa"] if kind.startswith("famD") else fmap["state_inv"]
        assert abs(facet.slack(body)) < 1e-9, kind


def test_facet_coverage_full():
    cov = facet_coverage(family_sweep(steps=50))
    assert cov["state_inv"] == 1.0
    assert cov["sssa"] == 1.0


def test_hull_containment():
    ok, worst = hull_containment_check(samples=2000, seed=5, steps=20)
    assert ok, worst


def test_sweep_with_mixing_shape():
    pts = sweep_with_mixing(steps=6, mix_steps=3)
    assert pts.shape[1] == 3
    assert len(pts) == 6 * 6 * 4 * 3


def test_entanglement_summary():
    records, _, _ = run_scan(3, 500, seed=3, ranks=(1,))
    summary = entanglement_summary(records, 3)
    assert set(summary) == {"beyond_full_separability", "beyond_biseparability"}
    assert summary["beyond_full_separability"] >= summary["beyond_biseparability"]


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("SECTORLEN_THREADS", "2")
    assert thread_count() == 2
    monkeypatch.setenv("SECTORLEN_THREADS", "zebra")
    with pytest.raises(ValidationError):
        thread_count()
    monkeypatch.delenv("SECTORLEN_THREADS")
    assert thread_count() >= 1
