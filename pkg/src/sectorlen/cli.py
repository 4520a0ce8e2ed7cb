"""Command-line interface: compute, bounds, polytope, scan, verify,
detect and represent.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 invalid input.
Every run prints the seed it used; --json switches to machine output.
"""
from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import bounds as lp_bounds
from . import scan as scan_mod
from . import serialize as ser
from . import verify as verify_mod
from .entangle import detect as detect_sectors, representability_check
from .pauli import ValidationError
from .polytopes import facets, implied_inequalities
from .sectors import mutual_entropies, sector_lengths, sectors_to_entropies

EXIT_CHECK_FAILURE = 1
EXIT_VALIDATION = 3


def _validation_guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_VALIDATION)
        except (OSError, json.JSONDecodeError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_VALIDATION)

    return wrapper


def _emit_seed(seed: int, as_json: bool) -> None:
    if not as_json:
        click.echo(f"# seed: {seed}")


@click.group()
def main():
    """Sector lengths of multi-qubit states: computation, exact bounds,
    polytopes and verification suites."""


@main.command()
@click.argument("state")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["sector", "entropy", "mutual", "all"]),
    default="all",
    show_default=True,
)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@_validation_guard
def compute(state: str, fmt: str, as_json: bool):
    """Sector lengths and derived coordinates of STATE."""
    rho, desc = ser.resolve_state(state)
    v = sector_lengths(rho)
    payload: dict = {"state": desc, "n": v.n, "seed": 0}
    if fmt in ("sector", "all"):
        payload["A"] = list(v.a)
    if fmt in ("entropy", "all"):
        payload["S_L"] = list(sectors_to_entropies(v).s)
    if fmt in ("mutual", "all"):
        payload["I_L"] = list(mutual_entropies(sectors_to_entropies(v)).i)
    if as_json:
        click.echo(json.dumps(payload, indent=2))
        return
    _emit_seed(0, as_json)
    click.echo(f"state: {desc} (n = {v.n})")
    for key, label in (("A", "A"), ("S_L", "S_L"), ("I_L", "I_L")):
        if key in payload:
            vals = ", ".join(ser.format_float(x) for x in payload[key])
            click.echo(f"{label}: ({vals})")


def _describe_certificate(cert) -> str:
    if isinstance(cert, lp_bounds.LiftedBound):
        lines = [cert.base.describe(), "lift steps:"]
        lines += [f"  n = {m}: A_{cert.k} <= {v}" for m, v in cert.steps]
        return "\n".join(lines)
    return cert.describe()


_TIGHT_STATES = {
    ("a2", None): lambda n: f"prod0:{n}",
    ("a3", None): lambda n: {3: "ghz:3", 4: "chi4"}.get(n, f"prod0:{n}"),
    ("an", None): lambda n: f"ghz:{n}",
}


@main.command("bounds")
@click.option("--n", "n", type=int, required=True)
@click.option(
    "--prove",
    type=click.Choice(["a2", "a3", "an", "corollary2"]),
    required=True,
)
@click.option("--json", "as_json", is_flag=True)
@_validation_guard
def bounds_cmd(n: int, prove: str, as_json: bool):
    """Derive a sector bound with an exact, replayable LP certificate."""
    if prove == "corollary2":
        form = lp_bounds.corollary2_form(n)
        report = lp_bounds.mutual_bound_strength_report(n)
        payload = {
            "seed": 0,
            "target": "corollary2",
            "n": n,
            "form": form.to_json(),
            "min_under_shadows": str(report.optimum),
            "nonnegative_under_shadows": not report.gap_demonstrated(),
        }
        if as_json:
            click.echo(json.dumps(payload, indent=2))
        else:
            _emit_seed(0, as_json)
            click.echo(f"third-order mutual-information form at n = {n}:")
            click.echo(f"  minimum under shadow constraints: {report.optimum}")
            sign = ">= 0" if not report.gap_demonstrated() else "< 0 (not implied)"
            click.echo(f"  sign under shadows alone: {sign}")
        return

    if prove == "a2":
        cert = lp_bounds.prove_a2(n)
    elif prove == "a3":
        cert = lp_bounds.prove_a3(n)
    else:
        cert = lp_bounds.prove_an_even(n) if n % 2 == 0 else lp_bounds.prove_an_odd(n)
    if not cert.replay():
        click.echo("certificate replay failed", err=True)
        sys.exit(EXIT_CHECK_FAILURE)
    tight = _TIGHT_STATES[(prove, None)](n)
    desc = _describe_certificate(cert)
    if as_json:
        click.echo(
            json.dumps(
                {
                    "seed": 0,
                    "target": prove,
                    "n": n,
                    "bound": str(cert.value),
                    "replayed": True,
                    "tight_state": tight,
                    "certificate": desc,
                },
                indent=2,
            )
        )
    else:
        _emit_seed(0, as_json)
        click.echo(desc)
        click.echo(f"tight state: {tight}")


@main.command("polytope")
@click.option("--n", "n", type=click.IntRange(2, 3), required=True)
@click.option("--point", default=None, help="Comma-separated body A_1,..,A_n to classify.")
@click.option("--json", "as_json", is_flag=True)
@_validation_guard
def polytope_cmd(n: int, point: str | None, as_json: bool):
    """Facets, vertices and membership of the complete polytope."""
    poly = facets(n)
    payload: dict = {
        "seed": 0,
        "n": n,
        "facets": [f.to_json() for f in poly.facets],
        "vertices": [[str(x) for x in v] for v in poly.vertices],
    }
    if n == 3:
        implied = implied_inequalities(n)
        payload["implied"] = {
            name: str(cert.value) for name, cert in implied.items()
        }
    if point is not None:
        try:
            body = tuple(float(x) for x in point.split(","))
        except ValueError:
            raise ValidationError(f"malformed point {point!r}")
        cls = poly.contains(body)
        payload["point"] = {
            "body": list(body),
            "status": cls.status,
            "boundary_facets": list(cls.boundary_facets),
            "violations": list(cls.violations),
            "slacks": {k: float(s) for k, s in cls.slacks.items()},
        }
    if as_json:
        click.echo(json.dumps(payload, indent=2))
        return
    _emit_seed(0, as_json)
    click.echo(f"polytope n = {n}: {len(poly.facets)} facets, {len(poly.vertices)} vertices")
    for f in poly.facets:
        terms = " + ".join(
            f"{c}*A_{k + 1}" for k, c in enumerate(f.coeffs) if c != 0
        )
        click.echo(f"  {f.name}: {f.offset} + {terms} >= 0")
    click.echo("vertices: " + ", ".join("(" + ",".join(map(str, v)) + ")" for v in poly.vertices))
    if point is not None:
        p = payload["point"]
        click.echo(f"point {point}: {p['status']}")
        if p["boundary_facets"]:
            click.echo("  on facets: " + ", ".join(p["boundary_facets"]))
        if p["violations"]:
            click.echo("  violates: " + ", ".join(p["violations"]))


@main.command("scan")
@click.option("--n", "n", type=click.IntRange(2, 3), default=3, show_default=True)
@click.option("--samples", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--ranks", default="", help="Comma-separated ranks (default: all).")
@click.option("--out", "out_path", default=None, help="CSV output path.")
@click.option("--families", is_flag=True, help="Include the boundary family sweeps (n = 3).")
@click.option("--plot", "do_plot", is_flag=True, help="Render scatter figures next to the CSV.")
@click.option("--json", "as_json", is_flag=True)
@_validation_guard
def scan_cmd(
    n: int,
    samples: int,
    seed: int,
    ranks: str,
    out_path: str | None,
    families: bool,
    do_plot: bool,
    as_json: bool,
):
    """Sample random states, classify against the polytope, emit CSV."""
    rank_list = tuple(int(r) for r in ranks.split(",") if r.strip()) or None
    records, summary, poly = scan_mod.run_scan(n, samples, seed, rank_list)
    rows = [(f"{seed}", r.kind, r.body, r.classification, r.nearest_facet, r.slack) for r in records]

    coverage = None
    if families:
        if n != 3:
            raise ValidationError("family sweeps exist for n = 3")
        sweep = scan_mod.family_sweep()
        coverage = scan_mod.facet_coverage(sweep)
        for kind, body in sweep:
            cls = poly.contains(body)
            name, slack = poly.nearest_facet(body)
            rows.append((f"{seed}", kind, body, cls.status, name, slack))

    artifacts = {}
    if out_path:
        header = ["seed", "kind"] + [f"A_{k}" for k in range(1, n + 1)] + [
            "classification",
            "nearest_facet",
            "slack",
        ]
        with open(out_path, "w") as fh:
            fh.write(",".join(header) + "\n")
            for s, kind, body, cls, name, slack in rows:
                cells = [s, kind] + [ser.format_float(x) for x in body]
                cells += [cls, name, ser.format_float(slack)]
                fh.write(",".join(cells) + "\n")
        artifacts["csv"] = out_path
        facet_path = str(Path(out_path).with_suffix("")) + "_facets.json"
        ser.dump_json(facet_path, {"n": n, "facets": [f.to_json() for f in poly.facets]})
        artifacts["facets"] = facet_path
        if do_plot:
            from .plots import plot_scan

            png = str(Path(out_path).with_suffix("")) + "_scatter.png"
            pts = np.array([row[2] for row in rows])
            artifacts["figure"] = plot_scan(pts, poly, png)
    elif do_plot:
        raise ValidationError("--plot requires --out to locate the figure file")

    payload = {
        "seed": seed,
        "n": n,
        "samples": summary.samples,
        "violations": summary.violations,
        "min_slack": summary.min_slack,
        "facet_saturation": summary.facet_histogram,
        "entanglement": scan_mod.entanglement_summary(records, n),
        "artifacts": artifacts,
    }
    if coverage is not None:
        payload["facet_coverage"] = coverage
    if as_json:
        click.echo(json.dumps(payload, indent=2))
    else:
        _emit_seed(seed, as_json)
        click.echo(
            f"scanned {summary.samples} states (n = {n}): "
            f"{summary.violations} violations, min slack {summary.min_slack:.3g}"
        )
        if coverage is not None:
            for k, val in coverage.items():
                click.echo(f"facet coverage {k}: {100 * val:.1f}%")
        for k, path in artifacts.items():
            click.echo(f"wrote {k}: {path}")
    if summary.violations:
        sys.exit(EXIT_CHECK_FAILURE)


@main.command("verify")
@click.option(
    "--suite",
    type=click.Choice(list(verify_mod.SUITES)),
    default="all",
    show_default=True,
)
@click.option("--quick", is_flag=True, help="Smaller sample counts.")
@click.option("--json", "as_json", is_flag=True)
@_validation_guard
def verify_cmd(suite: str, quick: bool, as_json: bool):
    """Run a verification suite; exit 0 iff every check passes."""
    results = verify_mod.run_suite(suite, quick=quick)
    ok = all(r.status == "pass" for r in results)
    if as_json:
        click.echo(
            json.dumps(
                {"seed": 0, "suite": suite, "passed": ok, "checks": [r.to_dict() for r in results]},
                indent=2,
            )
        )
    else:
        _emit_seed(0, as_json)
        for r in results:
            click.echo(f"{r.name}: {r.status} (worst {r.worst:.3g}, samples {r.samples})")
        click.echo(f"suite {suite}: {'pass' if ok else 'FAIL'}")
    if not ok:
        sys.exit(EXIT_CHECK_FAILURE)


@main.command("detect")
@click.argument("state")
@click.option("--json", "as_json", is_flag=True)
@_validation_guard
def detect_cmd(state: str, as_json: bool):
    """Entanglement verdict from the sector vector of STATE."""
    rho, desc = ser.resolve_state(state)
    v = sector_lengths(rho)
    res = detect_sectors(v)
    payload = {
        "seed": 0,
        "state": desc,
        "criterion": res.criterion_used,
        "threshold": res.threshold,
        "value": res.value,
        "entangled": bool(res.entangled),
        "gme_detected": bool(res.gme_detected),
        "note": res.note,
    }
    if as_json:
        click.echo(json.dumps(payload, indent=2))
        return
    _emit_seed(0, as_json)
    click.echo(f"state: {desc}")
    click.echo(f"criterion: {res.criterion_used}")
    click.echo(f"value: {res.value:.6g} (threshold {res.threshold:g})")
    verdict = "GME detected" if res.gme_detected else (
        "entangled" if res.entangled else "no flag"
    )
    click.echo(f"verdict: {verdict}")
    if res.note:
        click.echo(f"note: {res.note}")


@main.command("represent")
@click.argument("spectra_file")
@click.option("--pivot", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@_validation_guard
def represent_cmd(spectra_file: str, pivot: int, as_json: bool):
    """Spectral representability check for a marginal-spectra file."""
    spectra = ser.spectra_from_file(spectra_file)
    res = representability_check(spectra, pivot)
    payload = {
        "seed": 0,
        "file": spectra_file,
        "pivot": pivot,
        "lhs": res.lhs,
        "rhs": res.rhs,
        "passes": bool(res.passes),
    }
    if as_json:
        click.echo(json.dumps(payload, indent=2))
    else:
        _emit_seed(0, as_json)
        click.echo(
            f"pivot {pivot}: lhs {res.lhs:.6g} {'<=' if res.passes else '>'} rhs {res.rhs:.6g}"
        )
        click.echo("representable: " + ("yes (condition satisfied)" if res.passes else "NO"))
    if not res.passes:
        sys.exit(EXIT_CHECK_FAILURE)


if __name__ == "__main__":
    main()
