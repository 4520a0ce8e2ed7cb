"""The complete 2- and 3-qubit sector-length polytopes: facet lists, exact
vertex enumeration, membership classification and entanglement threshold
flags for scan output.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .bounds import Constraint, LinearProgram, maximize, minimize, normalization_constraint
from .pauli import ValidationError
from .sectors import SectorVector
from .simplex import EQ, GE, LE

INSIDE = "inside"
BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class Facet:
    """Inequality sum_k c_k A_k + c0 >= 0 over the body (A_1, ..., A_n)."""

    name: str
    offset: Fraction
    coeffs: tuple[Fraction, ...]

    def slack(self, body: tuple[float, ...]) -> float:
        return float(self.offset) + sum(
            float(c) * float(x) for c, x in zip(self.coeffs, body)
        )

    def slack_exact(self, body: tuple[Fraction, ...]) -> Fraction:
        return self.offset + sum(
            (c * x for c, x in zip(self.coeffs, body)), start=Fraction(0)
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "offset": str(self.offset),
            "coeffs": [str(c) for c in self.coeffs],
        }


@dataclass(frozen=True)
class Classification:
    status: str
    slacks: dict[str, float]
    boundary_facets: tuple[str, ...]
    violations: tuple[str, ...]


@dataclass(frozen=True)
class Polytope:
    n: int
    facets: tuple[Facet, ...]
    vertices: tuple[tuple[Fraction, ...], ...]

    def contains(self, v: SectorVector | tuple, tol: float = 1e-9) -> Classification:
        body = v.body() if isinstance(v, SectorVector) else tuple(v)
        if len(body) != self.n:
            raise ValidationError("sector vector dimension mismatch")
        slacks = {f.name: f.slack(body) for f in self.facets}
        violations = tuple(k for k, s in slacks.items() if s < -tol)
        boundary = tuple(
            k for k, s in slacks.items() if abs(s) <= tol and k not in violations
        )
        status = OUTSIDE if violations else (BOUNDARY if boundary else INSIDE)
        return Classification(status, slacks, boundary, violations)

    def nearest_facet(self, body: tuple[float, ...]) -> tuple[str, float]:
        slacks = {f.name: f.slack(body) for f in self.facets}
        name = min(slacks, key=lambda k: slacks[k])
        return name, slacks[name]


def _positivity(n: int) -> list[Facet]:
    return [
        Facet(
            f"A_{k}>=0",
            Fraction(0),
            tuple(Fraction(1 if j == k else 0) for j in range(1, n + 1)),
        )
        for k in range(1, n + 1)
    ]


def _nontrivial_facets(n: int) -> list[Facet]:
    if n == 2:
        return [
            Facet("purity", Fraction(3), (Fraction(-1), Fraction(-1))),
            Facet("state_inv", Fraction(1), (Fraction(-1), Fraction(1))),
        ]
    if n == 3:
        return [
            Facet("state_inv", Fraction(1), (Fraction(-1), Fraction(1), Fraction(-1))),
            Facet("a1_cap", Fraction(3), (Fraction(-1), Fraction(0), Fraction(0))),
            Facet("schmidt_A2", Fraction(3), (Fraction(0), Fraction(-1), Fraction(0))),
            Facet("sssa", Fraction(3), (Fraction(-1), Fraction(-1), Fraction(3))),
        ]
    raise ValidationError("complete facet lists exist for n in {2, 3} only")


def _enumerate_vertices(facet_list: list[Facet], n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Exact vertex enumeration: intersect every n-subset of facet planes,
    keep intersection points satisfying all facets."""
    verts: list[tuple[Fraction, ...]] = []
    for subset in itertools.combinations(facet_list, n):
        mat = [list(f.coeffs) for f in subset]
        rhs = [-f.offset for f in subset]
        sol = _solve_exact(mat, rhs)
        if sol is None:
            continue
        pt = tuple(sol)
        if all(f.slack_exact(pt) >= 0 for f in facet_list) and pt not in verts:
            verts.append(pt)
    verts.sort()
    return tuple(verts)


def _solve_exact(mat: list[list[Fraction]], rhs: list[Fraction]):
    n = len(mat)
    a = [row[:] + [r] for row, r in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None  # singular: planes do not meet in a point
        a[col], a[piv] = a[piv], a[col]
        lead = a[col][col]
        a[col] = [v / lead for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def facets(n: int) -> Polytope:
    """The full attainable-region polytope for n in {2, 3}."""
    fl = _nontrivial_facets(n) + _positivity(n)
    return Polytope(n, tuple(fl), _enumerate_vertices(fl, n))


def facet_lp(poly: Polytope) -> LinearProgram:
    """The polytope facets as an LP over (A_0, ..., A_n) with A_0 = 1."""
    lp = LinearProgram(poly.n)
    lp.add(normalization_constraint(poly.n))
    for f in poly.facets:
        coeffs = (f.offset,) + f.coeffs
        lp.add(Constraint(f.name, coeffs, GE, Fraction(0)))
    return lp


def implied_inequalities(n: int = 3):
    """Certificates that the superseded inequality and the purity bound
    follow exactly from the facet list (n = 3)."""
    poly = facets(n)
    lp = facet_lp(poly)
    # 9 - 5 A_1 + A_2 + 3 A_3 >= 0
    old_form = (Fraction(9), Fraction(-5), Fraction(1), Fraction(3))
    c_old = minimize(lp, old_form)
    # purity: 1 + A_1 + A_2 + A_3 <= 8
    total = (Fraction(1),) * (n + 1)
    c_purity = maximize(lp, total)
    return {"superseded_shadow": c_old, "purity": c_purity}


# n = 3 entanglement thresholds on A_3: above 1 rules out full separability,
# above 3 rules out biseparability.
FULL_SEP_A3 = 1.0
BISEP_A3 = 3.0


@dataclass(frozen=True)
class EntanglementFlags:
    not_fully_separable: bool
    gme_detected: bool


def entanglement_lines(v: SectorVector | tuple, n: int = 3, tol: float = 1e-9) -> EntanglementFlags:
    """Threshold flags for the 3-qubit chart."""
    if n != 3:
        raise ValidationError("entanglement lines are defined for n = 3")
    body = v.body() if isinstance(v, SectorVector) else tuple(v)
    if len(body) != 3:
        raise ValidationError("expected a 3-qubit sector vector")
    a3 = body[2]
    return EntanglementFlags(
        not_fully_separable=a3 > FULL_SEP_A3 + tol,
        gme_detected=a3 > BISEP_A3 + tol,
    )
