"""Exact-rational linear programming over sector variables.

Programs are assembled from the MacWilliams/shadow forms plus auxiliary
caps; maximization returns a :class:`BoundCertificate` whose dual weights
replay the bound as a nonnegative combination of constraints, with zero
tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .forms import EQUALITY_ZERO, LinearForm, macwilliams_form, shadow_form
from .pauli import ValidationError
from .simplex import EQ, GE, INFEASIBLE, LE, OPTIMAL, UNBOUNDED, Row, solve


@dataclass(frozen=True)
class Constraint:
    """Named row over variables A_0..A_n: coeffs . A <sense> rhs."""

    name: str
    coeffs: tuple[Fraction, ...]
    sense: str
    rhs: Fraction

    @classmethod
    def from_form(cls, form: LinearForm) -> "Constraint":
        sense = EQ if form.kind == EQUALITY_ZERO else GE
        return cls(form.name, form.coeffs, sense, Fraction(0))


@dataclass
class LinearProgram:
    """Constraints over A_0..A_n; A_0 = 1 and A_k >= 0 are always implied."""

    n: int
    constraints: list[Constraint] = field(default_factory=list)

    def add(self, con: Constraint) -> None:
        if len(con.coeffs) != self.n + 1:
            raise ValidationError(f"constraint {con.name} has wrong arity")
        self.constraints.append(con)

    def add_form(self, form: LinearForm) -> None:
        self.add(Constraint.from_form(form))

    def names(self) -> list[str]:
        return [c.name for c in self.constraints]


@dataclass(frozen=True)
class BoundCertificate:
    """An exactly certified optimum of a sector LP.

    ``dual_weights`` maps constraint names to rational multipliers whose
    aggregate dominates the objective coefficientwise; replay() verifies
    this in rational arithmetic with zero tolerance.
    """

    n: int
    objective: tuple[Fraction, ...]
    sense: str  # "max" or "min"
    status: str
    value: Fraction | None
    dual_weights: dict[str, Fraction] | None
    tight_point: tuple[Fraction, ...] | None
    constraints: tuple[Constraint, ...]

    def replay(self) -> bool:
        """Exactly re-derive the bound from the dual weights."""
        if self.status != OPTIMAL:
            return False
        sign = 1 if self.sense == "max" else -1
        obj = [sign * c for c in self.objective]
        total = Fraction(0)
        for con in self.constraints:
            w = self.dual_weights.get(con.name, Fraction(0))
            if con.sense == LE and w < 0:
                return False
            if con.sense == GE and w > 0:
                return False
            total += w * con.rhs
        for j in range(self.n + 1):
            agg = sum(
                self.dual_weights.get(con.name, Fraction(0)) * con.coeffs[j]
                for con in self.constraints
            )
            if agg < obj[j]:  # A_j >= 0 absorbs any slack
                return False
        if self.tight_point is not None:
            attained = sum(c * x for c, x in zip(obj, self.tight_point))
            if attained != sign * self.value:
                return False
            for con in self.constraints:
                lhs = sum(c * x for c, x in zip(con.coeffs, self.tight_point))
                if con.sense == EQ and lhs != con.rhs:
                    return False
                if con.sense == LE and lhs > con.rhs:
                    return False
                if con.sense == GE and lhs < con.rhs:
                    return False
            if any(x < 0 for x in self.tight_point):
                return False
        return total == sign * self.value

    def describe(self) -> str:
        lines = [
            f"objective: {_poly(self.objective)} ({self.sense})",
            f"status: {self.status}",
        ]
        if self.status == OPTIMAL:
            lines.append(f"value: {self.value}")
            for name, w in sorted(self.dual_weights.items()):
                if w != 0:
                    lines.append(f"  dual[{name}] = {w}")
            if self.tight_point is not None:
                pt = ", ".join(str(x) for x in self.tight_point)
                lines.append(f"tight point: ({pt})")
            lines.append(f"replay: {'exact' if self.replay() else 'FAILED'}")
        return "\n".join(lines)


def _poly(coeffs: Sequence[Fraction]) -> str:
    terms = [f"{c}*A_{j}" for j, c in enumerate(coeffs) if c != 0]
    return " + ".join(terms) if terms else "0"


def _unit(n: int, k: int, scale: int = 1) -> tuple[Fraction, ...]:
    return tuple(Fraction(scale if j == k else 0) for j in range(n + 1))


def normalization_constraint(n: int) -> Constraint:
    return Constraint("A_0=1", _unit(n, 0), EQ, Fraction(1))


def a1_cap(n: int) -> Constraint:
    return Constraint("A_1<=n", _unit(n, 1), LE, Fraction(n))


def a2_cap(n: int) -> Constraint:
    return Constraint("A_2<=C(n,2)", _unit(n, 2), LE, Fraction(comb(n, 2)))


def odd_zero_constraints(n: int) -> list[Constraint]:
    return [
        Constraint(f"A_{k}=0", _unit(n, k), EQ, Fraction(0))
        for k in range(1, n + 1, 2)
    ]


def build_program(
    n: int,
    assumptions: Iterable[str] = (),
    extra_forms: Iterable[LinearForm] = (),
) -> LinearProgram:
    """Assemble a sector LP from assumption tokens.

    Tokens: ``purity`` (sum A_j = 2^n), ``macwilliams`` (all M_m = 0),
    ``shadows`` (all B_k >= 0), ``shadow:K`` (single B_K), ``a1_cap``,
    ``a2_cap``, ``odd_zero``.
    """
    lp = LinearProgram(n)
    lp.add(normalization_constraint(n))
    seen = set()

    def add_once(con: Constraint) -> None:
        if con.name not in seen:
            seen.add(con.name)
            lp.add(con)

    for token in assumptions:
        if token == "purity":
            add_once(Constraint.from_form(macwilliams_form(0, n)))
        elif token == "macwilliams":
            for m in range(n + 1):
                add_once(Constraint.from_form(macwilliams_form(m, n)))
        elif token == "shadows":
            for k in range(n + 1):
                add_once(Constraint.from_form(shadow_form(k, n)))
        elif token.startswith("shadow:"):
            k = int(token.split(":", 1)[1])
            add_once(Constraint.from_form(shadow_form(k, n)))
        elif token.startswith("macwilliams:"):
            m = int(token.split(":", 1)[1])
            add_once(Constraint.from_form(macwilliams_form(m, n)))
        elif token == "a1_cap":
            add_once(a1_cap(n))
        elif token == "a2_cap":
            add_once(a2_cap(n))
        elif token == "odd_zero":
            for con in odd_zero_constraints(n):
                add_once(con)
        else:
            raise ValidationError(f"unknown assumption {token!r}")
    for form in extra_forms:
        add_once(Constraint.from_form(form))
    return lp


def _objective_vector(n: int, objective) -> tuple[Fraction, ...]:
    if isinstance(objective, int):
        return _unit(n, objective)
    obj = tuple(Fraction(v) for v in objective)
    if len(obj) != n + 1:
        raise ValidationError("objective has wrong arity")
    return obj


def _solve(lp: LinearProgram, obj: tuple[Fraction, ...], sense: str) -> BoundCertificate:
    sign = 1 if sense == "max" else -1
    c = [sign * v for v in obj]
    rows = [Row(con.coeffs, con.sense, con.rhs) for con in lp.constraints]
    res = solve(c, rows)
    if res.status == INFEASIBLE:
        raise ValidationError("linear program is infeasible")
    if res.status == UNBOUNDED:
        return BoundCertificate(
            lp.n, obj, sense, UNBOUNDED, None, None, None, tuple(lp.constraints)
        )
    weights = {
        con.name: y for con, y in zip(lp.constraints, res.duals)
    }
    return BoundCertificate(
        lp.n,
        obj,
        sense,
        OPTIMAL,
        sign * res.value,
        weights,
        res.x,
        tuple(lp.constraints),
    )


def maximize(lp: LinearProgram, objective) -> BoundCertificate:
    """Exact maximum of a linear objective (index of A_k, or a coefficient
    vector over A_0..A_n)."""
    return _solve(lp, _objective_vector(lp.n, objective), "max")


def minimize(lp: LinearProgram, objective) -> BoundCertificate:
    return _solve(lp, _objective_vector(lp.n, objective), "min")


@dataclass(frozen=True)
class LiftedBound:
    """A bound proved at a base size and lifted one qubit at a time using
    the marginal-averaging recursion A_k <= (m+1)/(m+1-k) C(m,k)."""

    k: int
    n: int
    value: Fraction
    base: BoundCertificate
    steps: tuple[tuple[int, Fraction], ...]  # (qubit count, bound) per step

    def replay(self) -> bool:
        if not self.base.replay():
            return False
        m0 = self.steps[0][0]
        val = self.base.value
        if self.steps[0][1] != val or val != comb(m0, self.k):
            return False
        for (m_prev, v_prev), (m, v) in zip(self.steps, self.steps[1:]):
            if m != m_prev + 1:
                return False
            if v != v_prev * (m_prev + 1) / Fraction(m_prev + 1 - self.k):
                return False
        return self.steps[-1] == (self.n, self.value)


def _lift(k: int, base_n: int, base: BoundCertificate, n: int) -> LiftedBound:
    steps = [(base_n, base.value)]
    val = base.value
    for m in range(base_n, n):
        val = val * (m + 1) / Fraction(m + 1 - k)
        steps.append((m + 1, val))
    return LiftedBound(k, n, val, base, tuple(steps))


def prove_a2(n: int) -> BoundCertificate | LiftedBound:
    """A_2 <= C(n, 2) for n >= 3: exact LP at n = 3, lifted for larger n."""
    if n < 3:
        raise ValidationError("the A_2 bound C(n,2) requires n >= 3")
    base = maximize(build_program(3, ["macwilliams"]), 2)
    if n == 3:
        return base
    return _lift(2, 3, base, n)


def prove_a3(n: int) -> BoundCertificate | LiftedBound:
    """A_3 bound: 4 (n=3), 8 (n=4), C(n,3) for n >= 5 via the n=5 base."""
    if n < 3:
        raise ValidationError("A_3 needs n >= 3")
    if n == 3 or n == 4:
        return maximize(build_program(n, ["purity", "shadow:0"]), 3)
    base = maximize(
        build_program(
            5, ["macwilliams:0", "macwilliams:1", "macwilliams:2", "shadow:1"]
        ),
        3,
    )
    if n == 5:
        return base
    return _lift(3, 5, base, n)


EVEN_SHADOW_SETS = {4: (1,), 6: (1, 3), 8: (1, 3, 5), 10: (1, 3, 5, 7)}


def prove_an_even(n: int) -> BoundCertificate:
    """A_n <= 2^(n-1) + 1 for even n in 4..10, from the fixed shadow sets
    after zeroing the odd sectors and capping A_2."""
    if n not in EVEN_SHADOW_SETS:
        raise ValidationError("even-n full-correlation bound covers n in {4,6,8,10}")
    tokens = ["odd_zero", "a2_cap"] + [f"shadow:{k}" for k in EVEN_SHADOW_SETS[n]]
    return maximize(build_program(n, tokens), n)


def prove_an_odd(n: int) -> BoundCertificate:
    """A_n <= 2^(n-1) for odd n, from purity plus the inversion inequality."""
    if n < 3 or n % 2 == 0:
        raise ValidationError("odd-n full-correlation bound needs odd n >= 3")
    return maximize(build_program(n, ["purity", "shadow:0"]), n)


def corollary2_form(n: int) -> LinearForm:
    """C(n,3) - (1/3)C(n-1,2) A_1 - ((n-2)/3) A_2 + A_3 >= 0 (n >= 3)."""
    if n < 3:
        raise ValidationError("needs n >= 3")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[0] = Fraction(comb(n, 3))
    coeffs[1] = -Fraction(comb(n - 1, 2), 3)
    coeffs[2] = -Fraction(n - 2, 3)
    coeffs[3] = Fraction(1)
    return LinearForm("mutual_third_order", n, tuple(coeffs), "geq_zero")


@dataclass(frozen=True)
class InsufficiencyReport:
    """Feasibility evidence that a target inequality does not follow from
    the assembled constraint set."""

    n: int
    target: str
    optimum: Fraction | None
    status: str
    witness: tuple[Fraction, ...] | None
    certificate: BoundCertificate

    def gap_demonstrated(self) -> bool:
        if self.status == UNBOUNDED:
            return True
        if self.target.startswith("A_"):
            k = int(self.target.split("_")[1])
            return self.optimum > comb(self.n, k)
        return self.optimum < 0


def shadow_insufficiency_report(n: int, k: int) -> InsufficiencyReport:
    """Maximize A_k under {MacWilliams, all shadows, A_2 cap}; an optimum
    above C(n,k) shows those constraints cannot prove A_k <= C(n,k)."""
    lp = build_program(n, ["macwilliams", "shadows", "a2_cap"])
    cert = maximize(lp, k)
    return InsufficiencyReport(
        n, f"A_{k}", cert.value, cert.status, cert.tight_point, cert
    )


def mutual_bound_strength_report(n: int) -> InsufficiencyReport:
    """Minimize the third-order mutual-entropy form under shadows only; a
    negative optimum shows the form is strictly stronger than the shadows."""
    lp = build_program(n, ["shadows", "a1_cap"])
    cert = minimize(lp, corollary2_form(n).coeffs)
    return InsufficiencyReport(
        n, "mutual_third_order", cert.value, cert.status, cert.tight_point, cert
    )
