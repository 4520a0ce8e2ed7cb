from fractions import Fraction
from math import comb

import pytest

from sectorlen.bounds import (
    BoundCertificate,
    LiftedBound,
    build_program,
    corollary2_form,
    maximize,
    mutual_bound_strength_report,
    prove_a2,
    prove_a3,
    prove_an_even,
    prove_an_odd,
    shadow_insufficiency_report,
)
from sectorlen.pauli import ValidationError
from sectorlen.sectors import sector_lengths
from sectorlen.simplex import INFEASIBLE, OPTIMAL, Row, solve
from sectorlen.states import chi4, ghz, product_zero


def test_simplex_small_lp():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6
    res = solve(
        [Fraction(1), Fraction(1)],
        [
            Row((Fraction(1), Fraction(2)), "<=", Fraction(4)),
            Row((Fraction(3), Fraction(1)), "<=", Fraction(6)),
        ],
    )
    assert res.status == OPTIMAL
    assert res.value == Fraction(14, 5)


def test_simplex_infeasible():
    res = solve(
        [Fraction(1)],
        [
            Row((Fraction(1),), "<=", Fraction(-1)),
        ],
    )
    assert res.status == INFEASIBLE


def test_a2_bound_exact_and_lifted():
    c3 = prove_a2(3)
    assert isinstance(c3, BoundCertificate)
    assert c3.value == 3 and c3.replay()
    for n in range(4, 11):
        c = prove_a2(n)
        assert isinstance(c, LiftedBound)
        assert c.value == comb(n, 2)
        assert c.replay()
    with pytest.raises(ValidationError):
        prove_a2(2)


def test_a3_bounds():
    assert prove_a3(3).value == 4
    assert prove_a3(4).value == 8
    assert prove_a3(5).value == 10
    c7 = prove_a3(7)
    assert c7.value == comb(7, 3)
    assert c7.replay()


def test_a3_tight_states():
    assert abs(sector_lengths(ghz(3))[3] - 4) < 1e-9
    assert abs(sector_lengths(chi4())[3] - 8) < 1e-9
    assert abs(sector_lengths(product_zero(5))[3] - 10) < 1e-9


def test_full_correlation_bounds():
    for n in (4, 6, 8, 10):
        c = prove_an_even(n)
        assert c.value == 2 ** (n - 1) + 1
        assert c.replay()
    for n in (3, 5, 7, 9):
        c = prove_an_odd(n)
        assert c.value == 2 ** (n - 1)
        assert c.replay()
    with pytest.raises(ValidationError):
        prove_an_even(5)


def test_dual_weights_are_exact_rationals():
    c = prove_a3(3)
    assert all(isinstance(w, Fraction) for w in c.dual_weights.values())
    assert c.tight_point is not None
    # perturbing any nonzero dual weight must break the replay
    name = next(k for k, w in c.dual_weights.items() if w != 0)
    broken = dict(c.dual_weights)
    broken[name] += Fraction(1, 1000)
    tampered = BoundCertificate(
        c.n, c.objective, c.sense, c.status, c.value, broken, c.tight_point, c.constraints
    )
    assert not tampered.replay()


def test_shadow_insufficiency_a4_n8():
    rep = shadow_insufficiency_report(8, 4)
    assert rep.status == OPTIMAL
    assert rep.optimum > comb(8, 4)
    assert rep.witness is not None
    assert rep.gap_demonstrated()


def test_corollary2_form_holds_on_states():
    for n, rho in ((3, ghz(3)), (4, chi4()), (5, product_zero(5))):
        form = corollary2_form(n)
        assert form.value(sector_lengths(rho)) > -1e-9


def test_mutual_bound_not_implied_by_shadows():
    rep = mutual_bound_strength_report(5)
    assert rep.gap_demonstrated()


def test_lp_builder_rejects_bad_tokens():
    with pytest.raises(ValidationError):
        build_program(3, ["not_a_constraint"])


def test_maximize_normalization_only():
    # with just normalization and positivity, A_3 at n=3 is bounded by purity
    lp = build_program(3, ["purity"])
    cert = maximize(lp, 3)
    assert cert.status == OPTIMAL
    assert cert.value == 7
