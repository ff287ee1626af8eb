import random
from fractions import Fraction

import mpmath
import pytest

from level17.singular import (
    ELLIPTIC_ROW, SINGULAR_ROWS, TRANSFORM_ROWS, BQForm, GL2Action, InsufficientOrderError, certify_value,
    check_transform_row, class_number, class_scan, eval_x, reduce_form, reduced_forms, tau_of, verify_table2,
)
from level17.recurrence import radius
from level17.surd import QuadSurd
from oracles import CLASS_NUMBERS, class_number_bruteforce, reduce_tau_sl2

D = 40  # digits for numeric checks
TOL = mpmath.mpf(10) ** -30


def close(a, b, tol=TOL):
    with mpmath.workdps(D + 10):
        return abs(mpmath.mpc(a) - mpmath.mpc(b)) < tol


def test_tau_of():
    with mpmath.workdps(50):
        assert close(tau_of(BQForm(17, -34, 19)), (17 + 1j * mpmath.sqrt(34)) / 17)
        assert close(tau_of(BQForm(17, -17, 7)), (17 + 1j * mpmath.sqrt(187)) / 34)
        assert close(tau_of(BQForm(1, 0, 1)), 1j)


def test_form_validation():
    with pytest.raises(ValueError):
        BQForm(-1, 0, 1)
    with pytest.raises(ValueError):
        BQForm(1, 3, 1)


def test_eval_x_known_points():
    with mpmath.workdps(D + 10):
        v = eval_x(1j * mpmath.sqrt(mpmath.mpf(2) / 17), D).value
        assert close(v, QuadSurd(Fraction(-4, 3), Fraction(1, 3), 17).to_mpc(D))
        assert close(eval_x(tau_of(BQForm(17, -17, 7), D + 10), D).value, mpmath.mpf(-1) / 21)
        assert close(eval_x(tau_of(BQForm(17, -8, 1), D + 10), D).value, 1)


def test_elliptic_point_uses_theta():
    xv = eval_x(tau_of(BQForm(17, -8, 1), 50), 30)
    assert xv.method == "theta"


def test_series_and_theta_agree():
    t = mpmath.mpc("0.1", "0.31")
    a = eval_x(t, D, method="series").value
    b = eval_x(t, D, method="theta").value
    assert close(a, b)


def test_error_bound_reported():
    xv = eval_x(mpmath.mpc(0, 1), 30)
    assert xv.error_bound < mpmath.mpf(10) ** -30 and xv.terms > 0


def test_insufficient_trunc():
    with pytest.raises(InsufficientOrderError):
        eval_x(tau_of(BQForm(17, -34, 19), 40), 40, trunc=5)


def test_lower_half_plane_rejected():
    with pytest.raises(ValueError):
        eval_x(mpmath.mpc(0, -1), 20)


def _random_points(k, seed):
    rng = random.Random(seed)
    return [mpmath.mpc(rng.uniform(-0.5, 0.5), rng.uniform(0.25, 1.2)) for _ in range(k)]


@pytest.mark.parametrize("t", _random_points(5, 1))
def test_fricke_invariance(t):
    with mpmath.workdps(D + 10):
        assert close(eval_x(t, D).value, eval_x(-1 / (17 * t), D).value)


@pytest.mark.parametrize("g", [(1, 0, 17, 1), (2, 1, 17, 9), (-3, 1, 17, -6), (5, 2, 17, 7)])
def test_gamma0_invariance(g):
    a, b, c, d = g
    assert a * d - b * c == 1
    with mpmath.workdps(D + 10):
        for t in _random_points(2, sum(g)):
            assert close(eval_x(t, D).value, eval_x(t + 1, D).value)
            assert close(eval_x(t, D).value, eval_x((a * t + b) / (c * t + d), D).value)


def test_reduce_form_examples():
    assert reduce_form(BQForm(1, 0, 1)) == BQForm(1, 0, 1)
    assert reduce_form(BQForm(2, 2, 3)) == BQForm(2, 2, 3)
    r = reduce_form(BQForm(17, 17, 25))
    assert r.disc == -1411 and r.is_reduced()


@pytest.mark.parametrize("form", [r.form for r in SINGULAR_ROWS] + [BQForm(7, 13, 11), BQForm(3, 5, 7)])
def test_reduce_form_matches_point_reduction(form):
    r = reduce_form(form)
    with mpmath.workdps(40):
        # the oracle ignores boundary conventions, so compare j-invariants
        t1 = reduce_tau_sl2(tau_of(form, 40))
        t2 = tau_of(r, 40)
        assert abs(t2.real) <= 0.5 and abs(t2) >= 1 - mpmath.mpf(10) ** -20
        assert abs(mpmath.kleinj(t1) - mpmath.kleinj(t2)) < mpmath.mpf(10) ** -15 * (1 + abs(mpmath.kleinj(t2)))


@pytest.mark.parametrize("d", sorted(CLASS_NUMBERS))
def test_class_numbers(d):
    assert class_number(d) == CLASS_NUMBERS[d] == class_number_bruteforce(d)


@pytest.mark.parametrize("d", [-136, -187, -323, -340, -408, -427, -595, -1003, -1411])
def test_table_discriminants_have_small_class_number(d):
    assert 1 <= class_number(d) <= 4
    assert all(f.is_primitive() for f in reduced_forms(d))


def test_transformations_all_rows():
    reports = verify_table2()
    assert len(reports) == 12
    assert all(r.passed for r in reports), [r.to_json() for r in reports if not r.passed]


def test_transformations_examples():
    rep = check_transform_row(BQForm(17, -34, 19), GL2Action((-1, 1, 17, -19), (1, 1, 0, 2), False))
    assert rep.passed and rep.action.det == 2
    rep = check_transform_row(BQForm(17, -27, 17), GL2Action((13, -17, 17, -14), (1, 81, 0, 107), True))
    assert rep.passed and rep.action.det == 107
    assert GL2Action((1, 2, 0, 59), (1, 2, 0, 59), False).det == 59


def test_transformations_detects_corruption():
    rep = check_transform_row(BQForm(17, -34, 19), GL2Action((-1, 1, 17, -19), (1, 0, 0, 2), False))
    assert not rep.checks["gamma0_equivalent"]
    rep = check_transform_row(BQForm(17, -34, 19), GL2Action((-1, 1, 17, -19), (1, 1, 0, 2), True))
    assert not rep.checks["mobius_action"]


def test_elliptic_row_fixes_tau():
    form, action = TRANSFORM_ROWS[-1]
    assert form == BQForm(17, -8, 1) and action.fixes


def test_certify_degree_two_row():
    row = SINGULAR_ROWS[-1]
    cert = certify_value(row.form, row.claimed, 2, digits=60)
    assert cert.passed and cert.polynomial == (-1, 24, 9)
    assert cert.polynomial_source == "Psi_2(X,X)"


def test_certify_rational_row():
    row = next(r for r in SINGULAR_ROWS if r.disc == -187)
    cert = certify_value(row.form, row.claimed, 7, digits=60)
    assert cert.passed and cert.polynomial == (1, 21)


def test_certify_x_equals_one():
    cert = certify_value(ELLIPTIC_ROW.form, QuadSurd(1), 2, digits=60)
    assert cert.passed and cert.polynomial == (-1, 1) and not cert.inside_radius


def test_certify_rejects_wrong_value():
    cert = certify_value(BQForm(17, -17, 7), QuadSurd(Fraction(-1, 20)), 7, digits=40)
    assert not cert.passed and not cert.exact_root


def test_certify_rejects_level_multiple():
    with pytest.raises(ValueError):
        certify_value(BQForm(17, -17, 7), QuadSurd(Fraction(-1, 21)), 17)


def test_table_values_inside_radius():
    with mpmath.workdps(40):
        rad = radius(30)
        for row in SINGULAR_ROWS:
            assert abs(row.claimed.to_mpc(30)) < rad


def test_scan_187():
    entries = class_scan(-187, 20)
    assert any(e.form == BQForm(17, -17, 7) and e.match == QuadSurd(Fraction(-1, 21)) for e in entries)


def test_scan_136():
    entries = class_scan(-136, 20)
    target = QuadSurd(12, 3, 17).inverse()
    hits = [e for e in entries if e.match is not None]
    assert hits and all(e.match == target and e.inside_radius for e in hits)
    assert {e.form.a * e.form.c for e in hits} == {34}


def test_scan_minus_3():
    entries = class_scan(-3, 20)
    assert len(reduced_forms(-3)) == 1
    assert not any(e.match is not None and e.inside_radius for e in entries)
