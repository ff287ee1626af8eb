from fractions import Fraction

import mpmath
import pytest

from level17.pi_series import (
    CONFIGS, SERIES_ROWS, LEVEL5_SERIES, PiSeriesSpec, RootSurd, Theorem52Input,
    check_spec, compute_BC, eval_series, pi_chudnovsky, rebuild_published, terms_needed,
    bc_input, transformation_constants, verify_corollary53, w_squared,
)
from level17.surd import QuadSurd
from oracles import pi_oracle

ROWS = {r.label: r for r in SERIES_ROWS}


@pytest.mark.parametrize("digits", [15, 60, 200])
def test_chudnovsky_matches_mpmath(digits):
    with mpmath.workdps(digits + 5):
        assert abs(pi_chudnovsky(digits) - pi_oracle(digits)) < mpmath.mpf(10) ** -digits


def test_rootsurd_equality_and_json():
    a = RootSurd(QuadSurd(2), QuadSurd(3))
    b = RootSurd(QuadSurd(1), QuadSurd(12))
    assert a.equals(b) and not a.equals(b.scale(-1))
    c = RootSurd(QuadSurd(0, 1, 17), QuadSurd(-37, 9, 17))
    assert RootSurd.from_json(c.to_json()).equals(c)
    assert RootSurd(QuadSurd(3), QuadSurd(4)).simplify().is_quadsurd()


def test_w_squared_at_minus_one_over_21():
    assert w_squared(QuadSurd(Fraction(-1, 21))) == QuadSurd(Fraction(136 ** 2 * 17, 441 ** 2))


@pytest.mark.parametrize("label", [r.label for r in SERIES_ROWS])
def test_published_series_reach_30_digits(label):
    res = check_spec(ROWS[label].spec(), 30)
    assert res.passed, res.to_json()
    assert res.agreement >= 30 and abs(res.imag) < mpmath.mpf(10) ** -30


def test_printed_constant_for_136_fails():
    row = ROWS["d=-136"]
    bad = type(row)(row.label, row.lhs, row.printed_u, row.v, row.base)
    res = check_spec(bad.spec(), 20)
    assert not res.passed and res.agreement < 3


def test_conjugate_pair_has_conjugate_sums():
    p = eval_series(ROWS["d=-427+"].spec(), 30).value
    m = eval_series(ROWS["d=-427-"].spec(), 30).value
    with mpmath.workdps(40):
        assert abs(p - mpmath.conj(m)) < mpmath.mpf(10) ** -30


def test_level5_series():
    res = check_spec(LEVEL5_SERIES, 50)
    assert res.passed and res.agreement >= 50


def test_small_X_needs_few_terms():
    spec = ROWS["d=-1411"].spec()
    assert terms_needed(spec, 30) < 30


def test_minus_one_over_21_to_50_digits_with_enough_terms():
    spec = ROWS["d=-187"].spec()
    n = terms_needed(spec, 50)
    assert n > 1000
    res = check_spec(spec, 50)
    assert res.passed and res.terms >= n - 50


def test_truncated_sum_is_short():
    spec = ROWS["d=-187"].spec()
    with pytest.raises(ValueError):
        eval_series(spec, 50, max_terms=60)


def test_outside_radius_rejected():
    with pytest.raises(ValueError):
        PiSeriesSpec(QuadSurd(Fraction(1, 10)), RootSurd(QuadSurd(1)), RootSurd(QuadSurd(1)))


def test_x_zero_degenerate():
    spec = PiSeriesSpec(QuadSurd(0), RootSurd(QuadSurd(5)), RootSurd(QuadSurd(Fraction(3, 7))))
    v = eval_series(spec, 20).value
    with mpmath.workdps(30):
        assert abs(v - mpmath.mpf(6) / 7) < mpmath.mpf(10) ** -25


def test_spec_json_roundtrip():
    spec = ROWS["d=-323"].spec()
    back = PiSeriesSpec.from_json(spec.to_json())
    assert back.X == spec.X and back.B.equals(spec.B) and back.C.equals(spec.C)


def test_transformation_constants():
    assert transformation_constants((0, -1, 17, 0)) == (Fraction(-1, 17), -1)
    assert transformation_constants((17, -9, 34, -17)) == (Fraction(-1, 17), -1)


def test_compute_bc_rational_case_exact():
    inp = bc_input(CONFIGS[0])
    assert inp.n == 11 and inp.w_sign == 1
    B, C = compute_BC(inp)
    assert B.equals(RootSurd(QuadSurd(0, Fraction(748, 441 * 11), 11)))
    assert C.equals(RootSurd(QuadSurd(0, Fraction(307, 441 * 11), 11)))


def test_compute_bc_wrong_constants_rejected():
    inp = bc_input(CONFIGS[0])
    bad = Theorem52Input(inp.matrix, inp.triple, inp.tau, Fraction(-1), inp.eta, inp.X, inp.w_sign)
    B, C = compute_BC(bad)
    assert not check_spec(PiSeriesSpec(inp.X, B, C), 20).passed


def test_compute_bc_sign_flip_negates():
    inp = bc_input(CONFIGS[0])
    flipped = Theorem52Input(inp.matrix, inp.triple, inp.tau, inp.eps, inp.eta, inp.X, -inp.w_sign)
    B, C = compute_BC(inp)
    B2, C2 = compute_BC(flipped)
    assert B2.equals(B.scale(-1)) and C2.equals(C.scale(-1))


def test_bc_input_json_roundtrip():
    inp = bc_input(CONFIGS[2])
    assert Theorem52Input.from_json(inp.to_json()) == inp


def test_rebuild_published():
    results = rebuild_published()
    assert len(results) == len(CONFIGS)
    assert all(r.matches_published for r in results), [r.label for r in results if not r.matches_published]


def test_verify_all_rows():
    assert all(r.passed for r in verify_corollary53(30))
