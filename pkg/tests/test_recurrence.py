from fractions import Fraction

import mpmath
import pytest

from level17.recurrence import (
    gen_A, level5_a, radius, solve_A_by_composition, verify_composition, eval_z_series,
)
from oracles import level5_closed, radius_polyroots


def test_first_terms():
    assert gen_A(6).as_ints() == [2, 6, 66, 774, 10434, 150726, 2290050]


def test_integral_through_50():
    assert gen_A(50).all_integral()


def test_recurrence_matches_composition():
    assert gen_A(50).values == solve_A_by_composition(50).values


def test_composition_residual():
    assert verify_composition(60).passed


def test_negative_index():
    with pytest.raises(ValueError):
        gen_A(-1)


def test_level5_closed_form():
    assert [int(v) for v in level5_a(12).values] == level5_closed(13)


def test_radius_digits_and_residual():
    r = radius(60)
    assert mpmath.nstr(r, 4) == "0.05122"
    with mpmath.workdps(80):
        assert abs(127 * r**4 + 48 * r**3 + 66 * r**2 + 16 * r - 1) < mpmath.mpf(10) ** -50


def test_radius_matches_polyroots():
    with mpmath.workdps(60):
        assert abs(radius(50) - radius_polyroots(60)) < mpmath.mpf(10) ** -45


def test_ratio_approaches_radius():
    A = gen_A(400)
    ratio = A[399] / A[400]
    assert abs(float(ratio) - float(radius(20))) < 2e-3


def test_z_series_at_small_x():
    # A_n x^n summed at a point well inside the disc converges
    v = eval_z_series(Fraction(1, 100), 150)
    w = eval_z_series(Fraction(1, 100), 200)
    assert abs(v - w) < mpmath.mpf(10) ** -25
