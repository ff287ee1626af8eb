from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from level17.surd import QuadSurd, squarefree_split

rats = st.fractions(min_value=-20, max_value=20, max_denominator=9)
rads = st.sampled_from([2, 3, 5, 17, 85, -1, -7, -187])


def test_squarefree_split():
    assert squarefree_split(-1411) == (1, -1411)
    assert squarefree_split(408) == (2, 102)


def test_inverse_of_table_value():
    x = QuadSurd(12, 3, 17).inverse()
    assert x == QuadSurd(Fraction(-4, 3), Fraction(1, 3), 17)


def test_imaginary_unit():
    i = QuadSurd.i()
    assert i * i == -1
    assert QuadSurd.sqrt_int(-7) == QuadSurd(0, 1, -7)
    assert QuadSurd.sqrt_int(-7) * QuadSurd.sqrt_int(-7) == -7


def test_multiquadratic_product():
    a = QuadSurd(0, 1, 17) * QuadSurd(0, 1, 11)
    assert a == QuadSurd(0, 1, 187)
    assert (QuadSurd(0, 1, -17) * QuadSurd(0, 1, 11)) == QuadSurd(0, 1, -187)


def test_minimal_polynomial():
    assert QuadSurd(12, 3, 17).inverse().minimal_polynomial() == (-1, 24, 9)
    assert QuadSurd(Fraction(-1, 21)).minimal_polynomial() == (1, 21)


def test_sqrt():
    r = QuadSurd(3, 2, 2).sqrt()  # 3 + 2 sqrt 2 = (1 + sqrt 2)^2
    assert r is not None and r * r == QuadSurd(3, 2, 2)
    assert QuadSurd(1, 1, 2).sqrt() is None


def test_json_roundtrip():
    x = QuadSurd(Fraction(1, 3), Fraction(-2, 5), 85)
    assert QuadSurd.from_json(x.to_json()) == x
    y = QuadSurd.from_terms({2: 1, 3: 1})
    assert QuadSurd.from_json(y.to_json()) == y


def test_real_imag_parts():
    z = QuadSurd(30, 33, -7)
    assert z.real_part() == 30 and z.imag_part() == QuadSurd(0, 33, 7)
    assert z.conjugate() == QuadSurd(30, -33, -7)


def test_zero_inverse():
    with pytest.raises(ZeroDivisionError):
        QuadSurd(0).inverse()


@settings(max_examples=80, deadline=None)
@given(rats, rats, rads, rats, rats, rads)
def test_field_axioms(p1, q1, m1, p2, q2, m2):
    a, b = QuadSurd(p1, q1, m1), QuadSurd(p2, q2, m2)
    assert a * b == b * a
    assert (a + b) - b == a
    if not b.is_zero():
        assert (a / b) * b == a


@settings(max_examples=60, deadline=None)
@given(rats, rats, rads)
def test_numeric_consistency(p, q, m):
    a = QuadSurd(p, q, m)
    with mpmath.workdps(30):
        assert abs((a * a).to_mpc(30) - a.to_mpc(30) ** 2) < mpmath.mpf(10) ** -20
