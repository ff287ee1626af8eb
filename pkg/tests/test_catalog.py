from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from level17.catalog import (
    IDENTITIES, ModularCatalog, ODE_COEFFS, build, poly_eval, verify_identity, verify_ode,
)
from level17.series import theta_q_log
from oracles import z_divisor_sum, z_from_s


def test_z_first_terms():
    assert build("z", 5).coefficient_list() == [2, 3, 9, 12, 21]


def test_z_matches_two_oracles():
    z = build("z", 60).coefficient_list()
    assert z == z_divisor_sum(60)
    assert z == z_from_s(60)


def test_leading_terms():
    assert build("E2", 10).valuation == 1
    x = build("x", 10)
    assert x.valuation == 1 and x.lead == Fraction(1, 2)
    s = build("s", 10)
    assert s.valuation == 2 and s.lead == 1


def test_omega_cuspidal():
    om = build("Omega", 8)
    assert om.coefficient_list()[:6] == [0, 1, -1, 0, -1, -2]


def test_definitions_hold_exactly():
    n = 80
    x, z, om, w = build("x", n), build("z", n), build("Omega", n), build("w", n)
    assert (x * z - om).is_zero()
    assert (w * z - 2 * theta_q_log(x)).is_zero()


def test_w_quartic_at_x_zero():
    # constant term of w^2 is the constant term of the quartic
    assert poly_eval((1, -16, -66, -48, -127), 0) == 1
    assert build("w", 5)[0] == 1


def test_r_two_constructions_agree():
    n = 120
    assert build("r", n) == build("r_eisenstein", n)


@pytest.mark.parametrize("name", sorted(IDENTITIES))
def test_identity_at_150(name):
    required = IDENTITIES[name][2]
    rep = verify_identity(name, max(150, required + 1 if required else 0))
    assert rep.passed, rep


def test_reciprocal_identity_200():
    rep = verify_identity("reciprocal17", 200)
    assert rep.residual_valuation is None and rep.checked_order >= 200


def test_sturm_check_needs_481():
    rep = verify_identity("x-r-quadratic", 100)
    assert rep.status == "INSUFFICIENT_ORDER"


def test_level5_w_identity_to_100():
    assert verify_identity("w-sqrt5", 100).passed


def test_unknown_identity():
    with pytest.raises(KeyError):
        verify_identity("nope", 10)
    with pytest.raises(KeyError):
        build("nope", 10)


def test_ode_60():
    rep = verify_ode(60)
    assert rep.passed


def test_ode_mutation_detected():
    coeffs = [list(c) for c in ODE_COEFFS]
    coeffs[0][0] += 1
    rep = verify_ode(30, coeffs=tuple(tuple(c) for c in coeffs))
    assert rep.status == "FAIL" and rep.residual_valuation <= 3


def test_ode_needs_30():
    with pytest.raises(ValueError):
        verify_ode(20)


def test_cache_extends_consistently():
    cat = ModularCatalog()
    low = cat("x", 20)
    high = cat("x", 60)
    assert high.truncate(20) == low


def test_concurrent_readers():
    cat = ModularCatalog()
    with ThreadPoolExecutor(4) as pool:
        results = list(pool.map(lambda n: cat("z", n).truncate(20), [20, 40, 60, 80]))
    assert all(r == results[0] for r in results)


def test_report_json():
    d = verify_identity("reciprocal5", 30).to_json()
    assert d["status"] == "PASS" and d["residual_valuation"] == "inf"
