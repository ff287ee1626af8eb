"""Level 17 modular objects as q-expansions, and the identities among them.

Every object is a :class:`~level17.series.QSeries` built from infinite
products or Lambert-type sums.  The level 5 and level 13 reference objects
live here too so that the analogous identities can be checked side by side.
"""

from __future__ import annotations

import threading
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable

from .series import QSeries, eta_power_product, pochhammer_block, theta_q_log


def legendre(n: int, p: int) -> int:
    """Legendre symbol ``(n/p)`` for an odd prime ``p``."""
    n %= p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


def _residue_classes(p: int) -> tuple[list[int], list[int]]:
    qr = [n for n in range(1, p) if legendre(n, p) == 1]
    nr = [n for n in range(1, p) if legendre(n, p) == -1]
    return qr, nr


def _character_product(p: int, power: int, shift: int, n: int) -> QSeries:
    """``q**shift * prod (1 - q**k)**(power * (k/p))`` modulo ``q**n``."""
    qr, nr = _residue_classes(p)
    body = pochhammer_block(qr * power, p, 1, n) * pochhammer_block(nr * power, p, -1, n)
    return body.shift(shift)


def _lambert_character(p: int, n: int) -> QSeries:
    """``sum (k/p) q**k / (1 - q**k)**2`` modulo ``q**n``."""
    c = [0] * n
    for k in range(1, n):
        chi = legendre(k, p)
        if chi:
            for m in range(1, (n - 1) // k + 1):
                c[k * m] += chi * m
    return QSeries(c, 0, n)


# numerator / denominator residues and q-power of each Eisenstein product
EISENSTEIN_PRODUCTS = {
    1: (0, (8, 9, 17, 17), (2, 3, 14, 15)),
    2: (1, (3, 14, 17, 17), (1, 5, 12, 16)),
    3: (3, (1, 16, 17, 17), (4, 6, 11, 13)),
    4: (1, (6, 11, 17, 17), (2, 7, 10, 15)),
    5: (3, (2, 15, 17, 17), (5, 8, 9, 12)),
    6: (1, (5, 12, 17, 17), (3, 4, 13, 14)),
    7: (1, (4, 13, 17, 17), (1, 7, 10, 16)),
    8: (2, (7, 10, 17, 17), (6, 8, 9, 11)),
}

# signs of E_k E_{k+1} in the cusp form Omega
OMEGA_SIGNS = (1, -1, 1, -1, 1, -1, -1, -1)

# polynomial coefficients, lowest degree first
W_SQUARED = (1, -16, -66, -48, -127)
LEMMA_RHS = (0, 2, 27, 4, 126, -222, 127)


def pmul(*polys):
    """Product of integer polynomials given as coefficient tuples."""
    out = [1]
    for p in polys:
        nxt = [0] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(p):
                nxt[i + j] += a * b
        out = nxt
    return tuple(out)


_X, _XM1 = (0, 1), (-1, 1)

# coefficients of f, f_x, f_xx, f_xxx (theta_x = x d/dx) in the third order ODE for z
ODE_COEFFS = (
    pmul((3,), _X, (-1, -28, -6, -250, 681, -714, 254)),
    pmul(_X, _XM1, (14, 197, -28, 1094, -2482, 1397)),
    pmul((6,), _X, _XM1, _XM1, _XM1, (4, 33, 36, 127)),
    pmul(_XM1, _XM1, _XM1, (-1, 16, 66, 48, 127)),
)


def eisenstein(k: int, n: int) -> QSeries:
    shift, num, den = EISENSTEIN_PRODUCTS[k]
    body = pochhammer_block(num, 17, 1, n) * pochhammer_block(den, 17, -1, n)
    return body.shift(shift)


def poly_eval(coeffs, x):
    """Horner evaluation of ``sum coeffs[i] x**i`` in any ring containing ints."""
    acc = None
    for c in reversed(coeffs):
        acc = (acc * x + c) if acc is not None else x * 0 + c
    return acc


def _build_r(n):
    return _character_product(17, 1, 2, n)


def _build_s(n):
    return eta_power_product([(17, 3), (1, -3)], n).shift(2)


def _build_omega(n):
    es = [eisenstein(k, n) for k in range(1, 9)]
    total = None
    for i, sgn in enumerate(OMEGA_SIGNS):
        term = es[i] * es[(i + 1) % 8]
        total = term if total is None else (total + term if sgn > 0 else total - term)
    return total


def _r_from_eisenstein(n):
    es = [eisenstein(k, n + 8) for k in range(1, 9)]
    return (es[0] * es[2] * es[4] * es[6]) / (es[1] * es[3] * es[5] * es[7])


def _build_z(n):
    return theta_q_log(_build_s(n + 2))


def _build_x(n):
    return _build_omega(n) / _build_z(n)


def _build_w(n):
    return theta_q_log(_build_x(n + 1)).scale(2) / _build_z(n)


def _level5_R5(n):
    return _character_product(5, 5, 1, n)


def _level5_S(n):
    return eta_power_product([(5, 6), (1, -6)], n).shift(1)


def _T_level5(R5):
    return R5 * (1 - 11 * R5 - R5 * R5) / (1 + R5 * R5) ** 2


def _T_level13(R):
    return R * (1 - 3 * R - R * R) / (1 + R * R) ** 2


def _level13_R(n):
    return _character_product(13, 1, 1, n)


def _level13_S(n):
    return eta_power_product([(13, 2), (1, -2)], n).shift(1)


_BUILDERS: dict[str, Callable[[int], QSeries]] = {
    "r": _build_r,
    "r_eisenstein": _r_from_eisenstein,
    "s": _build_s,
    **{f"E{k}": (lambda n, k=k: eisenstein(k, n)) for k in range(1, 9)},
    "Omega": _build_omega,
    "z": _build_z,
    "x": _build_x,
    "w": _build_w,
    # level 5 (R is carried through R^5 so exponents stay integral)
    "R5": _level5_R5,
    "S5": _level5_S,
    "T5": lambda n: _T_level5(_level5_R5(n)),
    "Z5": lambda n: theta_q_log(_level5_S(n + 1)),
    "U5": lambda n: theta_q_log(_level5_R5(n + 1)).scale(Fraction(1, 5)),
    "V5": lambda n: _lambert_character(5, n),
    "UV5": lambda n: theta_q_log(_level5_R5(n + 1)).scale(Fraction(1, 5)) * _lambert_character(5, n),
    "W5": lambda n: theta_q_log(_T_level5(_level5_R5(n + 1))) / theta_q_log(_level5_S(n + 1)),
    # level 13
    "R13": _level13_R,
    "S13": _level13_S,
    "T13": lambda n: _T_level13(_level13_R(n)),
    "Z13": lambda n: theta_q_log(_level13_S(n + 1)),
    "U13": lambda n: theta_q_log(_level13_R(n + 1)),
    "V13": lambda n: _lambert_character(13, n),
    "UV13": lambda n: theta_q_log(_level13_R(n + 1)) * _lambert_character(13, n),
    "W13": lambda n: theta_q_log(_T_level13(_level13_R(n + 1))) / theta_q_log(_level13_S(n + 1)),
}

NAMES = tuple(_BUILDERS)


class ModularCatalog:
    """Memoized q-expansions of the named modular objects.

    Readers may share one catalog across threads; extension to a higher
    order happens under a lock and never changes known coefficients.
    """

    def __init__(self) -> None:
        self._cache: dict[str, QSeries] = {}
        self._lock = threading.Lock()

    def build(self, name: str, trunc: int) -> QSeries:
        if name not in _BUILDERS:
            raise KeyError(f"unknown modular object {name!r}; known: {', '.join(NAMES)}")
        if trunc <= 0:
            raise ValueError("trunc must be positive")
        cached = self._cache.get(name)
        if cached is None or cached.order < trunc:
            series = _BUILDERS[name](trunc)
            with self._lock:
                current = self._cache.get(name)
                if current is None or current.order < series.order:
                    self._cache[name] = series
            cached = self._cache[name]
        return cached.truncate(trunc)

    __call__ = build


_default_catalog = ModularCatalog()


def build(name: str, trunc: int) -> QSeries:
    """q-expansion of a named object modulo ``q**trunc`` (shared cache)."""
    return _default_catalog.build(name, trunc)


# -- identity verification ---------------------------------------------------

PASS, FAIL, INSUFFICIENT_ORDER = "PASS", "FAIL", "INSUFFICIENT_ORDER"


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of checking ``lhs - rhs == 0`` as a truncated q-series.

    ``residual_valuation`` is the exponent of the first nonzero residual
    coefficient, or ``None`` (infinite) when the residual vanishes to
    ``checked_order``.
    """

    name: str
    description: str
    trunc: int
    checked_order: Fraction
    residual_valuation: Fraction | None
    required_order: int = 0
    status: str = field(init=False)

    def __post_init__(self):
        if self.residual_valuation is not None:
            status = FAIL
        elif self.checked_order < max(self.trunc, self.required_order):
            status = INSUFFICIENT_ORDER
        else:
            status = PASS
        object.__setattr__(self, "status", status)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        d = asdict(self)
        d["checked_order"] = str(self.checked_order)
        d["residual_valuation"] = "inf" if self.residual_valuation is None else str(self.residual_valuation)
        d["status"] = self.status
        return d


def report_from_residual(name, description, trunc, residual: QSeries, required_order=0) -> IdentityReport:
    return IdentityReport(name, description, trunc, residual.order, residual.valuation, required_order)


def theta_lattice_sum(trunc: int) -> QSeries:
    """``sum_{m,n} ((-1)**m - (-1)**n) q**((n**2 + 17 m**2)/4)`` modulo ``q**trunc``."""
    bound = 4 * trunc
    cut = isqrt(bound) + 1
    c = [0] * bound
    for m in range(-cut, cut + 1):
        for n in range(-cut, cut + 1):
            e = n * n + 17 * m * m
            if e < bound:
                c[e] += (-1) ** (m % 2) - (-1) ** (n % 2)
    return QSeries(c, 0, bound, 4)


def _res_reciprocal17(cat, n):
    r, s = cat("r", n), cat("s", n)
    return (r * r * s + s - r) ** 2 - 4 * r * s * s * (4 - 4 * r * r - 15 * r)


def _res_reciprocal5(cat, n):
    R, S = cat("R5", n), cat("S5", n)
    return S - 11 * R * S - R * R * S - R


def _res_reciprocal13(cat, n):
    R, S = cat("R13", n), cat("S13", n)
    return S - 3 * R * S - R * R * S - R


def _res_w_quartic(cat, n):
    x, w = cat("x", n), cat("w", n)
    return w * w - poly_eval(W_SQUARED, x)


def _res_x_r_quadratic(cat, n):
    x, r = cat("x", n), cat("r", n)
    return (4 - 4 * r * r - 15 * r) * (x + r) ** 2 - r * (x * r - 1) ** 2 * (4 * r - 1) ** 2


def _res_x_in_r_s(cat, n):
    x, r, s = cat("x", n), cat("r", n), cat("s", n)
    return x * (8 * r ** 3 * s - 3 * r * r * s + r - s) - r * (r * r * s + 8 * r * s - r - s)


def _res_x_theta(cat, n):
    # (1 - x)/(2x) = Theta^2 / (16 eta(tau)^2 eta(17 tau)^2)
    x = cat("x", n)
    eta2 = eta_power_product([(1, 2), (17, 2)], n).shift(Fraction(3, 2))
    th = theta_lattice_sum(n)
    return 8 * (1 - x) * eta2 - x * th * th


def _res_r_eisenstein(cat, n):
    es = [cat(f"E{k}", n) for k in range(1, 9)]
    return cat("r", n) * es[1] * es[3] * es[5] * es[7] - es[0] * es[2] * es[4] * es[6]


def _res_schwarzian(cat, n):
    z, x = cat("z", n), cat("x", n)
    zq = z.theta()
    zqq = zq.theta()
    return 4 * (x - 1) ** 2 * (2 * z * zqq - 3 * zq * zq) - 3 * z ** 4 * poly_eval(LEMMA_RHS, x)


def _res_t_uv5(cat, n):
    # T = 5 U V / Z^2 with U the log-derivative of R (not of R^5)
    return cat("T5", n) * cat("Z5", n) ** 2 - 5 * cat("UV5", n)


def _res_t_uv13(cat, n):
    return cat("T13", n) * cat("Z13", n) ** 2 - cat("UV13", n)


def _res_w_sqrt5(cat, n):
    T, W = cat("T5", n), cat("W5", n)
    return W * W - (1 - 44 * T - 16 * T * T)


def _res_w_sqrt13(cat, n):
    T, W = cat("T13", n), cat("W13", n)
    return W * W - (1 - 12 * T - 16 * T * T)


# name -> (description, residual builder, order needed for the check to be a proof)
IDENTITIES: dict[str, tuple[str, Callable, int]] = {
    "reciprocal17": ("(r + 1/r - 1/s)^2 = 4(4/r - 4r - 15)", _res_reciprocal17, 0),
    "reciprocal5": ("1/R^5 - 11 - R^5 = 1/S", _res_reciprocal5, 0),
    "reciprocal13": ("1/R - 3 - R = 1/S (level 13)", _res_reciprocal13, 0),
    "w-quartic": ("w^2 = -127x^4 - 48x^3 - 66x^2 - 16x + 1", _res_w_quartic, 0),
    "x-r-quadratic": ("(4/r - 4r - 15)(x + r)^2 = (xr - 1)^2 (4r - 1)^2, Sturm bound 481", _res_x_r_quadratic, 481),
    "x-in-r-s": ("x = r(r^2 s + 8rs - r - s)/(8r^3 s - 3r^2 s + r - s)", _res_x_in_r_s, 0),
    "x-theta": ("(1 - x)/(2x) = Theta^2/(16 eta(tau)^2 eta(17tau)^2)", _res_x_theta, 0),
    "r-eisenstein": ("r = E1 E3 E5 E7/(E2 E4 E6 E8)", _res_r_eisenstein, 0),
    "schwarzian": ("(2 z z_qq - 3 z_q^2)/(3 z^4) = x(127x^5 - 222x^4 + 126x^3 + 4x^2 + 27x + 2)/(4(x - 1)^2)",
                   _res_schwarzian, 0),
    "t-uv5": ("T = 5 U V / Z^2 (level 5)", _res_t_uv5, 0),
    "t-uv13": ("T = U V / Z^2 (level 13)", _res_t_uv13, 0),
    "w-sqrt5": ("(theta_q log T / Z)^2 = 1 - 44T - 16T^2 (level 5)", _res_w_sqrt5, 0),
    "w-sqrt13": ("(theta_q log T / Z)^2 = 1 - 12T - 16T^2 (level 13)", _res_w_sqrt13, 0),
}


def verify_identity(name: str, trunc: int, catalog: ModularCatalog | None = None) -> IdentityReport:
    """Check one identity as a q-series modulo ``q**trunc``."""
    if name not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(IDENTITIES)}")
    if trunc <= 0:
        raise ValueError("trunc must be positive")
    description, residual_fn, required = IDENTITIES[name]
    residual = residual_fn(catalog or _default_catalog, trunc)
    return report_from_residual(name, description, trunc, residual, required)


def ode_residual(trunc: int, coeffs=ODE_COEFFS, catalog: ModularCatalog | None = None) -> QSeries:
    """Third order operator in ``theta_x = (2/(w z)) theta_q`` applied to ``f = z``."""
    cat = catalog or _default_catalog
    z, x, w = cat("z", trunc), cat("x", trunc), cat("w", trunc)
    wz2 = (w * z).inverse().scale(2)
    derivs = [z]
    for _ in range(3):
        derivs.append(derivs[-1].theta() * wz2)
    total = None
    for poly, f in zip(coeffs, derivs):
        term = poly_eval(poly, x) * f
        total = term if total is None else total + term
    return total


def verify_ode(trunc: int, coeffs=ODE_COEFFS, catalog: ModularCatalog | None = None) -> IdentityReport:
    if trunc < 30:
        raise ValueError("the ODE check needs trunc >= 30")
    residual = ode_residual(trunc, coeffs, catalog)
    return report_from_residual("z-ode", "third order linear ODE for z in theta_x", trunc, residual)
