"""Modular equations Psi_n(X, Y) = 0 between x(tau) and x(n tau).

Psi_2 and Psi_3 are stored as printed constants.  Psi_2 can also be rebuilt
from scratch by pole elimination on symmetric functions of its three roots,
and any Psi_n can be recovered as the one-dimensional kernel of a linear
system over the q-expansions of x(tau) and x(n tau).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd, isqrt
from typing import Iterable, Mapping

import sympy

from .catalog import IdentityReport, ModularCatalog, _default_catalog, report_from_residual
from .series import QSeries
from .surd import QuadSurd

Monomial = tuple[int, int]


def psi_degree(n: int) -> int:
    """n * prod over primes p | n of (1 + 1/p)."""
    out = Fraction(n)
    for p in sympy.primefactors(n):
        out *= Fraction(p + 1, p)
    return int(out)


class BivarPoly:
    """Polynomial in X, Y with integer coefficients, keyed by exponent pairs."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Monomial, int] | Iterable[tuple[int, int, int]]):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = (((i, j), c) for i, j, c in coeffs)
        acc: dict[Monomial, int] = {}
        for (i, j), c in items:
            acc[(i, j)] = acc.get((i, j), 0) + c
        self.coeffs = {k: v for k, v in acc.items() if v}

    def __getitem__(self, ij: Monomial) -> int:
        return self.coeffs.get(ij, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, BivarPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({k: -v for k, v in self.coeffs.items()})

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.coeffs), default=0)

    @property
    def degree_y(self) -> int:
        return max((j for _, j in self.coeffs), default=0)

    def is_symmetric(self) -> bool:
        return all(self[(j, i)] == c for (i, j), c in self.coeffs.items())

    def dx(self) -> "BivarPoly":
        return BivarPoly({(i - 1, j): i * c for (i, j), c in self.coeffs.items() if i})

    def dy(self) -> "BivarPoly":
        return BivarPoly({(i, j - 1): j * c for (i, j), c in self.coeffs.items() if j})

    def __call__(self, X, Y):
        """Evaluate in any commutative ring whose elements accept int scalars."""
        px = [None] * (self.degree_x + 1)
        py = [None] * (self.degree_y + 1)
        px[0] = X * 0 + 1
        py[0] = Y * 0 + 1
        for k in range(1, len(px)):
            px[k] = px[k - 1] * X
        for k in range(1, len(py)):
            py[k] = py[k - 1] * Y
        total = None
        # group by power of Y to save products
        for j in range(len(py)):
            row = None
            for (i, jj), c in self.coeffs.items():
                if jj == j:
                    term = px[i] * c
                    row = term if row is None else row + term
            if row is not None:
                term = row * py[j]
                total = term if total is None else total + term
        return total if total is not None else X * 0

    def diagonal_coeffs(self) -> list[int]:
        """Coefficients of Psi(X, X), lowest degree first."""
        out = [0] * (self.degree_x + self.degree_y + 1)
        for (i, j), c in self.coeffs.items():
            out[i + j] += c
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def primitive(self) -> "BivarPoly":
        g = 0
        for c in self.coeffs.values():
            g = gcd(g, c)
        return BivarPoly({k: v // g for k, v in self.coeffs.items()}) if g > 1 else self

    def to_json(self) -> list[list[int]]:
        return [[i, j, c] for (i, j), c in sorted(self.coeffs.items(), reverse=True)]

    @classmethod
    def from_json(cls, data) -> "BivarPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls((int(i), int(j), int(c)) for i, j, c in data)

    def __repr__(self) -> str:
        terms = [f"{c}*X^{i}*Y^{j}" for (i, j), c in sorted(self.coeffs.items(), reverse=True)]
        return "BivarPoly(" + " + ".join(terms) + ")"


PSI2 = BivarPoly(
    [
        (3, 3, -9), (3, 2, -12), (3, 1, 1), (3, 0, 2),
        (2, 3, -12), (2, 2, 8), (2, 1, 10),
        (1, 3, 1), (1, 2, 10), (1, 1, -1),
        (0, 3, 2),
    ]
)

PSI3 = BivarPoly(
    [
        (4, 4, 435), (4, 3, 231), (3, 4, 231), (4, 2, 45), (3, 3, -385), (2, 4, 45),
        (4, 1, -39), (3, 2, -63), (2, 3, -63), (1, 4, -39),
        (4, 0, 4), (3, 1, 9), (2, 2, 123), (1, 3, 9), (0, 4, 4),
        (2, 1, 15), (1, 2, 15), (1, 1, -1),
    ]
)

_STORED = {2: PSI2, 3: PSI3}


@lru_cache(maxsize=None)
def _derived_table() -> dict[int, BivarPoly]:
    try:
        text = resources.files("level17").joinpath("data/psi_derived.json").read_text()
    except FileNotFoundError:
        return {}
    return {int(n): BivarPoly.from_json(v) for n, v in json.loads(text).items()}


def available_degrees() -> tuple[int, ...]:
    return tuple(sorted(set(_STORED) | set(_derived_table())))


def psi(n: int) -> BivarPoly:
    """Modular equation of degree ``n``.

    Degrees 2 and 3 are the printed polynomials; other degrees come from the
    shipped table produced by :func:`derive_psi_kernel`.
    """
    if n in _STORED:
        return _STORED[n]
    table = _derived_table()
    if n in table:
        return table[n]
    raise ValueError(f"no modular equation stored for n={n}; available: {available_degrees()}")


def x_of_multiple(n: int, trunc: int, catalog: ModularCatalog | None = None) -> QSeries:
    """q-expansion of x(n tau) modulo ``q**trunc``."""
    cat = catalog or _default_catalog
    return cat("x", -(-trunc // n) + 1).rescale(n).truncate(trunc)


def verify_psi(n: int, trunc: int, poly: BivarPoly | None = None,
               catalog: ModularCatalog | None = None) -> IdentityReport:
    """Check Psi_n(x(tau), x(n tau)) = 0 modulo ``q**trunc``."""
    if trunc < 20:
        raise ValueError("trunc must be at least 20")
    poly = poly if poly is not None else psi(n)
    cat = catalog or _default_catalog
    residual = poly(cat("x", trunc), x_of_multiple(n, trunc, cat))
    return report_from_residual(f"psi{n}", f"Psi_{n}(x(tau), x({n} tau)) = 0", trunc, residual)


# -- derivation of Psi_2 by pole elimination ----------------------------------


def _eliminate_poles(c: QSeries, u: QSeries) -> dict[int, Fraction]:
    """Write ``c`` as a polynomial in ``u = 1/x`` plus O(q), greedily from the top pole."""
    if c.denom != 1:
        raise ArithmeticError("symmetric function kept fractional exponents")
    poly: dict[int, Fraction] = {}
    powers = {0: QSeries.one(c.trunc)}
    while not c.is_zero() and c.val <= 0:
        k = -c.val
        if k not in powers:
            powers[k] = u ** k
        a = c.lead / powers[k].lead
        poly[k] = poly.get(k, Fraction(0)) + a
        before = c.val
        c = c - powers[k].scale(a)
        if not c.is_zero() and c.val <= before and c.val <= 0 and c.val == before:
            raise ArithmeticError("pole elimination did not make progress")
    return poly


@dataclass(frozen=True)
class Psi2Derivation:
    symmetric_functions: dict[str, QSeries]
    polynomials_in_inverse_x: dict[str, dict[int, Fraction]]
    psi: BivarPoly


def derive_psi2_details(trunc: int = 40, catalog: ModularCatalog | None = None) -> Psi2Derivation:
    if trunc < 40:
        raise ValueError("trunc must be at least 40")
    cat = catalog or _default_catalog
    x = cat("x", 2 * trunc + 4)
    x1 = x.rescale(Fraction(1, 2))                    # x(tau/2)
    x2 = cat("x", trunc // 2 + 4).rescale(2)           # x(2 tau)
    x3 = x.twist_sign().rescale(Fraction(1, 2))       # x((tau+1)/2): q -> -q^(1/2)
    e1 = x1 + x2 + x3
    e2 = x1 * x2 + x1 * x3 + x2 * x3
    e3 = x1 * x2 * x3
    inv_e3 = e3.inverse()
    coeff_series = {
        "Y^-2": -(e2 * inv_e3),
        "Y^-1": e1 * inv_e3,
        "Y^0": -inv_e3,
    }
    u = x.inverse()
    polys = {k: _eliminate_poles(v, u) for k, v in coeff_series.items()}
    # (XY)^-3 Psi(X, Y) = Y^-3 + p2(1/X) Y^-2 + p1(1/X) Y^-1 + p0(1/X)
    rows = {3: {0: Fraction(1)}, 2: polys["Y^-2"], 1: polys["Y^-1"], 0: polys["Y^0"]}
    terms: dict[Monomial, Fraction] = {}
    for ypow_neg, poly in rows.items():
        j = 3 - ypow_neg
        for k, a in poly.items():
            if k > 3:
                raise ArithmeticError("pole of order > 3 in a symmetric function")
            terms[(3 - k, j)] = terms.get((3 - k, j), Fraction(0)) + a
    # primitive integer polynomial, coefficient of XY negative
    den = 1
    for v in terms.values():
        den = den * v.denominator // gcd(den, v.denominator)
    ints = {k: int(v * den) for k, v in terms.items() if v}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    sign = -1 if ints.get((1, 1), 0) > 0 else 1
    ints = {k: sign * v // g for k, v in ints.items()}
    return Psi2Derivation(coeff_series, polys, BivarPoly(ints))


def derive_psi2(trunc: int = 40, catalog: ModularCatalog | None = None) -> BivarPoly:
    """Rebuild Psi_2 from the q-expansions of x(tau/2), x(2 tau), x((tau+1)/2)."""
    return derive_psi2_details(trunc, catalog).psi


# -- derivation of any Psi_n as a kernel --------------------------------------

# the twelve largest primes below 2**62
_PRIMES = (
    4611686018427387847, 4611686018427387817, 4611686018427387787, 4611686018427387761,
    4611686018427387751, 4611686018427387737, 4611686018427387733, 4611686018427387709,
    4611686018427387701, 4611686018427387631, 4611686018427387617, 4611686018427387587,
)


def _kernel_mod_p(rows: list[list[int]], ncols: int, p: int) -> list[int] | None:
    """A kernel vector mod p normalized at its last free column, or None if not 1-dim."""
    mat = [[v % p for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], -1, p)
        pr = [(v * inv) % p for v in mat[r]]
        mat[r] = pr
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                row = mat[i]
                mat[i] = [(a - f * b) % p for a, b in zip(row, pr)]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    vec = [0] * ncols
    vec[f] = 1
    for i, col in enumerate(pivots):
        vec[col] = (-mat[i][f]) % p
    return vec


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def derive_psi_kernel(n: int, extra: int = 40, catalog: ModularCatalog | None = None) -> BivarPoly:
    """Psi_n as the symmetric relation of bidegree psi(n) between x(tau) and x(n tau).

    Clears denominators with z(tau)^psi z(n tau)^psi so the linear system
    is integral, finds its kernel modulo several primes, lifts by CRT and
    rational reconstruction, and verifies the lift exactly.
    """
    if n < 2 or gcd(n, 17) != 1:
        raise ValueError("n must be >= 2 and coprime to 17")
    cat = catalog or _default_catalog
    d = psi_degree(n)
    K = d * (n + 1) + extra
    om, zz = cat("Omega", K), cat("z", K)
    om_n = cat("Omega", K // n + 2).rescale(n).truncate(K)
    z_n = cat("z", K // n + 2).rescale(n).truncate(K)

    def powers(s):
        out = [QSeries.one(K)]
        for _ in range(d):
            out.append(out[-1] * s)
        return out

    pw_om, pw_z, pw_omn, pw_zn = powers(om), powers(zz), powers(om_n), powers(z_n)
    left = [pw_om[i] * pw_z[d - i] for i in range(d + 1)]
    right = [pw_omn[j] * pw_zn[d - j] for j in range(d + 1)]
    basis: list[Monomial] = [(i, j) for i in range(d + 1) for j in range(i, d + 1)]
    columns = []
    for i, j in basis:
        s = left[i] * right[j]
        if i != j:
            s = s + left[j] * right[i]
        columns.append([int(c) for c in s.coefficient_list()[:K]])
    rows = [[col[k] for col in columns] for k in range(K)]

    modulus, residues, prev = 1, None, None
    for p in _PRIMES:
        vec = _kernel_mod_p(rows, len(basis), p)
        if vec is None:
            raise ArithmeticError(f"kernel modulo {p} is not one-dimensional for n={n}")
        if residues is None:
            residues = vec
        else:
            residues = [
                r + modulus * (((v - r) * pow(modulus, -1, p)) % p) for r, v in zip(residues, vec)
            ]
        modulus *= p
        lifted = [_rational_reconstruct(r, modulus) for r in residues]
        if any(v is None for v in lifted):
            continue
        den = 1
        for v in lifted:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v * den) for v in lifted]
        if ints == prev or prev is None:
            if all(sum(c * row[k] for k, c in enumerate(ints)) == 0 for row in rows):
                break
        prev = ints
    else:
        raise ArithmeticError(f"could not lift the kernel for n={n}")
    coeffs: dict[Monomial, int] = {}
    for (i, j), c in zip(basis, ints):
        if c:
            coeffs[(i, j)] = c
            coeffs[(j, i)] = c
    poly = BivarPoly(coeffs).primitive()
    # same sign convention as the printed Psi_2, Psi_3: coefficient of XY is -1
    lead = poly[(1, 1)] or -poly[(d, d)]
    if lead > 0:
        poly = -poly
    return poly


# -- diagonal and partial derivatives -----------------------------------------


@dataclass(frozen=True)
class DiagonalData:
    coeffs: tuple[int, ...]
    content: int
    factors: tuple[tuple[tuple[int, ...], int], ...]

    def expand(self) -> tuple[int, ...]:
        X = sympy.Symbol("X")
        expr = sympy.Integer(self.content)
        for f, mult in self.factors:
            expr *= sympy.Poly(list(reversed(f)), X).as_expr() ** mult
        return tuple(int(c) for c in reversed(sympy.Poly(expr, X).all_coeffs()))

    def to_json(self) -> dict:
        return {
            "coeffs": list(self.coeffs),
            "content": self.content,
            "factors": [{"coeffs": list(f), "multiplicity": m} for f, m in self.factors],
        }


def factor_integer_poly(coeffs) -> tuple[int, tuple[tuple[tuple[int, ...], int], ...]]:
    X = sympy.Symbol("X")
    content, facs = sympy.factor_list(sympy.Poly(list(reversed(coeffs)), X))
    out = []
    for f, mult in facs:
        out.append((tuple(int(c) for c in reversed(f.all_coeffs())), int(mult)))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return int(content), tuple(out)


def diagonal(n: int) -> DiagonalData:
    """Psi_n(X, X) and its factorization over the integers."""
    coeffs = tuple(psi(n).diagonal_coeffs())
    content, factors = factor_integer_poly(coeffs)
    return DiagonalData(coeffs, content, factors)


@dataclass(frozen=True)
class Partials:
    X: QuadSurd
    Y: QuadSurd
    XX: QuadSurd
    XY: QuadSurd
    YY: QuadSurd

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json() for k in ("X", "Y", "XX", "XY", "YY")}


def partials_at(n: int, X0, poly: BivarPoly | None = None) -> Partials:
    """First and second partial derivatives of Psi_n at the diagonal point (X0, X0)."""
    poly = poly if poly is not None else psi(n)
    X0 = X0 if isinstance(X0, QuadSurd) else QuadSurd(X0)
    px, py = poly.dx(), poly.dy()
    return Partials(
        X=px(X0, X0),
        Y=py(X0, X0),
        XX=px.dx()(X0, X0),
        XY=px.dy()(X0, X0),
        YY=py.dy()(X0, X0),
    )
