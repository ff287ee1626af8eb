"""CM points, numerical evaluation of x(tau), and certificates for singular values.

Points are named by binary quadratic forms ``(a, b, c)``; ``tau(a, b, c)`` is
the root of ``a t^2 + b t + c`` in the upper half plane.  ``x`` is invariant
under Gamma_0(17) and the Fricke involution, so evaluation first moves tau as
far up the half plane as that group allows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath

from .catalog import ModularCatalog, _default_catalog
from .modeq import available_degrees, psi
from .recurrence import radius
from .surd import QuadSurd, poly_eval_surd

GUARD = 0.2  # fraction of extra working digits
MAX_TRUNC = 1200


class InsufficientOrderError(ValueError):
    """The available truncation cannot meet the requested precision."""


def _work_dps(digits: int) -> int:
    return int(math.ceil(digits * (1 + GUARD))) + 10


# -- forms ------------------------------------------------------------------


@dataclass(frozen=True)
class BQForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"leading coefficient must be positive: {self}")
        if self.disc >= 0:
            raise ValueError(f"form must be positive definite: {self}")

    @classmethod
    def parse(cls, text: str) -> "BQForm":
        parts = [int(t) for t in text.replace("(", "").replace(")", "").split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected a,b,c: {text!r}")
        return cls(*parts)

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 if (abs(b) == a or a == c) else True

    def tau_surd(self) -> QuadSurd:
        """Exact tau = (-b + sqrt(d)) / (2a)."""
        return QuadSurd(Fraction(-self.b, 2 * self.a), Fraction(1, 2 * self.a), self.disc)

    def transform(self, m: tuple[int, int, int, int]) -> "BQForm":
        """The form whose root is ``m . tau`` (m integral, positive determinant)."""
        p, q, r, s = m
        a, b, c = self.a, self.b, self.c
        # tau = (s t - q) / (-r t + p) substituted into a tau^2 + b tau + c
        A = a * s * s - b * s * r + c * r * r
        B = -2 * a * q * s + b * (s * p + q * r) - 2 * c * p * r
        C = a * q * q - b * q * p + c * p * p
        g = gcd(gcd(A, B), C)
        A, B, C = A // g, B // g, C // g
        if A < 0:
            A, B, C = -A, -B, -C
        return BQForm(A, B, C)

    def to_json(self) -> list[int]:
        return [self.a, self.b, self.c]

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def tau_of(form: BQForm, digits: int = 50):
    with mpmath.workdps(digits + 10):
        d = form.disc
        return mpmath.mpc(mpmath.mpf(-form.b), mpmath.sqrt(-d)) / (2 * form.a)


def reduce_form(form: BQForm) -> BQForm:
    """Classical reduction: |b| <= a <= c, and b >= 0 when |b| = a or a = c."""
    a, b, c = form.a, form.b, form.c
    while True:
        if c < a:
            a, b, c = c, -b, a
            continue
        if abs(b) > a:
            # translate tau -> tau + k to bring b into (-a, a]
            k = (a - b) // (2 * a)
            c = a * k * k + b * k + c
            b = b + 2 * a * k
            continue
        break
    if b < 0 and (-b == a or a == c):
        b = -b
    return BQForm(a, b, c)


def reduced_forms(d: int) -> list[BQForm]:
    """Primitive reduced forms of discriminant d."""
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"not a negative discriminant: {d}")
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = BQForm(a, b, c)
            if c >= a and f.is_reduced() and f.is_primitive():
                out.append(f)
        a += 1
    return out


# -- group actions -------------------------------------------------------------


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def mobius(m, t):
    a, b, c, d = m
    return (a * t + b) / (c * t + d)


def _gamma0_from_bottom(c: int, d: int) -> tuple[int, int, int, int]:
    """An element (a, b; c, d) of SL_2(Z) with the given coprime bottom row."""
    g, u, v = _egcd(d, c)  # u d + v c = 1
    assert g == 1
    return (u, -v, c, d)


def reduce_tau(tau, max_steps: int = 200):
    """Move tau to a point of maximal height in its Gamma_0(17)+ orbit.

    Returns ``(tau', steps)``.  Each step either translates or applies the
    element (of Gamma_0(17) or of its Fricke coset) that raises Im tau most.
    """
    t = mpmath.mpc(tau)
    eps = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    for step in range(max_steps):
        t = t - mpmath.nint(t.real)
        y, x = t.imag, t.real
        best, best_m = mpmath.mpf(1) - eps, None
        # Gamma_0(17): Im -> Im / |17 c t + d|^2
        c = 1
        while 17 * c * y < 1:
            base = -17 * c * x
            for d in range(int(mpmath.floor(base)) - 1, int(mpmath.ceil(base)) + 2):
                if gcd(17 * c, d) != 1:
                    continue
                f = abs(17 * c * t + d) ** 2
                if f < best:
                    best, best_m = f, _gamma0_from_bottom(17 * c, d)
            c += 1
        # Fricke coset (17a, b; 17c, 17d), det 17: Im -> Im / (17 |c t + d|^2)
        c = 1
        while 17 * (c * y) ** 2 < 1:
            base = -c * x
            for d in range(int(mpmath.floor(base)) - 1, int(mpmath.ceil(base)) + 2):
                if gcd(c, 17 * d) != 1:
                    continue
                f = 17 * abs(c * t + d) ** 2
                if f < best:
                    _, u, v = _egcd(17 * d, c)  # u (17 d) + v c = 1
                    best, best_m = f, (17 * u, -v, 17 * c, 17 * d)
            c += 1
        if best_m is None:
            return t, step
        t = mobius(best_m, t)
    raise RuntimeError("reduction did not terminate")


# -- numerical evaluation -----------------------------------------------------


@dataclass(frozen=True)
class XValue:
    value: mpmath.mpc
    error_bound: mpmath.mpf
    method: str
    terms: int
    abs_q: mpmath.mpf
    tau_reduced: mpmath.mpc

    def to_json(self, digits: int = 30) -> dict:
        return {
            "re": mpmath.nstr(self.value.real, digits),
            "im": mpmath.nstr(self.value.imag, digits),
            "error_bound": mpmath.nstr(self.error_bound, 5),
            "method": self.method,
            "terms": self.terms,
            "abs_q": mpmath.nstr(self.abs_q, 10),
            "tau_reduced": [mpmath.nstr(self.tau_reduced.real, 20), mpmath.nstr(self.tau_reduced.imag, 20)],
        }


def _series_values(names, cat: ModularCatalog, N: int, qv):
    out = []
    for name in names:
        s = cat(name, N)
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in s.coefficient_list()[:N]]
        out.append((coeffs, mpmath.polyval(coeffs[::-1], qv)))
    return out


def _tail_bound(coeffs, r, N):
    """Bound sum_{n >= N} |c_n| r^n assuming |c_n| <= K n^3 (K fitted with a factor 2)."""
    K = max((abs(c) / mpmath.mpf(n) ** 3 for n, c in enumerate(coeffs) if n > 0), default=1) * 2
    rho = r * (mpmath.mpf(N + 1) / N) ** 3
    if rho >= 1:
        return mpmath.inf
    return K * mpmath.mpf(N) ** 3 * r ** N / (1 - rho)


def _terms_needed(r, target, K=10):
    n = 10
    while n <= MAX_TRUNC:
        rho = r * (mpmath.mpf(n + 1) / n) ** 3
        if rho < 1 and K * mpmath.mpf(n) ** 3 * r ** n / (1 - rho) < target:
            return n
        n += 10
    return None


def _eta(qv, q24, target):
    """eta = q^(1/24) sum (-1)^k q^(k(3k-1)/2) over all integers k."""
    total = mpmath.mpc(1)
    k = 1
    r = abs(qv)
    while True:
        e1, e2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
        sgn = -1 if k % 2 else 1
        total += sgn * (qv ** e1 + qv ** e2)
        if 2 * r ** (e1 + 3 * k + 1) / (1 - r) < target:
            break
        k += 1
    return q24 * total


def _x_theta(tau, target):
    """x = 8 E / (8 E + Theta^2), E = eta(tau)^2 eta(17 tau)^2."""
    two_pi_i = 2j * mpmath.pi
    q = mpmath.exp(two_pi_i * tau)
    q4 = mpmath.exp(two_pi_i * tau / 4)
    y = tau.imag
    # Gaussian lattice sum; |terms| <= 2 exp(-pi y (n^2 + 17 m^2) / 2)
    bound = int(mpmath.ceil(mpmath.sqrt((-mpmath.log(target) + 10) * 2 / (mpmath.pi * y)))) + 2
    theta = mpmath.mpc(0)
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            w = (1 if m % 2 == 0 else -1) - (1 if n % 2 == 0 else -1)
            if w:
                theta += w * q4 ** (n * n + 17 * m * m)
    e1 = _eta(q, mpmath.exp(two_pi_i * tau / 24), target)
    e17 = _eta(q ** 17, mpmath.exp(two_pi_i * 17 * tau / 24), target)
    E = (e1 * e17) ** 2
    return 8 * E / (8 * E + theta ** 2)


def eval_x(tau, digits: int = 50, trunc: int | None = None, method: str = "auto",
           catalog: ModularCatalog | None = None) -> XValue:
    """x(tau) to ``digits`` digits with an explicit truncation error bound.

    ``method`` is "series" (Omega/z from the q-expansions), "theta" (the theta
    quotient, which has no poles in the upper half plane) or "auto", which
    uses the series unless z(tau) is too close to zero for the quotient to be
    stable, as happens at elliptic points.
    """
    if method not in ("auto", "series", "theta"):
        raise ValueError(f"unknown method {method!r}")
    cat = catalog or _default_catalog
    with mpmath.workdps(_work_dps(digits)):
        tau = mpmath.mpc(tau)
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half plane")
        t, _ = reduce_tau(tau)
        qv = mpmath.exp(2j * mpmath.pi * t)
        r = abs(qv)
        target = mpmath.mpf(10) ** (-(digits + 5))
        if method == "theta":
            return XValue(_x_theta(t, target), target, "theta", 0, r, t)
        N = _terms_needed(r, target)
        if trunc is not None:
            if N is None or N > trunc:
                raise InsufficientOrderError(
                    f"|q| = {mpmath.nstr(r, 5)} needs more than {trunc} terms for {digits} digits")
        if N is None:
            raise InsufficientOrderError(f"|q| = {mpmath.nstr(r, 5)} too large for {MAX_TRUNC} terms")
        (om_c, om), (z_c, zv) = _series_values(("Omega", "z"), cat, N, qv)
        err = max(_tail_bound(om_c, r, N), _tail_bound(z_c, r, N))
        unstable = abs(zv) <= err * 10 ** (digits // 2) or abs(zv) < mpmath.mpf(10) ** (-(digits // 3))
        if unstable:
            if method == "series":
                raise InsufficientOrderError("z(tau) vanishes numerically; use the theta quotient")
            return XValue(_x_theta(t, target), target, "theta", 0, r, t)
        x = om / zv
        bound = (err + abs(x) * err) / (abs(zv) - err)
        return XValue(x, bound, "series", N, r, t)


def eval_w(tau, digits: int = 30, catalog: ModularCatalog | None = None):
    """w(tau) = (2/z) theta_q log(Omega/z), evaluated without reducing tau (w is not invariant)."""
    cat = catalog or _default_catalog
    with mpmath.workdps(_work_dps(digits)):
        tau = mpmath.mpc(tau)
        qv = mpmath.exp(2j * mpmath.pi * tau)
        N = _terms_needed(abs(qv), mpmath.mpf(10) ** (-(digits + 5)))
        if N is None:
            raise InsufficientOrderError("tau too close to the real axis")
        om = cat("Omega", N + 1)
        z = cat("z", N + 1)
        vals = _series_values(("Omega", "z"), cat, N, qv)
        th = []
        for s in (om.theta(), z.theta()):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in s.coefficient_list()[:N]]
            th.append(mpmath.polyval(coeffs[::-1], qv))
        omv, zv = vals[0][1], vals[1][1]
        return 2 / zv * (th[0] / omv - th[1] / zv)


# -- tables -------------------------------------------------------------------


def _inv(p, q, m) -> QuadSurd:
    return QuadSurd(p, q, m).inverse()


@dataclass(frozen=True)
class SingularRow:
    disc: int
    form: BQForm
    claimed: QuadSurd
    n: int  # degree of the element of Delta_n^*(17) relating tau to itself or its Fricke image


SINGULAR_ROWS = (
    SingularRow(-1411, BQForm(17, 17, 25), _inv(-1025, -252, 17), 59),
    SingularRow(-1003, BQForm(17, 17, 19), _inv(-345, -84, 17), 19),
    SingularRow(-595, BQForm(17, -17, 13), _inv(-90, -21, 17), 13),
    SingularRow(-427, BQForm(17, -27, 17), _inv(30, 33, -7), 107),
    SingularRow(-427, BQForm(17, -41, 31), _inv(30, -33, -7), 107),
    SingularRow(-408, BQForm(17, -34, 23), _inv(55, 24, 2), 23),
    SingularRow(-408, BQForm(34, -68, 37), _inv(55, -24, 2), 23),
    SingularRow(-340, BQForm(17, -34, 22), _inv(29, 4, 85), 5),
    SingularRow(-323, BQForm(17, -17, 9), _inv(-22, -7, 17), 19),
    SingularRow(-187, BQForm(17, -17, 7), QuadSurd(Fraction(-1, 21)), 7),
    SingularRow(-136, BQForm(17, -34, 19), _inv(12, 3, 17), 2),
)

# x = 1 at this elliptic point, outside the radius of convergence
ELLIPTIC_ROW = SingularRow(-4, BQForm(17, -8, 1), QuadSurd(1), 2)


@dataclass(frozen=True)
class GL2Action:
    matrix: tuple[int, int, int, int]
    upper: tuple[int, int, int, int]
    fixes: bool  # True: matrix fixes tau; False: sends tau to -1/(17 tau)

    @property
    def det(self) -> int:
        a, b, c, d = self.matrix
        return a * d - b * c

    def in_delta_star(self) -> bool:
        a, b, c, d = self.matrix
        return self.det > 0 and c % 17 == 0 and gcd(gcd(a, b), gcd(c, d)) == 1

    def gamma0_factor(self) -> tuple[Fraction, ...]:
        """g = matrix * upper^-1, which should lie in Gamma_0(17)."""
        a, b, c, d = self.matrix
        al, be, _, de = self.upper
        n = al * de
        # upper^-1 = (de, -be; 0, al) / n
        return tuple(Fraction(v, n) for v in (a * de, -a * be + b * al, c * de, -c * be + d * al))


TRANSFORM_ROWS = (
    (BQForm(17, 17, 25), GL2Action((-1, -2, 17, -25), (1, 2, 0, 59), False)),
    (BQForm(17, 17, 19), GL2Action((1, 0, 17, 19), (1, 0, 0, 19), False)),
    (BQForm(17, -17, 13), GL2Action((-1, 0, 17, -13), (1, 0, 0, 13), False)),
    (BQForm(17, -27, 17), GL2Action((13, -17, 17, -14), (1, 81, 0, 107), True)),
    (BQForm(17, -41, 31), GL2Action((20, -31, 17, -21), (1, 68, 0, 107), True)),
    (BQForm(17, -34, 23), GL2Action((-1, 0, 34, -23), (1, 0, 0, 23), False)),
    (BQForm(34, -68, 37), GL2Action((-2, 1, 51, -37), (1, 11, 0, 23), False)),
    (BQForm(17, -34, 22), GL2Action((-1, 1, 17, -22), (1, 4, 0, 5), False)),
    (BQForm(17, -17, 9), GL2Action((-2, 1, 17, -18), (1, 9, 0, 19), False)),
    (BQForm(17, -17, 7), GL2Action((-1, 0, 17, -7), (1, 0, 0, 7), False)),
    (BQForm(17, -34, 19), GL2Action((-1, 1, 17, -19), (1, 1, 0, 2), False)),
    # elliptic point: this element fixes tau
    (BQForm(17, -8, 1), GL2Action((3, -1, 17, -5), (1, 1, 0, 2), True)),
)


@dataclass
class TransformReport:
    form: BQForm
    action: GL2Action
    checks: dict[str, bool]
    gamma0_factor: tuple[Fraction, ...]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "matrix": list(self.action.matrix),
            "upper": list(self.action.upper),
            "fixes_tau": self.action.fixes,
            "n": self.action.det,
            "gamma0_factor": [str(v) for v in self.gamma0_factor],
            "checks": self.checks,
            "status": "PASS" if self.passed else "FAIL",
        }


def check_transform_row(form: BQForm, action: GL2Action) -> TransformReport:
    al, be, zero, de = action.upper
    g = action.gamma0_factor()
    tau = form.tau_surd()
    image = mobius(action.matrix, tau)
    target = tau if action.fixes else -1 / (17 * tau)
    checks = {
        "determinant": action.det == al * de,
        "upper_triangular": zero == 0 and 0 <= be < de and gcd(gcd(al, be), de) == 1,
        "coprime_to_17": action.det % 17 != 0,
        "congruence": action.in_delta_star(),
        "mobius_action": image == target,
        "gamma0_equivalent": all(v.denominator == 1 for v in g)
        and g[0] * g[3] - g[1] * g[2] == 1 and g[2] % 17 == 0,
    }
    return TransformReport(form, action, checks, g)


def verify_table2() -> list[TransformReport]:
    return [check_transform_row(f, a) for f, a in TRANSFORM_ROWS]


# -- certificates ------------------------------------------------------------


def _poly_divmod(num, den):
    """Division of integer polynomials (lowest degree first) over Q."""
    num = [Fraction(c) for c in num]
    out = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = Fraction(den[-1])
    for i in range(len(num) - len(den), -1, -1):
        coef = num[i + len(den) - 1] / lead
        out[i] = coef
        for j, c in enumerate(den):
            num[i + j] -= coef * c
    rem = num[: len(den) - 1]
    return out, rem


def factor_multiplicity(poly, factor) -> int:
    k = 0
    while True:
        q, rem = _poly_divmod(poly, factor)
        if any(rem):
            return k
        poly, k = q, k + 1
        if len(poly) < len(factor):
            return k


@dataclass
class Certificate:
    form: BQForm
    claimed: QuadSurd
    n: int | None
    polynomial: tuple[int, ...]
    polynomial_source: str
    multiplicity: int
    exact_root: bool
    numeric: XValue
    residual: mpmath.mpf
    tolerance: mpmath.mpf
    digits: int
    inside_radius: bool
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.exact_root and self.residual < self.tolerance

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "disc": self.form.disc,
            "claimed": self.claimed.to_json(),
            "n": self.n,
            "certificate_polynomial": list(self.polynomial),
            "polynomial_source": self.polynomial_source,
            "multiplicity": self.multiplicity,
            "exact_root": self.exact_root,
            "numeric": self.numeric.to_json(),
            "residual": mpmath.nstr(self.residual, 5),
            "tolerance": mpmath.nstr(self.tolerance, 5),
            "digits": self.digits,
            "inside_radius": self.inside_radius,
            "notes": self.notes,
            "status": "PASS" if self.passed else "FAIL",
        }


def certify_value(form: BQForm, claimed: QuadSurd, n: int | None = None, digits: int = 60,
                  tolerance=None, catalog: ModularCatalog | None = None) -> Certificate:
    """Certify ``x(tau(form)) == claimed``.

    The exact part: the minimal polynomial of ``claimed`` divides Psi_n(X, X)
    when Psi_n is available (otherwise only the minimal polynomial itself is
    checked).  The numeric part: |x(tau) - claimed| below ``tolerance``,
    which defaults to 10^(-2 digits / 3).
    """
    if n is not None and n % 17 == 0:
        raise ValueError("n must be coprime to 17")
    notes = []
    minpoly = claimed.minimal_polynomial()
    exact = poly_eval_surd(minpoly, claimed).is_zero()
    mult, source = 1, "minimal polynomial"
    if n is not None and n in available_degrees():
        diag = psi(n).diagonal_coeffs()
        mult = factor_multiplicity(diag, minpoly)
        exact = exact and mult > 0
        source = f"Psi_{n}(X,X)"
    elif n is not None:
        notes.append(f"Psi_{n} not available; exact check limited to the minimal polynomial")
    with mpmath.workdps(_work_dps(digits)):
        tol = mpmath.mpf(tolerance) if tolerance is not None else mpmath.mpf(10) ** (-(2 * digits // 3))
        xv = eval_x(tau_of(form, _work_dps(digits)), digits, catalog=catalog)
        c = claimed.to_mpc(_work_dps(digits))
        resid = abs(xv.value - c)
        inside = abs(c) < radius(digits)
    return Certificate(form, claimed, n, minpoly, source, mult, exact, xv, resid, tol, digits, inside, notes)


def certify_singular_rows(digits: int = 60, rows=SINGULAR_ROWS) -> list[Certificate]:
    return [certify_value(r.form, r.claimed, r.n, digits) for r in rows]


# -- discriminant scans -------------------------------------------------------


COSETS = ((1, 0, 0, 1),) + tuple((0, -1, 1, k) for k in range(-8, 9))


@dataclass(frozen=True)
class ScanEntry:
    reduced: BQForm
    coset: tuple[int, int, int, int]
    form: BQForm
    x: mpmath.mpc
    inside_radius: bool
    match: QuadSurd | None

    def to_json(self, digits: int = 20) -> dict:
        return {
            "reduced": self.reduced.to_json(),
            "coset": list(self.coset),
            "form": self.form.to_json(),
            "x": [mpmath.nstr(self.x.real, digits), mpmath.nstr(self.x.imag, digits)],
            "inside_radius": self.inside_radius,
            "match": self.match.to_json() if self.match is not None else None,
            "degree_le_2": self.match is not None,
        }


def class_scan(d: int, digits: int = 30, known=None) -> list[ScanEntry]:
    """Images of the reduced forms of discriminant d under the 18 coset representatives."""
    known = known if known is not None else [r.claimed for r in SINGULAR_ROWS] + [ELLIPTIC_ROW.claimed]
    out = []
    with mpmath.workdps(digits + 10):
        rad = radius(digits)
        tol = mpmath.mpf(10) ** (-(digits // 2))
        targets = [(k, k.to_mpc(digits)) for k in known]
        for f in reduced_forms(d):
            for m in COSETS:
                image = f.transform(m)
                xv = eval_x(tau_of(image, digits), digits).value
                match = next((k for k, v in targets if abs(v - xv) < tol), None)
                out.append(ScanEntry(f, m, image, xv, abs(xv) < rad, match))
    return out


def class_number(d: int) -> int:
    return len(reduced_forms(d))


__all__ = [
    "BQForm", "tau_of", "reduce_form", "reduced_forms", "reduce_tau", "eval_x", "eval_w", "XValue",
    "InsufficientOrderError", "SINGULAR_ROWS", "TRANSFORM_ROWS", "ELLIPTIC_ROW", "GL2Action", "SingularRow",
    "verify_table2", "certify_value", "certify_singular_rows", "class_scan", "class_number", "Certificate",
]
