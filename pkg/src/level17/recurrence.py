"""Power-series coefficients of z in the Hauptmodul x.

``gen_A`` runs the seven-term holonomic recurrence; ``solve_A_by_composition``
recovers the same numbers from the q-expansions alone, which keeps the two
derivations independent of each other.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath

from .catalog import IdentityReport, ModularCatalog, _default_catalog, report_from_residual
from .series import QSeries

# x-radius polynomial 127x^4 + 48x^3 + 66x^2 + 16x - 1, lowest degree first
RADIUS_POLY = (-1, 16, 66, 48, 127)


@dataclass(frozen=True)
class CoeffSequence:
    values: tuple[Fraction, ...]
    source: str

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def all_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def as_ints(self) -> list[int]:
        if not self.all_integral():
            raise ValueError("sequence has non-integral entries")
        return [int(v) for v in self.values]


def _recurrence_terms(n: int) -> tuple[int, ...]:
    """Coefficients multiplying A_n, A_{n-1}, ..., A_{n-6}."""
    return (
        -19 * n**3 - 24 * n**2 - 14 * n - 3,
        -3 * (5 * n**3 + 27 * n**2 - 8 * n + 4),
        101 * n**3 - 300 * n**2 + 213 * n - 52,
        -3 * (55 * n**3 - 267 * n**2 + 491 * n - 305),
        3 * (n - 3) * (101 * n**2 - 297 * n + 253),
        -9 * (n - 4) * (n - 3) * (37 * n - 66),
        127 * (n - 5) * (n - 4) * (n - 3),
    )


_A_cache: list[Fraction] = [Fraction(2)]
_A_lock = threading.Lock()


def gen_A(N: int) -> CoeffSequence:
    """A_0 .. A_N from the recurrence, with A_0 = 2 and A_{-k} = 0."""
    if N < 0:
        raise ValueError("N must be non-negative")
    vals = _A_cache
    with _A_lock:
        while len(vals) <= N:
            n = len(vals) - 1
            acc = 0
            for k, c in enumerate(_recurrence_terms(n)):
                if n - k >= 0 and c:
                    acc += c * vals[n - k]
            vals.append(Fraction(-acc, (n + 1) ** 3))
    return CoeffSequence(tuple(vals[: N + 1]), "recurrence")


def solve_A_by_composition(N: int, catalog: ModularCatalog | None = None) -> CoeffSequence:
    """A_0 .. A_N by matching z = sum A_n x^n coefficientwise in q."""
    cat = catalog or _default_catalog
    z = cat("z", N + 1)
    x = cat("x", N + 1)
    powers = [QSeries.one(N + 1)]
    for _ in range(N):
        powers.append(powers[-1] * x)
    vals: list[Fraction] = []
    for n in range(N + 1):
        known = sum((vals[k] * powers[k][n] for k in range(n)), Fraction(0))
        vals.append((z[n] - known) / powers[n][n])
    return CoeffSequence(tuple(vals), "composition")


def level5_a(N: int) -> CoeffSequence:
    """Closed form binom(2n, n) * sum_j binom(n, j)^2 binom(n+j, j)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    vals = []
    for n in range(N + 1):
        inner = sum(comb(n, j) ** 2 * comb(n + j, j) for j in range(n + 1))
        vals.append(Fraction(comb(2 * n, n) * inner))
    return CoeffSequence(tuple(vals), "closed-form")


def radius(digits: int = 50):
    """Positive root of 127x^4 + 48x^3 + 66x^2 + 16x - 1 by bisection then Newton.

    The polynomial is -1 at 0 and positive at 0.06, and increasing on that
    interval, so the bracketed root is the unique positive one.
    """
    with mpmath.workdps(digits + 20):
        p = lambda t: mpmath.polyval(list(reversed(RADIUS_POLY)), t)
        dp = lambda t: mpmath.polyval([4 * 127, 3 * 48, 2 * 66, 16], t)
        lo, hi = mpmath.mpf(0), mpmath.mpf("0.06")
        for _ in range(60):
            mid = (lo + hi) / 2
            if p(mid) > 0:
                hi = mid
            else:
                lo = mid
        t = (lo + hi) / 2
        tol = mpmath.mpf(10) ** (-(digits + 10))
        for _ in range(200):
            step = p(t) / dp(t)
            t -= step
            if abs(step) < tol:
                break
        return +t


def verify_composition(trunc: int, catalog: ModularCatalog | None = None) -> IdentityReport:
    """Residual of z - sum_{n < trunc} A_n x^n modulo q**trunc."""
    if trunc < 10:
        raise ValueError("trunc must be at least 10")
    cat = catalog or _default_catalog
    z, x = cat("z", trunc), cat("x", trunc)
    A = gen_A(trunc)
    acc = QSeries([A[trunc]], 0, trunc)
    for n in range(trunc - 1, -1, -1):
        acc = acc * x + A[n]
    return report_from_residual("z-as-series-in-x", "z = sum A_n x^n", trunc, z - acc)


def eval_z_series(X, N: int | None = None, digits: int = 30):
    """Numeric sum_{n <= N} A_n X^n (for convergence checks)."""
    with mpmath.workdps(digits + 10):
        X = mpmath.mpmathify(X)
        if N is None:
            N = 200
        A = gen_A(N)
        return mpmath.fsum(mpmath.mpf(a.numerator) / a.denominator * X**n for n, a in enumerate(A.values))
