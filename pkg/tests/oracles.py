"""Independent reference computations used by the tests.

Nothing here imports the package: every value is rebuilt with plain integer
lists, closed forms, or a different algorithm.
"""

from fractions import Fraction
from math import comb, gcd

import mpmath


def sigma(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def pentagonal_euler(N: int) -> list[int]:
    """(q; q)_inf modulo q^N by the pentagonal number theorem."""
    c = [0] * N
    k = 0
    while True:
        hit = False
        for kk in ((k,) if k == 0 else (k, -k)):
            e = kk * (3 * kk - 1) // 2
            if e < N:
                c[e] += -1 if kk % 2 else 1
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return c


def brute_product(factors: list[tuple[int, int]], N: int) -> list[int]:
    """prod (1 - q^e)^p over (e, p), by repeated multiplication / geometric series."""
    c = [0] * N
    c[0] = 1
    for e, p in factors:
        for _ in range(abs(p)):
            if p > 0:
                for i in range(N - 1, e - 1, -1):
                    c[i] -= c[i - e]
            else:
                for i in range(e, N):
                    c[i] += c[i - e]
    return c


def poly_mul(a, b, N):
    out = [Fraction(0)] * N
    for i, x in enumerate(a[:N]):
        if x:
            for j, y in enumerate(b[: N - i]):
                out[i + j] += x * y
    return out


def z_divisor_sum(N: int) -> list[int]:
    """2 + 3 sum (sigma(n) - 17 sigma(n/17)) q^n."""
    out = [2]
    for n in range(1, N):
        out.append(3 * (sigma(n) - (17 * sigma(n // 17) if n % 17 == 0 else 0)))
    return out


def s_series(N: int) -> list[int]:
    """s / q^2 = prod (1 - q^17n)^3 / (1 - q^n)^3."""
    factors = []
    for n in range(1, N):
        factors.append((n, -3))
        if 17 * n < N:
            factors.append((17 * n, 3))
    return brute_product(factors, N)


def z_from_s(N: int) -> list[Fraction]:
    """theta_q log s by solving s' = z s coefficientwise (s has val 2)."""
    s = [Fraction(c) for c in s_series(N)]
    # theta_q (q^2 u) = q^2 (2u + theta u);  z u = 2u + theta u
    rhs = [2 * c + k * c for k, c in enumerate(s)]
    z = []
    for n in range(N):
        acc = rhs[n] - sum(z[k] * s[n - k] for k in range(n))
        z.append(acc / s[0])
    return z


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def sqrt_1_minus_4q(N: int) -> list[int]:
    """sqrt(1 - 4q) = 1 - 2 sum Catalan(n-1) q^n."""
    return [1] + [-2 * catalan(n - 1) for n in range(1, N)]


def level5_closed(N: int) -> list[int]:
    return [comb(2 * n, n) * sum(comb(n, j) ** 2 * comb(n + j, j) for j in range(n + 1)) for n in range(N)]


def radius_polyroots(dps: int = 60):
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([127, 48, 66, 16, -1], maxsteps=200, extraprec=200)
        return max(r.real for r in roots if abs(r.imag) < mpmath.mpf(10) ** (-dps // 2))


def reduce_tau_sl2(t):
    """Standard SL_2(Z) reduction of a point of the upper half plane."""
    t = mpmath.mpc(t)
    for _ in range(1000):
        t = t - mpmath.nint(t.real)
        if abs(t) < 1 - mpmath.mpf(10) ** (-20):
            t = -1 / t
        else:
            return t
    raise RuntimeError


def class_number_bruteforce(d: int) -> int:
    """Count forms with |b| <= a <= c, no normalization shortcuts beyond the boundary rule."""
    h = 0
    for a in range(1, int((-d / 3) ** 0.5) + 2):
        for b in range(-a, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            if b < 0 and (b == -a or a == c):
                continue
            h += 1
    return h


# classical class numbers
CLASS_NUMBERS = {-3: 1, -4: 1, -7: 1, -20: 2, -23: 3, -47: 5, -71: 7, -136: 4, -187: 2, -427: 2}


def pi_oracle(digits: int):
    with mpmath.workdps(digits + 10):
        return +mpmath.pi
