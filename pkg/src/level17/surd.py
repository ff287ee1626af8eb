"""Exact numbers of the form sum q_k sqrt(k) with rational q_k.

Square roots of negative integers are taken on the positive imaginary axis,
so ``sqrt(-7) = i sqrt(7)``.  The common case is a quadratic surd
``p + q sqrt(m)``, but products such as ``i * sqrt(17) / sqrt(-187)`` stay
exact because the set of such numbers is a field (a multiquadratic one).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Mapping, Union

import mpmath
from sympy import factorint

Rat = Union[int, Fraction]


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(f, m)`` with ``n = f**2 * m`` and ``m`` squarefree (sign kept in m)."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    f, m = 1, 1
    for p, e in factorint(abs(n)).items():
        f *= p ** (e // 2)
        if e % 2:
            m *= p
    return f, sign * m


def _mul_radicals(a: int, b: int) -> tuple[int, int]:
    """sqrt(a) * sqrt(b) = c * sqrt(m) for squarefree a, b."""
    g = gcd(a, b)
    m = (a // g) * (b // g)
    c = g if g > 0 else -g
    if a < 0 and b < 0:
        c = -c
    return c, m


class QuadSurd:
    """Exact element of a multiquadratic field, stored as {squarefree k: coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, p: Rat = 0, q: Rat = 0, m: int = 1) -> None:
        terms: dict[int, Fraction] = {}
        if p:
            terms[1] = Fraction(p)
        if q:
            f, k = squarefree_split(m)
            terms[k] = terms.get(k, Fraction(0)) + Fraction(q) * f
        self.terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def from_terms(cls, terms: Mapping[int, Rat]) -> "QuadSurd":
        out = cls()
        acc: dict[int, Fraction] = {}
        for k, v in terms.items():
            f, sk = squarefree_split(k)
            acc[sk] = acc.get(sk, Fraction(0)) + Fraction(v) * f
        out.terms = {k: v for k, v in acc.items() if v}
        return out

    @classmethod
    def sqrt_int(cls, n: Rat) -> "QuadSurd":
        """Exact square root of a rational number."""
        n = Fraction(n)
        if n == 0:
            return cls()
        # sqrt(a/b) = sqrt(a*b)/b
        return cls(0, Fraction(1, n.denominator), n.numerator * n.denominator)

    @classmethod
    def i(cls) -> "QuadSurd":
        return cls(0, 1, -1)

    # -- quadratic view -----------------------------------------------------

    @property
    def radicals(self) -> tuple[int, ...]:
        return tuple(sorted(k for k in self.terms if k != 1))

    def is_quadratic(self) -> bool:
        return len(self.radicals) <= 1

    @property
    def p(self) -> Fraction:
        return self.terms.get(1, Fraction(0))

    @property
    def m(self) -> int:
        rads = self.radicals
        if len(rads) > 1:
            raise ValueError(f"{self} is not a quadratic surd")
        return rads[0] if rads else 1

    @property
    def q(self) -> Fraction:
        m = self.m
        return self.terms.get(m, Fraction(0)) if m != 1 else Fraction(0)

    def is_rational(self) -> bool:
        return not self.radicals

    def is_real(self) -> bool:
        return all(k > 0 for k in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.p

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _lift(x) -> "QuadSurd":
        if isinstance(x, QuadSurd):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadSurd(x)
        return NotImplemented

    def __add__(self, other) -> "QuadSurd":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        out = QuadSurd()
        out.terms = {k: v for k, v in acc.items() if v}
        return out

    __radd__ = __add__

    def __neg__(self) -> "QuadSurd":
        out = QuadSurd()
        out.terms = {k: -v for k, v in self.terms.items()}
        return out

    def __sub__(self, other) -> "QuadSurd":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "QuadSurd":
        return (-self) + other

    def __mul__(self, other) -> "QuadSurd":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc: dict[int, Fraction] = {}
        for a, u in self.terms.items():
            for b, v in other.terms.items():
                c, m = _mul_radicals(a, b)
                acc[m] = acc.get(m, Fraction(0)) + u * v * c
        out = QuadSurd()
        out.terms = {k: v for k, v in acc.items() if v}
        return out

    __rmul__ = __mul__

    def _generators(self) -> list[int]:
        gens: set[int] = set()
        for k in self.terms:
            if k < 0:
                gens.add(-1)
            gens.update(factorint(abs(k)))
        return sorted(gens)

    def galois(self, g: int) -> "QuadSurd":
        """Flip the sign of sqrt(g) (g a prime, or -1 for i)."""
        out = QuadSurd()
        if g == -1:
            out.terms = {k: (-v if k < 0 else v) for k, v in self.terms.items()}
        else:
            out.terms = {k: (-v if k % g == 0 else v) for k, v in self.terms.items()}
        return out

    def conjugate(self) -> "QuadSurd":
        """Complex conjugate."""
        return self.galois(-1)

    def inverse(self) -> "QuadSurd":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return QuadSurd(1 / self.p)
        g = self._generators()[0]
        other = self.galois(g)
        return other * (self * other).inverse()

    def __truediv__(self, other) -> "QuadSurd":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QuadSurd":
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> "QuadSurd":
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadSurd(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def real_part(self) -> "QuadSurd":
        out = QuadSurd()
        out.terms = {k: v for k, v in self.terms.items() if k > 0}
        return out

    def imag_part(self) -> "QuadSurd":
        """Imaginary part as a real surd."""
        out = QuadSurd()
        out.terms = {-k: v for k, v in self.terms.items() if k < 0}
        return out

    # -- square roots -----------------------------------------------------

    def sqrt(self) -> "QuadSurd | None":
        """Exact square root ``a + b sqrt(m)`` of a quadratic surd, or None.

        Rationals always have one (possibly imaginary).  The sign of the
        result is not normalized.
        """
        if self.is_zero():
            return QuadSurd()
        if self.is_rational():
            return QuadSurd.sqrt_int(self.p)
        if not self.is_quadratic():
            return None
        p, q, m = self.p, self.q, self.m
        disc = p * p - m * q * q
        if disc < 0:
            return None
        root = _rational_sqrt(disc)
        if root is None:
            return None
        for a2 in ((p + root) / 2, (p - root) / 2):
            a = _rational_sqrt(a2) if a2 > 0 else None
            if a is not None and a != 0:
                b = q / (2 * a)
                cand = QuadSurd(a, b, m)
                if cand * cand == self:
                    return cand
        return None

    # -- numerics and io --------------------------------------------------

    def to_mpc(self, dps: int = 50):
        with mpmath.workdps(dps + 10):
            total = mpmath.mpc(0)
            for k, v in self.terms.items():
                root = mpmath.sqrt(abs(k)) * (1j if k < 0 else 1)
                total += mpmath.mpf(v.numerator) / v.denominator * root
            return total

    def to_mp(self, dps: int = 50):
        z = self.to_mpc(dps)
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return z.real

    def minimal_polynomial(self) -> tuple[int, ...]:
        """Primitive integer minimal polynomial over Q (quadratic surds), lowest degree first."""
        if self.is_rational():
            c = self.p
            return _primitive((-c.numerator, c.denominator))
        if not self.is_quadratic():
            raise ValueError("minimal polynomial only for quadratic surds")
        p, q, m = self.p, self.q, self.m
        # X^2 - 2p X + (p^2 - m q^2)
        return _primitive_fraction((p * p - m * q * q, -2 * p, Fraction(1)))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (k != 1, abs(k), k)):
            v = self.terms[k]
            if k == 1:
                parts.append(str(v))
            elif k == -1:
                parts.append(f"{v}*i")
            elif k < 0:
                parts.append(f"{v}*i*sqrt({-k})")
            else:
                parts.append(f"{v}*sqrt({k})")
        return " + ".join(parts)

    def to_json(self) -> dict:
        if self.is_quadratic():
            return {"p": str(self.p), "q": str(self.q), "m": self.m}
        return {"terms": {str(k): str(v) for k, v in sorted(self.terms.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "QuadSurd":
        if "terms" in data:
            return cls.from_terms({int(k): Fraction(v) for k, v in data["terms"].items()})
        return cls(Fraction(str(data.get("p", 0))), Fraction(str(data.get("q", 0))), int(data.get("m", 1)))


def _rational_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    a, b = c.numerator, c.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def _primitive(coeffs) -> tuple[int, ...]:
    g = 0
    for c in coeffs:
        g = gcd(g, int(c))
    g = g or 1
    out = [int(c) // g for c in coeffs]
    if out[-1] < 0:
        out = [-c for c in out]
    return tuple(out)


def _primitive_fraction(coeffs) -> tuple[int, ...]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return _primitive([c * den for c in coeffs])


def poly_eval_surd(coeffs, x: QuadSurd) -> QuadSurd:
    acc = QuadSurd()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
