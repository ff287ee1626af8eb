"""Truncated Laurent-Puiseux series in q with exact rational coefficients.

A :class:`QSeries` stores the coefficients of ``q**(e/D)`` for integer
numerators ``val <= e < trunc``; everything from ``q**(trunc/D)`` on is
unknown.  Arithmetic tracks that bound explicitly, so series built at
different orders can be mixed safely.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _common_denominator(coeffs: Sequence[Fraction]) -> int:
    den = 1
    for c in coeffs:
        d = c.denominator
        if den % d:
            den = _lcm(den, d)
    return den


def _to_ints(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = _common_denominator(coeffs)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two integer sequences."""
    out = [0] * n
    nb = min(len(b), n)
    for i, ai in enumerate(a[:n]):
        if ai:
            lim = min(nb, n - i)
            for j in range(lim):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
    return out


def _rational_sqrt(c: Fraction) -> Fraction:
    if c <= 0:
        raise ValueError(f"leading coefficient {c} is not a positive square")
    p, q = c.numerator, c.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp != p or rq * rq != q:
        raise ValueError(f"leading coefficient {c} is not a rational square")
    return Fraction(rp, rq)


class QSeries:
    """Immutable truncated series ``sum c_e q**(e/denom)``, ``val <= e < trunc``."""

    __slots__ = ("denom", "val", "coeffs", "trunc")

    def __init__(
        self,
        coeffs: Iterable[Number],
        val: int = 0,
        trunc: int | None = None,
        denom: int = 1,
    ) -> None:
        cs = [Fraction(c) for c in coeffs]
        if trunc is None:
            trunc = val + len(cs)
        if denom <= 0:
            raise ValueError("denom must be positive")
        cs = cs[: max(trunc - val, 0)]
        if len(cs) < trunc - val:
            cs.extend([Fraction(0)] * (trunc - val - len(cs)))
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        val += start
        cs = cs[start:]
        if not cs:
            val = trunc
        # reduce the exponent denominator
        # (the truncation bound rounds down: unknown terms may sit off the coarser grid)
        g = denom
        if g > 1 and cs:
            for i, c in enumerate(cs):
                if g == 1:
                    break
                if c:
                    g = gcd(g, val + i)
        if g > 1:
            new_trunc = trunc // g
            cs = cs[: max(g * new_trunc - val, 0)][::g]
            val = -(-val // g) if cs else new_trunc
            trunc = new_trunc
            denom //= g
        object.__setattr__(self, "denom", denom)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def monomial(cls, coeff: Number, exponent: Number, trunc: Number) -> "QSeries":
        """``coeff * q**exponent`` known modulo ``q**trunc`` (rational exponents)."""
        exponent, trunc = Fraction(exponent), Fraction(trunc)
        d = _lcm(exponent.denominator, trunc.denominator)
        e = int(exponent * d)
        t = int(trunc * d)
        return cls([coeff], val=e, trunc=t, denom=d) if e < t else cls([], val=t, trunc=t, denom=d)

    @classmethod
    def one(cls, trunc: int) -> "QSeries":
        return cls([1], 0, trunc)

    @classmethod
    def from_ints(cls, ints: Sequence[int], den: int, val: int, trunc: int, denom: int = 1) -> "QSeries":
        return cls((Fraction(a, den) for a in ints), val, trunc, denom)

    # -- basic accessors ------------------------------------------------------

    @property
    def order(self) -> Fraction:
        """Exponent below which every coefficient is known."""
        return Fraction(self.trunc, self.denom)

    @property
    def valuation(self) -> Fraction | None:
        """Exponent of the leading term, ``None`` if zero to the known order."""
        return Fraction(self.val, self.denom) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ZeroDivisionError("series is zero to its truncation order")
        return self.coeffs[0]

    def __getitem__(self, exponent: Number) -> Fraction:
        e = Fraction(exponent) * self.denom
        if e.denominator != 1:
            return Fraction(0)
        e = int(e)
        if e >= self.trunc:
            raise IndexError(f"coefficient of q^{exponent} is beyond the truncation order {self.order}")
        if e < self.val:
            return Fraction(0)
        return self.coeffs[e - self.val]

    def items(self):
        """Yield ``(exponent, coeff)`` pairs for the nonzero known coefficients."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield Fraction(self.val + i, self.denom), c

    def coefficient_list(self, start: int = 0) -> list[Fraction]:
        """Coefficients of ``q**start, ..., q**(trunc-1)`` for an integral series."""
        if self.denom != 1:
            raise ValueError("series has fractional exponents")
        return [self[k] for k in range(start, self.trunc)]

    def truncate(self, order: Number) -> "QSeries":
        order = Fraction(order)
        if order >= self.order:
            return self
        d = _lcm(self.denom, order.denominator)
        s = self._with_denom(d)
        t = int(order * d)
        return QSeries(s.coeffs[: max(t - s.val, 0)], s.val, t, d)

    # -- denominator handling -------------------------------------------------

    def _with_denom(self, d: int) -> "QSeries":
        if d == self.denom:
            return self
        k = d // self.denom
        cs: list[Fraction] = []
        for c in self.coeffs:
            cs.append(c)
            cs.extend([Fraction(0)] * (k - 1))
        s = object.__new__(QSeries)
        object.__setattr__(s, "denom", d)
        object.__setattr__(s, "val", self.val * k)
        object.__setattr__(s, "coeffs", tuple(cs))
        object.__setattr__(s, "trunc", self.trunc * k)
        return s

    @staticmethod
    def _unify(a: "QSeries", b: "QSeries") -> tuple["QSeries", "QSeries"]:
        if a.denom == b.denom:
            return a, b
        d = _lcm(a.denom, b.denom)
        return a._with_denom(d), b._with_denom(d)

    # -- arithmetic -----------------------------------------------------------

    def _const(self, c: Number) -> "QSeries":
        # a constant known exactly up to this series' precision
        return QSeries.monomial(c, 0, max(self.order, Fraction(1, self.denom)))

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self.coeffs], self.val, self.trunc, self.denom)

    def __pos__(self) -> "QSeries":
        return self

    def __add__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            other = self._const(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = QSeries._unify(self, other)
        trunc = min(a.trunc, b.trunc)
        val = min(a.val, b.val)
        n = max(trunc - val, 0)
        cs = [Fraction(0)] * n
        for s in (a, b):
            off = s.val - val
            for i, c in enumerate(s.coeffs[: max(n - off, 0)]):
                cs[off + i] += c
        return QSeries(cs, val, trunc, a.denom)

    __radd__ = __add__

    def __sub__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            other = self._const(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def scale(self, c: Number) -> "QSeries":
        c = Fraction(c)
        return QSeries([c * x for x in self.coeffs], self.val, self.trunc, self.denom)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = QSeries._unify(self, other)
        val = a.val + b.val
        if a.is_zero() or b.is_zero():
            trunc = min(a.trunc + b.val if b.coeffs else a.trunc + b.trunc,
                        b.trunc + a.val if a.coeffs else b.trunc + a.trunc)
            return QSeries([], trunc, trunc, a.denom)
        n = min(len(a.coeffs), len(b.coeffs))
        ai, ad = _to_ints(a.coeffs[:n])
        bi, bd = _to_ints(b.coeffs[:n])
        prod = _convolve(ai, bi, n)
        return QSeries.from_ints(prod, ad * bd, val, val + n, a.denom)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        """Multiplicative inverse by leading-term recursion."""
        if self.is_zero():
            raise ZeroDivisionError("division by a series that is zero to its truncation order")
        n = len(self.coeffs)
        gi, gd = _to_ints(self.coeffs)
        g0 = gi[0]
        # h_k = N_k / g0**(k+1), all N_k integral
        num = [0] * n
        pw = [1] * (n + 1)
        for k in range(1, n + 1):
            pw[k] = pw[k - 1] * g0
        for k in range(n):
            acc = pw[k] if k == 0 else 0
            for j in range(1, k + 1):
                gj = gi[j]
                if gj:
                    acc -= gj * num[k - j] * pw[j - 1]
            num[k] = acc
        # 1/g = gd / (G) with G integral, so h = gd * N_k / g0**(k+1)
        cs = [Fraction(gd * num[k], pw[k + 1]) for k in range(n)]
        return QSeries(cs, -self.val, -self.val + n, self.denom)

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by a series that is zero to its truncation order")
        a, b = QSeries._unify(self, other)
        if a.is_zero():
            t = a.trunc - b.val
            return QSeries([], t, t, a.denom)
        n = min(len(a.coeffs), len(b.coeffs))
        return a.truncate(Fraction(a.val + n, a.denom)) * b.truncate(Fraction(b.val + n, b.denom)).inverse()

    def __rtruediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.inverse().scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "QSeries":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self._const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- calculus and substitution -------------------------------------------

    def theta(self) -> "QSeries":
        """``q d/dq`` applied termwise."""
        cs = [c * Fraction(self.val + i, self.denom) for i, c in enumerate(self.coeffs)]
        return QSeries(cs, self.val, self.trunc, self.denom)

    def rescale(self, k: Number) -> "QSeries":
        """Substitute ``q -> q**k`` for a positive rational ``k``."""
        k = Fraction(k)
        if k <= 0:
            raise ValueError("rescale factor must be positive")
        a, b = k.numerator, k.denominator
        cs: list[Fraction] = []
        for c in self.coeffs:
            cs.append(c)
            cs.extend([Fraction(0)] * (a - 1))
        return QSeries(cs, self.val * a, self.trunc * a, self.denom * b)

    def twist_sign(self) -> "QSeries":
        """Substitute ``q -> -q`` (integral exponents only)."""
        if self.denom != 1:
            raise ValueError("q -> -q needs integral exponents")
        cs = [-c if (self.val + i) % 2 else c for i, c in enumerate(self.coeffs)]
        return QSeries(cs, self.val, self.trunc, 1)

    def shift(self, exponent: Number) -> "QSeries":
        """Multiply by ``q**exponent`` exactly."""
        exponent = Fraction(exponent)
        d = _lcm(self.denom, exponent.denominator)
        s = self._with_denom(d)
        e = int(exponent * d)
        return QSeries(s.coeffs, s.val + e, s.trunc + e, d)

    # -- comparisons and display ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._const(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.denom, self.val, self.coeffs[:8], self.trunc))

    def __repr__(self) -> str:
        terms = []
        for e, c in list(self.items())[:8]:
            terms.append(f"{c}*q^{e}")
        more = " + ..." if len(list(self.items())) > 8 else ""
        return f"QSeries({' + '.join(terms) or '0'}{more} + O(q^{self.order}))"

    def to_json(self) -> dict:
        return {
            "denom": self.denom,
            "val": self.val,
            "trunc": self.trunc,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "QSeries":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([Fraction(c) for c in data["coeffs"]], data["val"], data["trunc"], data["denom"])


def pochhammer_block(offsets: Iterable[int], modulus: int, sign: int, trunc: int) -> QSeries:
    """Product of ``(1 - q**n)**sign`` over ``n >= 1`` with ``n % modulus`` in offsets.

    Offsets are residues in ``1..modulus``; ``modulus`` itself stands for
    the class of multiples.  A repeated offset contributes a repeated factor.
    """
    if trunc <= 0:
        raise ValueError("trunc must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    offsets = list(offsets)
    for o in offsets:
        if not 1 <= o <= modulus:
            raise ValueError(f"offset {o} outside 1..{modulus}")
    c = [0] * trunc
    c[0] = 1
    for o in offsets:
        for n in range(o, trunc, modulus):
            if sign > 0:
                for i in range(trunc - 1, n - 1, -1):
                    c[i] -= c[i - n]
            else:
                for i in range(n, trunc):
                    c[i] += c[i - n]
    return QSeries(c, 0, trunc)


def eta_power_product(factors: Sequence[tuple[int, int]], trunc: int) -> QSeries:
    """``prod (q**m; q**m)_inf ** e`` without the leading ``q`` power."""
    if trunc <= 0:
        raise ValueError("trunc must be positive")
    c = [0] * trunc
    c[0] = 1
    for m, e in factors:
        for n in range(m, trunc, m):
            for _ in range(abs(e)):
                if e > 0:
                    for i in range(trunc - 1, n - 1, -1):
                        c[i] -= c[i - n]
                else:
                    for i in range(n, trunc):
                        c[i] += c[i - n]
    return QSeries(c, 0, trunc)


def theta_q_log(f: QSeries) -> QSeries:
    """Logarithmic derivative ``(q d/dq f) / f``."""
    if f.is_zero():
        raise ZeroDivisionError("logarithmic derivative of a zero series")
    return f.theta() / f


def sqrt(f: QSeries, sign: int = 1) -> QSeries:
    """Square root with leading coefficient of the given sign."""
    if f.is_zero():
        raise ValueError("square root of a zero series")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    g = f if f.val % 2 == 0 else f._with_denom(2 * f.denom)
    c0 = _rational_sqrt(g.coeffs[0]) * sign
    n = len(g.coeffs)
    s = [c0] + [Fraction(0)] * (n - 1)
    two_c0 = 2 * c0
    for k in range(1, n):
        acc = g.coeffs[k]
        for j in range(1, k):
            acc -= s[j] * s[k - j]
        s[k] = acc / two_c0
    return QSeries(s, g.val // 2, g.val // 2 + n, g.denom)


def rescale(f: QSeries, k: Number) -> QSeries:
    return f.rescale(k)
