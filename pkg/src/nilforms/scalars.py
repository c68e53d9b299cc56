"""Exact Gaussian rationals, the coefficient field Q(i).

A value is stored as ``(a + b*i) / d`` with integers ``a``, ``b`` and a positive
denominator ``d`` sharing no common factor.  Plain ints are far faster than a
pair of :class:`fractions.Fraction` objects, which matters inside elimination.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = ["GaussianRational", "GR", "parse_scalar", "as_scalar", "ZERO", "ONE", "I"]


class GaussianRational:
    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floating-point input is not exact; use a rational")
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        self._set(a, b, d)

    def _set(self, a, b, d):
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a = a
        self._b = b
        self._d = d

    @classmethod
    def _raw(cls, a, b, d):
        z = object.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        z._set(a, b, d)
        return z

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def conj(self) -> "GaussianRational":
        z = object.__new__(GaussianRational)
        z._a, z._b, z._d = self._a, -self._b, self._d
        return z

    def abs2(self) -> Fraction:
        """``z * conj(z)`` as a non-negative rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def __bool__(self):
        return self._a != 0 or self._b != 0

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return GaussianRational._raw(self._a + o._a, self._b + o._b, self._d)
        return GaussianRational._raw(
            self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, self._d * o._d
        )

    __radd__ = __add__

    def __neg__(self):
        z = object.__new__(GaussianRational)
        z._a, z._b, z._d = -self._a, -self._b, self._d
        return z

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        a, b, c, e = self._a, self._b, o._a, o._b
        return GaussianRational._raw(a * c - b * e, a * e + b * c, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        # d / (a + b i) = d (a - b i) / (a^2 + b^2)
        return GaussianRational._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        o = as_scalar(other, strict=False)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __repr__(self):
        return f"GR({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


GR = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def as_scalar(x, strict=True):
    """Coerce ints, rationals and Q(i) values; floats and complex are rejected."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, (int, Rational)):
        return GaussianRational(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if strict:
        raise TypeError(f"not an exact Q(i) scalar: {x!r}")
    return None


def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Exact text ``a/b+c/d*i``; zero parts are omitted."""
    re_, im_ = z.re, z.im
    if im_ == 0:
        return _fmt_frac(re_)
    if im_ == 1:
        im_s = "i"
    elif im_ == -1:
        im_s = "-i"
    else:
        im_s = _fmt_frac(im_) + "*i"
    if re_ == 0:
        return im_s
    sign = "" if im_s.startswith("-") else "+"
    return _fmt_frac(re_) + sign + im_s


_RAT = r"[0-9]+(?:\.[0-9]+)?(?:/[0-9]+)?"
_TERM = re.compile(rf"([+-]?)\s*(?:({_RAT})\s*\*?\s*)?(i|I|j)?")
_PAIR = re.compile(rf"^\(\s*([+-]?\s*{_RAT})\s*,\s*([+-]?\s*{_RAT})\s*\)$")


def _parse_rat(s: str) -> Fraction:
    s = s.replace(" ", "")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError("zero denominator")
        return Fraction(num) / int(den)
    return Fraction(s)


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``3``, ``-1/2``, ``2*i``, ``1-3i``, ``1/2+3/4*i`` or ``(re, im)``.

    Anything that is not an exact element of Q(i) raises ``ValueError``.
    """
    s = text.strip()
    m = _PAIR.match(s)
    if m:
        return GaussianRational(_parse_rat(m.group(1)), _parse_rat(m.group(2)))
    if not s:
        raise ValueError("empty scalar")
    re_part = Fraction(0)
    im_part = Fraction(0)
    pos = 0
    s_nows = s.replace(" ", "")
    if s_nows.startswith("(") and s_nows.endswith(")"):
        s_nows = s_nows[1:-1]
    while pos < len(s_nows):
        m = _TERM.match(s_nows, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"irrational or malformed coefficient: {text!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"irrational or malformed coefficient: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        mag = _parse_rat(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            im_part += sign * mag
        else:
            re_part += sign * mag
        pos = m.end()
    return GaussianRational(re_part, im_part)
