"""Bigraded exterior algebra on a (1,0)-coframe eta^1..eta^n and its conjugate.

A monomial ``eta^{i1..ip} ^ etabar^{j1..jq}`` is stored as a pair of bitmasks
``(I, J)`` (bit ``k`` stands for index ``k+1``).  The canonical order puts all
unbarred factors first, ascending, then the barred ones, ascending; any other
ordering is absorbed into the coefficient by its permutation sign.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping

from .scalars import ONE, ZERO, GaussianRational, I, as_scalar

MAX_DIM = 32

Monomial = tuple  # (unbarred_mask, barred_mask)


def popcount(x: int) -> int:
    return x.bit_count()


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for k in indices:
        m |= 1 << (k - 1)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def _crossings(a: int, b: int) -> int:
    """Number of pairs (x in a, y in b) with x > y."""
    count = 0
    while b:
        low = b & -b
        count += popcount(a & ~((low << 1) - 1))
        b ^= low
    return count


def mono_wedge(m1: Monomial, m2: Monomial):
    """Return ``(sign, monomial)`` for ``m1 ^ m2`` or ``None`` if it vanishes."""
    i1, j1 = m1
    i2, j2 = m2
    if i1 & i2 or j1 & j2:
        return None
    parity = popcount(j1) * popcount(i2) + _crossings(i1, i2) + _crossings(j1, j2)
    return (-1 if parity & 1 else 1), (i1 | i2, j1 | j2)


def bidegree_of(m: Monomial) -> tuple[int, int]:
    return popcount(m[0]), popcount(m[1])


@lru_cache(maxsize=None)
def basis(n: int, p: int, q: int) -> tuple[Monomial, ...]:
    """Canonical monomial basis of the (p,q)-forms, in lexicographic order."""
    if not (0 <= p <= n and 0 <= q <= n):
        return ()
    unb = [mask_of(c) for c in combinations(range(1, n + 1), p)]
    bar = [mask_of(c) for c in combinations(range(1, n + 1), q)]
    return tuple((a, b) for a in unb for b in bar)


@lru_cache(maxsize=None)
def basis_index(n: int, p: int, q: int) -> Mapping[Monomial, int]:
    return MappingProxyType({m: k for k, m in enumerate(basis(n, p, q))})


def monomial_sort_key(m: Monomial):
    return (popcount(m[0]) + popcount(m[1]), -popcount(m[0]), indices_of(m[0]), indices_of(m[1]))


class Form:
    """An immutable sparse element of the bigraded exterior algebra.

    ``terms`` maps canonical monomials to nonzero Gaussian rationals.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        if not (0 <= n <= MAX_DIM):
            raise ValueError(f"dimension must be between 0 and {MAX_DIM}")
        self.n = n
        clean = {}
        if terms:
            full = (1 << n) - 1
            for m, c in terms.items():
                c = as_scalar(c)
                if not c:
                    continue
                if (m[0] | m[1]) & ~full:
                    raise ValueError(f"monomial index out of range for n={n}")
                clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, n, terms):
        f = object.__new__(cls)
        f.n = n
        f._terms = terms
        f._hash = None
        return f

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Form":
        return cls(n)

    @classmethod
    def scalar(cls, n: int, c=1) -> "Form":
        return cls(n, {(0, 0): c})

    @classmethod
    def monomial(cls, n: int, unbarred=(), barred=(), coeff=1) -> "Form":
        """``coeff * eta^{unbarred} ^ etabar^{barred}`` with factors taken in the given order."""
        factors = [(k, False) for k in unbarred] + [(k, True) for k in barred]
        return cls.from_factors(n, factors, coeff)

    @classmethod
    def from_factors(cls, n: int, factors, coeff=1) -> "Form":
        """Wedge of single factors ``(index, is_barred)`` in the order given."""
        sign = 1
        acc = (0, 0)
        for k, barred in factors:
            if not 1 <= k <= n:
                raise ValueError(f"index {k} out of range 1..{n}")
            bit = 1 << (k - 1)
            r = mono_wedge(acc, (0, bit) if barred else (bit, 0))
            if r is None:
                return cls.zero(n)
            s, acc = r
            sign *= s
        return cls(n, {acc: as_scalar(coeff) * sign})

    @classmethod
    def eta(cls, n: int, k: int) -> "Form":
        return cls.monomial(n, (k,))

    @classmethod
    def etabar(cls, n: int, k: int) -> "Form":
        return cls.monomial(n, (), (k,))

    @classmethod
    def from_vector(cls, n: int, p: int, q: int, vec) -> "Form":
        b = basis(n, p, q)
        return cls(n, {m: c for m, c in zip(b, vec) if c})

    # accessors ----------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, GaussianRational]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, m: Monomial) -> GaussianRational:
        return self._terms.get(m, ZERO)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {bidegree_of(m) for m in self._terms}

    def degrees(self) -> set[int]:
        return {p + q for p, q in self.bidegrees()}

    @property
    def bidegree(self) -> tuple[int, int]:
        """Bidegree of a pure form (raises for mixed forms and for 0)."""
        bd = self.bidegrees()
        if len(bd) != 1:
            raise ValueError(f"form is not of pure bidegree: {sorted(bd)}")
        return next(iter(bd))

    def is_pure(self) -> bool:
        return len(self.bidegrees()) <= 1

    def to_vector(self, p: int, q: int) -> list[GaussianRational]:
        idx = basis_index(self.n, p, q)
        v = [ZERO] * len(idx)
        for m, c in self._terms.items():
            k = idx.get(m)
            if k is None:
                raise ValueError(f"form has a component outside bidegree ({p},{q})")
            v[k] = c
        return v

    # algebra -------------------------------------------------------------

    def _check(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Form._trusted(self.n, out)

    def __neg__(self):
        return Form._trusted(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        c = as_scalar(c, strict=False)
        if c is None:
            return NotImplemented
        if not c:
            return Form.zero(self.n)
        return Form._trusted(self.n, {m: v * c for m, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * as_scalar(c).inverse()

    def __xor__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, Form):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .textio import format_form

        return f"Form(n={self.n}, {format_form(self)!r})"

    def __str__(self):
        from .textio import format_form

        return format_form(self)


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; bilinear, associative, graded-anticommutative."""
    a._check(b)
    out: dict = {}
    for m1, c1 in a._terms.items():
        for m2, c2 in b._terms.items():
            r = mono_wedge(m1, m2)
            if r is None:
                continue
            s, m = r
            c = c1 * c2
            if s < 0:
                c = -c
            prev = out.get(m)
            if prev is not None:
                c = prev + c
                if not c:
                    del out[m]
                    continue
            out[m] = c
    return Form._trusted(a.n, out)


def wedge_all(forms: Iterable[Form], n: int) -> Form:
    acc = Form.scalar(n, 1)
    for f in forms:
        acc = wedge(acc, f)
    return acc


def power(a: Form, k: int) -> Form:
    acc = Form.scalar(a.n, 1)
    for _ in range(k):
        acc = wedge(acc, a)
    return acc


def conjugate_monomial(m: Monomial):
    """``conj(eta^I ^ etabar^J) = (-1)^{|I||J|} eta^J ^ etabar^I``."""
    i, j = m
    sign = -1 if (popcount(i) * popcount(j)) & 1 else 1
    return sign, (j, i)


def conjugate(a: Form) -> Form:
    """Antilinear involution exchanging bidegrees (p,q) and (q,p)."""
    out = {}
    for m, c in a._terms.items():
        s, m2 = conjugate_monomial(m)
        c = c.conj()
        out[m2] = c if s > 0 else -c
    return Form._trusted(a.n, out)


def bidegree_project(a: Form, p: int, q: int) -> Form:
    return Form._trusted(
        a.n, {m: c for m, c in a._terms.items() if popcount(m[0]) == p and popcount(m[1]) == q}
    )


def degree_project(a: Form, k: int) -> Form:
    return Form._trusted(
        a.n, {m: c for m, c in a._terms.items() if popcount(m[0]) + popcount(m[1]) == k}
    )


def is_real(a: Form) -> bool:
    return conjugate(a) == a


def sigma(p: int) -> GaussianRational:
    """Normalising constant ``i^{p^2} / 2^p`` for real (p,p)-forms."""
    return I ** (p * p) / (2**p)


def sigma_real(eta: Form) -> Form:
    """``sigma_p * eta ^ conj(eta)`` for a pure (p,0)-form ``eta``; always real."""
    if not eta:
        return eta
    p, q = eta.bidegree
    if q != 0:
        raise ValueError(f"sigma_real expects a (p,0)-form, got bidegree ({p},{q})")
    return wedge(eta, conjugate(eta)) * sigma(p)


def top_monomial(n: int) -> Monomial:
    full = (1 << n) - 1
    return (full, full)


__all__ = [
    "Form",
    "wedge",
    "wedge_all",
    "power",
    "conjugate",
    "bidegree_project",
    "degree_project",
    "is_real",
    "sigma",
    "sigma_real",
    "basis",
    "basis_index",
    "mono_wedge",
    "mask_of",
    "indices_of",
    "bidegree_of",
    "top_monomial",
    "ONE",
]
