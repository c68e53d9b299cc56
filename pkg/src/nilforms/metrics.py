"""Invariant Hermitian metrics: fundamental form, volume, inner product, Hodge star, adjoints.

Conventions
-----------
* ``F = (i/2) sum_{ij} H_ij eta^i ^ etabar^j`` and ``vol = F^n / n!``.
* On (1,0)-covectors ``<eta^i, eta^j> = (H^{-1})_{ji}``; barred factors use the
  conjugate, and monomials pair through Gram determinants.  With ``H = Id`` the
  canonical monomials are orthonormal.
* ``<a, b>`` is linear in ``a`` and antilinear in ``b``.
* The star of a (q,p)-form ``g`` is the (n-p,n-q)-form with
  ``a ^ *g = <a, conj(g)> vol`` for every (p,q)-form ``a``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

from .forms import Form, basis, basis_index, bidegree_of, conjugate, indices_of, mono_wedge, power, top_monomial
from .linalg import SparseMatrix, determinant, inverse
from .operators import OperatorMatrix, operator_matrix
from .scalars import I, ONE, ZERO, GaussianRational, as_scalar
from .structure import StructurePresentation

__all__ = [
    "HermitianMetric",
    "InvalidMetric",
    "fundamental_form",
    "fundamental_power",
    "volume_form",
    "inner_product",
    "gram",
    "hodge_star",
    "del_star",
    "delbar_star",
    "ddbar_star",
    "adjoint_matrix",
    "random_metric",
]


class InvalidMetric(ValueError):
    pass


class HermitianMetric:
    """A Hermitian positive-definite coefficient matrix ``H``."""

    def __init__(self, H: Sequence[Sequence]):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in H)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidMetric("metric matrix must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i].conj():
                    raise InvalidMetric(f"metric is not Hermitian at ({i + 1},{j + 1})")
        for k in range(1, n + 1):
            minor = determinant([r[:k] for r in rows[:k]])
            if not minor.is_real() or minor.re <= 0:
                raise InvalidMetric(f"leading principal minor of order {k} is {minor}, not positive")
        self.n = n
        self.H = rows
        self._gram_cache: dict = {}

    @classmethod
    def identity(cls, n: int) -> "HermitianMetric":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "HermitianMetric":
        n = len(values)
        return cls([[as_scalar(values[i]) if i == j else ZERO for j in range(n)] for i in range(n)])

    @cached_property
    def is_diagonal(self) -> bool:
        return all(not self.H[i][j] for i in range(self.n) for j in range(self.n) if i != j)

    @cached_property
    def coframe_pairing(self) -> tuple[tuple[GaussianRational, ...], ...]:
        """``g[i][j] = <eta^{i+1}, eta^{j+1}> = (H^{-1})_{ji}``."""
        inv = inverse(SparseMatrix.from_rows(self.H)).to_dense()
        return tuple(tuple(inv[j][i] for j in range(self.n)) for i in range(self.n))

    def __eq__(self, other):
        if not isinstance(other, HermitianMetric):
            return NotImplemented
        return self.H == other.H

    def __hash__(self):
        return hash(self.H)

    def __repr__(self):
        if self.is_diagonal:
            return f"HermitianMetric.diag([{', '.join(str(self.H[i][i]) for i in range(self.n))}])"
        return f"HermitianMetric({[[str(x) for x in r] for r in self.H]})"

    def to_json(self):
        return [[str(x) for x in r] for r in self.H]

    # pairing ------------------------------------------------------------

    def monomial_pairing(self, m1, m2) -> GaussianRational:
        """``<m1, m2>`` for canonical monomials of one bidegree."""
        g = self.coframe_pairing
        I1, J1 = indices_of(m1[0]), indices_of(m1[1])
        I2, J2 = indices_of(m2[0]), indices_of(m2[1])
        if len(I1) != len(I2) or len(J1) != len(J2):
            return ZERO
        if self.is_diagonal:
            if m1 != m2:
                return ZERO
            out = ONE
            for i in I1:
                out = out * g[i - 1][i - 1]
            for j in J1:
                out = out * g[j - 1][j - 1].conj()
            return out
        a = determinant([[g[i - 1][k - 1] for k in I2] for i in I1]) if I1 else ONE
        b = determinant([[g[j - 1][l - 1].conj() for l in J2] for j in J1]) if J1 else ONE
        return a * b

    def gram(self, p: int, q: int) -> SparseMatrix:
        """``G[a][b] = <e_a, e_b>`` over the canonical (p,q) basis (cached)."""
        hit = self._gram_cache.get((p, q))
        if hit is not None:
            return hit
        b = basis(self.n, p, q)
        cols = []
        for jb, mb in enumerate(b):
            col = {}
            if self.is_diagonal:
                v = self.monomial_pairing(mb, mb)
                col[jb] = v
            else:
                for ja, ma in enumerate(b):
                    v = self.monomial_pairing(ma, mb)
                    if v:
                        col[ja] = v
            cols.append(col)
        G = SparseMatrix(len(b), len(b), cols)
        self._gram_cache[(p, q)] = G
        return G

    def gram_inverse(self, p: int, q: int) -> SparseMatrix:
        key = ("inv", p, q)
        hit = self._gram_cache.get(key)
        if hit is None:
            hit = inverse(self.gram(p, q))
            self._gram_cache[key] = hit
        return hit


def _check_metric(H: HermitianMetric, n: int):
    if not isinstance(H, HermitianMetric):
        raise TypeError("expected a HermitianMetric")
    if H.n != n:
        raise ValueError(f"metric has dimension {H.n}, expected {n}")


def fundamental_form(H: HermitianMetric) -> Form:
    n = H.n
    half_i = I / 2
    terms = {}
    for i in range(n):
        for j in range(n):
            c = H.H[i][j]
            if c:
                terms[(1 << i, 1 << j)] = half_i * c
    return Form(n, terms)


def fundamental_power(H: HermitianMetric, k: int) -> Form:
    if not 0 <= k <= H.n:
        raise ValueError(f"power {k} out of range 0..{H.n}")
    cache = H._gram_cache
    key = ("F^", k)
    if key not in cache:
        cache[key] = power(fundamental_form(H), k)
    return cache[key]


def volume_form(H: HermitianMetric) -> Form:
    return fundamental_power(H, H.n) * Fraction(1, factorial(H.n))


def _vector(a: Form, p: int, q: int) -> dict:
    idx = basis_index(a.n, p, q)
    return {idx[m]: c for m, c in a.items()}


def inner_product(a: Form, b: Form, H: HermitianMetric) -> GaussianRational:
    """Hermitian pairing, linear in ``a`` and antilinear in ``b``.

    Mixed forms are paired bidegree by bidegree (different bidegrees are orthogonal).
    """
    _check_metric(H, a.n)
    a._check(b)
    total = ZERO
    bds = a.bidegrees() & b.bidegrees()
    for bd in bds:
        G = H.gram(*bd)
        va = _vector(_project(a, bd), *bd)
        vb = _vector(_project(b, bd), *bd)
        for j, cb in vb.items():
            cbc = cb.conj()
            for i, g in G.cols[j].items():
                ca = va.get(i)
                if ca is not None:
                    total = total + ca * g * cbc
    return total


def _project(a: Form, bd) -> Form:
    return Form._trusted(a.n, {m: c for m, c in a.items() if bidegree_of(m) == bd})


def norm2(a: Form, H: HermitianMetric) -> Fraction:
    v = inner_product(a, a, H)
    assert v.is_real()
    return v.re


def gram(H: HermitianMetric, p: int, q: int) -> SparseMatrix:
    return H.gram(p, q)


def _complement(n: int, m):
    full = (1 << n) - 1
    return (full & ~m[0], full & ~m[1])


def hodge_star(a: Form, H: HermitianMetric) -> Form:
    """Linear star sending (q,p)-forms to (n-p,n-q)-forms.

    For a basis (p,q)-monomial ``e`` the wedge ``e ^ x`` only sees the
    coefficient of the complementary monomial, so each output coefficient is
    read off directly from ``<e, conj(a)>`` and the top coefficient of ``vol``.
    """
    n = a.n
    _check_metric(H, n)
    vol_top = volume_form(H).coefficient(top_monomial(n))
    out = Form.zero(n)
    for bd in sorted(a.bidegrees()):
        qq, pp = bd  # a is (q,p); the test forms are (p,q)
        abar = conjugate(_project(a, bd))
        vb = _vector(abar, pp, qq)
        G = H.gram(pp, qq)
        terms = {}
        for ja, e in enumerate(basis(n, pp, qq)):
            # <e, conj(a)> = sum_b G[e][b] * conj(abar_b)
            s = ZERO
            for jb, cb in vb.items():
                g = G.cols[jb].get(ja)
                if g is not None:
                    s = s + g * cb.conj()
            if not s:
                continue
            comp = _complement(n, e)
            sign, _ = mono_wedge(e, comp)
            terms[comp] = s * vol_top * sign
        out = out + Form._trusted(n, terms)
    return out


# adjoints ---------------------------------------------------------------------

_ADJ_SOURCE = {"del": (-1, 0), "delbar": (0, -1), "ddbar": (-1, -1)}


def adjoint_matrix(pres: StructurePresentation, H: HermitianMetric, op: str, p: int, q: int) -> OperatorMatrix:
    """Matrix of the formal adjoint of ``op`` acting on (p,q)-forms.

    With Gram matrices ``Gs``, ``Gt`` and ``D`` the matrix of ``op`` into
    (p,q), ``<D x, y> = <x, S y>`` forces ``S = conj(Gs)^{-1} D^H conj(Gt)``.
    """
    _check_metric(H, pres.n)
    if op not in _ADJ_SOURCE:
        raise ValueError(f"no adjoint for {op!r}")
    key = ("adj", op, p, q, H)
    hit = pres._matrix_cache.get(key)
    if hit is not None:
        return hit
    dp, dq = _ADJ_SOURCE[op]
    sp, sq = p + dp, q + dq
    n = pres.n
    ncols = len(basis(n, p, q))
    if not (0 <= sp <= n and 0 <= sq <= n):
        out = OperatorMatrix(op + "_star", (p, q), (), SparseMatrix(0, ncols))
    else:
        D = operator_matrix(pres, op, sp, sq).matrix
        if H.is_diagonal:
            gs = H.gram(sp, sq)
            gt = H.gram(p, q)
            cols = []
            Dh = D.adjoint()
            for j, col in enumerate(Dh.cols):
                t = gt.cols[j][j].conj()
                new = {}
                for i, x in col.items():
                    new[i] = x * t / gs.cols[i][i].conj()
                cols.append(new)
            S = SparseMatrix(Dh.nrows, Dh.ncols, cols)
        else:
            S = H.gram_inverse(sp, sq).conj() @ D.adjoint() @ H.gram(p, q).conj()
        out = OperatorMatrix(op + "_star", (p, q), ((sp, sq),), S)
    pres._matrix_cache[key] = out
    return out


def _apply_adjoint(pres, a: Form, H, op) -> Form:
    _check_metric(H, a.n)
    out = Form.zero(a.n)
    for bd in sorted(a.bidegrees()):
        M = adjoint_matrix(pres, H, op, *bd)
        if not M.targets:
            continue
        v = M.matrix.apply(_vector(_project(a, bd), *bd))
        b = basis(a.n, *M.targets[0])
        out = out + Form._trusted(a.n, {b[k]: c for k, c in v.items()})
    return out


def del_star(pres: StructurePresentation, a: Form, H: HermitianMetric) -> Form:
    return _apply_adjoint(pres, a, H, "del")


def delbar_star(pres: StructurePresentation, a: Form, H: HermitianMetric) -> Form:
    return _apply_adjoint(pres, a, H, "delbar")


def ddbar_star(pres: StructurePresentation, a: Form, H: HermitianMetric) -> Form:
    return _apply_adjoint(pres, a, H, "ddbar")


# random metrics ----------------------------------------------------------------


def _small(rng: random.Random, span: int = 2) -> GaussianRational:
    return GaussianRational(Fraction(rng.randint(-span, span), rng.randint(1, 3)), Fraction(rng.randint(-span, span), rng.randint(1, 3)))


def random_metric(n: int, rng: random.Random, diagonal: bool = False) -> HermitianMetric:
    """``A A^H + Id`` with small Gaussian-rational ``A`` (or a random positive diagonal)."""
    if diagonal:
        return HermitianMetric.diag([Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(n)])
    A = [[_small(rng) for _ in range(n)] for _ in range(n)]
    H = [[sum((A[i][k] * A[j][k].conj() for k in range(n)), ZERO) + (ONE if i == j else ZERO) for j in range(n)] for i in range(n)]
    return HermitianMetric(H)
