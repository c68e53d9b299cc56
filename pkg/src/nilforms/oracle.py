"""Brute-force cross-checks that avoid the engine's code paths.

``naive_d`` expands the Leibniz rule over explicit ordered factor lists and
sorts by adjacent transpositions, re-deriving the conjugate equations on its
own.  ``quotient_dim_bruteforce`` builds operator matrices from ``naive_d``
and takes ranks with sympy's ``DomainMatrix`` over Q(i).  The only things
shared with the engine are the scalar type and the (unbarred mask, barred
mask) monomial keys used to hand results back.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .forms import Form
from .scalars import GaussianRational

__all__ = ["OracleResult", "naive_d", "quotient_dim_bruteforce", "oracle_dims", "compare_dims"]


@dataclass(frozen=True)
class OracleResult:
    quantity: str
    engine: object
    oracle: object

    @property
    def agree(self) -> bool:
        return self.engine == self.oracle


# factor lists: a factor is (k, barred) with k 1-based -------------------------------


def _factors(mono) -> list:
    I, J = mono
    out = []
    for bar, mask in ((False, I), (True, J)):
        k = 1
        while mask:
            if mask & 1:
                out.append((k, bar))
            mask >>= 1
            k += 1
    return out


def _order(f):
    return (f[1], f[0])


def _canonical(factors):
    """Bubble-sort the factor list; return (sign, tuple) or None when a factor repeats."""
    fs = list(factors)
    sign = 1
    for i in range(len(fs)):
        for j in range(len(fs) - 1 - i):
            if _order(fs[j]) > _order(fs[j + 1]):
                fs[j], fs[j + 1] = fs[j + 1], fs[j]
                sign = -sign
            elif fs[j] == fs[j + 1]:
                return None
    for a, b in zip(fs, fs[1:]):
        if a == b:
            return None
    return sign, tuple(fs)


def _to_mono(fs):
    I = J = 0
    for k, bar in fs:
        if bar:
            J |= 1 << (k - 1)
        else:
            I |= 1 << (k - 1)
    return (I, J)


def _generator_d(pres, k: int, bar: bool):
    """``d eta^k`` (or its conjugate) as a list of (coeff, ordered factors)."""
    out = []
    for mono, c in pres.d_eta[k - 1].items():
        fs = _factors(mono)
        if bar:
            out.append((c.conj(), [(j, not b) for j, b in fs]))
        else:
            out.append((c, fs))
    return out


def naive_d(a: Form, pres) -> Form:
    """``d`` by the graded Leibniz rule, one factor at a time."""
    n = pres.n
    acc: dict = {}
    for mono, c in a.items():
        fs = _factors(mono)
        for j, f in enumerate(fs):
            sgn = -1 if j % 2 else 1
            for c2, two in _generator_d(pres, f[0], f[1]):
                res = _canonical(fs[:j] + two + fs[j + 1 :])
                if res is None:
                    continue
                s, key = res
                acc[key] = acc.get(key, GaussianRational(0)) + c * c2 * (s * sgn)
    return Form(n, {_to_mono(k): v for k, v in acc.items() if v})


# matrices and ranks ----------------------------------------------------------------


def _monomials(n, p, q):
    if not (0 <= p <= n and 0 <= q <= n):
        return []
    out = []
    for I in combinations(range(1, n + 1), p):
        for J in combinations(range(1, n + 1), q):
            out.append(_to_mono([(k, False) for k in I] + [(k, True) for k in J]))
    return out


def _bideg(mono):
    return (bin(mono[0]).count("1"), bin(mono[1]).count("1"))


_SHIFT = {"del": (1, 0), "delbar": (0, 1), "ddbar": (1, 1)}


def _apply(op, pres, x: Form) -> Form:
    if op == "ddbar":
        return _apply("del", pres, _apply("delbar", pres, x))
    dp, dq = _SHIFT[op]
    out = {}
    for mono, c in x.items():
        p, q = _bideg(mono)
        for m2, c2 in naive_d(Form(x.n, {mono: c}), pres).items():
            if _bideg(m2) == (p + dp, q + dq):
                out[m2] = out.get(m2, GaussianRational(0)) + c2
    return Form(x.n, {m: v for m, v in out.items() if v})


def _columns(pres, op, p, q):
    """Images of the (p,q) monomials as dicts keyed by target monomial."""
    n = pres.n
    cols = []
    for m in _monomials(n, p, q):
        x = Form(n, {m: GaussianRational(1)})
        y = naive_d(x, pres) if op == "d" else _apply(op, pres, x)
        cols.append(dict(y.items()))
    return cols


def _rank(rows_by_key: list[dict]) -> int:
    """Rank of the vectors (dicts keyed by monomial) via sympy over Q(i)."""
    from sympy import QQ_I
    from sympy.polys.matrices import DomainMatrix

    vecs = [v for v in rows_by_key if v]
    if not vecs:
        return 0
    keys = sorted({k for v in vecs for k in v})
    pos = {k: i for i, k in enumerate(keys)}
    zero = QQ_I.zero
    rows = []
    for v in vecs:
        row = [zero] * len(keys)
        for k, c in v.items():
            row[pos[k]] = QQ_I.from_sympy(_sym(c))
        rows.append(row)
    return DomainMatrix(rows, (len(rows), len(keys)), QQ_I).rank()


def _sym(c: GaussianRational):
    from sympy import I, Rational

    return Rational(c.re.numerator, c.re.denominator) + I * Rational(c.im.numerator, c.im.denominator)


def _kernel_dim(pres, ops, p, q) -> int:
    """``dim`` of the joint kernel of ``ops`` on (p,q)-forms (ops stacked)."""
    n = pres.n
    monos = _monomials(n, p, q)
    if not monos:
        return 0
    stacked = [dict() for _ in monos]
    for op in ops:
        for i, col in enumerate(_columns(pres, op, p, q)):
            for k, c in col.items():
                stacked[i][(op, k)] = c
    # nullity = #columns - rank of the column set
    return len(monos) - _rank(stacked)


def quotient_dim_bruteforce(pres, kernel_ops, image_ops, p: int, q: int) -> int:
    """``dim (joint kernel of kernel_ops on (p,q)) / (sum of images)`` by rank-nullity.

    ``image_ops`` is a list of ``(op, (sp, sq))``.  The images are assumed to sit
    inside the kernel, as they do for the four cohomologies.
    """
    cols = []
    for op, (sp, sq) in image_ops:
        cols.extend(_columns(pres, op, sp, sq))
    return _kernel_dim(pres, kernel_ops, p, q) - _rank(cols)


def _de_rham(pres, k):
    n = pres.n

    def monos(deg):
        out = []
        for a in range(deg + 1):
            out.extend(_monomials(n, a, deg - a))
        return out

    def cols(deg):
        out = []
        for m in monos(deg):
            out.append(dict(naive_d(Form(n, {m: GaussianRational(1)}), pres).items()))
        return out

    ker = len(monos(k)) - _rank(cols(k))
    im = _rank(cols(k - 1)) if k > 0 else 0
    return ker - im


def oracle_dims(pres, kind: str) -> dict:
    """All dimensions of one cohomology kind, recomputed from scratch."""
    n = pres.n
    if kind == "deRham":
        return {k: _de_rham(pres, k) for k in range(2 * n + 1)}
    out = {}
    for p in range(n + 1):
        for q in range(n + 1):
            if kind == "Dolbeault":
                out[(p, q)] = quotient_dim_bruteforce(pres, ["delbar"], [("delbar", (p, q - 1))], p, q)
            elif kind == "BottChern":
                out[(p, q)] = quotient_dim_bruteforce(pres, ["del", "delbar"], [("ddbar", (p - 1, q - 1))], p, q)
            elif kind == "Aeppli":
                out[(p, q)] = quotient_dim_bruteforce(pres, ["ddbar"], [("del", (p - 1, q)), ("delbar", (p, q - 1))], p, q)
            else:
                raise ValueError(f"unknown kind {kind!r}")
    return out


def compare_dims(pres, kind: str) -> OracleResult:
    from .cohomology import cohomology_dims

    return OracleResult(f"{kind} dims", dict(cohomology_dims(pres, kind).dims), oracle_dims(pres, kind))
