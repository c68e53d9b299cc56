"""The differential and its bidegree pieces, d^c, dd^c, and per-bidegree matrices."""

from __future__ import annotations

from dataclasses import dataclass

from .forms import Form, basis, basis_index, bidegree_of
from .linalg import SparseMatrix
from .scalars import I, ONE
from .structure import StructurePresentation

__all__ = [
    "d",
    "mu",
    "del_",
    "delbar",
    "mubar",
    "ddbar",
    "dc",
    "ddc",
    "OperatorMatrix",
    "operator_matrix",
    "OPERATORS",
]

# bidegree shift of each piece of d
SHIFTS = {"mu": (2, -1), "del": (1, 0), "delbar": (0, 1), "mubar": (-1, 2)}

_I_POW = [ONE, I, -ONE, -I]


def _piece(pres: StructurePresentation, a: Form, shift) -> Form:
    dp, dq = shift
    out: dict = {}
    for m, c in a.items():
        p, q = bidegree_of(m)
        for m2, c2 in pres.d_monomial(m).items():
            if bidegree_of(m2) != (p + dp, q + dq):
                continue
            v = c * c2
            prev = out.get(m2)
            if prev is not None:
                v = prev + v
                if not v:
                    del out[m2]
                    continue
            out[m2] = v
    return Form._trusted(a.n, out)


def d(pres: StructurePresentation, a: Form) -> Form:
    return pres.d(a)


def mu(pres: StructurePresentation, a: Form) -> Form:
    return _piece(pres, a, SHIFTS["mu"])


def del_(pres: StructurePresentation, a: Form) -> Form:
    return _piece(pres, a, SHIFTS["del"])


def delbar(pres: StructurePresentation, a: Form) -> Form:
    return _piece(pres, a, SHIFTS["delbar"])


def mubar(pres: StructurePresentation, a: Form) -> Form:
    return _piece(pres, a, SHIFTS["mubar"])


def ddbar(pres: StructurePresentation, a: Form) -> Form:
    """``del(delbar(a))``."""
    return del_(pres, delbar(pres, a))


def dc(pres: StructurePresentation, a: Form) -> Form:
    """``J^{-1} d J`` with ``J = i^{p-q}`` on (p,q)-forms.

    A term of ``d`` taking (p,q) to (p',q') picks up ``i^{(p-q)-(p'-q')}``, which
    gives ``i(delbar - del)`` on integrable structures.
    """
    out: dict = {}
    for m, c in a.items():
        p, q = bidegree_of(m)
        for m2, c2 in pres.d_monomial(m).items():
            p2, q2 = bidegree_of(m2)
            v = c * c2 * _I_POW[((p - q) - (p2 - q2)) % 4]
            prev = out.get(m2)
            if prev is not None:
                v = prev + v
                if not v:
                    del out[m2]
                    continue
            out[m2] = v
    return Form._trusted(a.n, out)


def ddc(pres: StructurePresentation, a: Form) -> Form:
    return pres.d(dc(pres, a))


# matrices -------------------------------------------------------------------

_DEGREE_SHIFT = {"d": 1, "dc": 1, "ddc": 2}
_PURE_SHIFT = {
    "mu": (2, -1),
    "del": (1, 0),
    "delbar": (0, 1),
    "mubar": (-1, 2),
    "ddbar": (1, 1),
    "del_star": (-1, 0),
    "delbar_star": (0, -1),
    "ddbar_star": (-1, -1),
}
_FORM_OPS = {"d": d, "dc": dc, "ddc": ddc, "mu": mu, "del": del_, "delbar": delbar, "mubar": mubar, "ddbar": ddbar}

OPERATORS = tuple(sorted(set(_DEGREE_SHIFT) | set(_PURE_SHIFT)))

_ALIASES = {
    "∂": "del",
    "∂̄": "delbar",
    "partial": "del",
    "dbar": "delbar",
    "∂∂̄": "ddbar",
    "dd^c": "ddc",
    "d^c": "dc",
    "μ": "mu",
    "μ̄": "mubar",
    "∂*": "del_star",
    "∂̄*": "delbar_star",
}


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix of an operator from the (p,q) basis to the concatenated target bases."""

    op_name: str
    source: tuple[int, int]
    targets: tuple[tuple[int, int], ...]
    matrix: SparseMatrix

    @property
    def target(self) -> tuple[int, int]:
        if len(self.targets) != 1:
            raise ValueError(f"{self.op_name} has several target bidegrees: {self.targets}")
        return self.targets[0]

    def rank(self) -> int:
        from .linalg import rank

        return rank(self.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def row_monomials(self, n: int) -> list:
        out = []
        for bd in self.targets:
            out.extend(basis(n, *bd))
        return out


def _targets(n, op, p, q):
    if op in _PURE_SHIFT:
        dp, dq = _PURE_SHIFT[op]
        cand = [(p + dp, q + dq)]
    else:
        k = p + q + _DEGREE_SHIFT[op]
        cand = [(a, k - a) for a in range(k + 1)]
    return tuple((a, b) for a, b in cand if 0 <= a <= n and 0 <= b <= n)


def _matrix_from_images(n, source, targets, images) -> SparseMatrix:
    offsets = {}
    off = 0
    for bd in targets:
        offsets[bd] = off
        off += len(basis(n, *bd))
    cols = []
    for img in images:
        col = {}
        for m, c in img.items():
            bd = bidegree_of(m)
            if bd not in offsets:
                raise AssertionError(f"image leaves the declared targets: {bd}")
            col[offsets[bd] + basis_index(n, *bd)[m]] = c
        cols.append(col)
    return SparseMatrix(off, len(images), cols)


def operator_matrix(pres: StructurePresentation, op: str, p: int, q: int, metric=None) -> OperatorMatrix:
    """Matrix of ``op`` on the (p,q)-forms in the canonical monomial bases.

    ``op`` is one of :data:`OPERATORS`; the starred adjoints need ``metric``.
    """
    n = pres.n
    op = _ALIASES.get(op, op)
    if op not in OPERATORS:
        raise ValueError(f"unknown operator {op!r}")
    if not (0 <= p <= n and 0 <= q <= n):
        raise ValueError(f"bidegree ({p},{q}) out of range for n={n}")
    if op.endswith("_star"):
        if metric is None:
            raise ValueError(f"{op} needs a metric")
        from .metrics import adjoint_matrix

        return adjoint_matrix(pres, metric, op[: -len("_star")], p, q)
    targets = _targets(n, op, p, q)
    key = (op, p, q)
    hit = pres._matrix_cache.get(key)
    if hit is not None:
        return hit
    fn = _FORM_OPS[op]
    images = [fn(pres, Form._trusted(n, {m: ONE})) for m in basis(n, p, q)]
    out = OperatorMatrix(op, (p, q), targets, _matrix_from_images(n, (p, q), targets, images))
    pres._matrix_cache[key] = out
    return out
