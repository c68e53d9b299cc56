"""Exact sparse linear algebra over Q(i).

Vectors are dicts ``index -> GaussianRational`` with no stored zeros.  A
:class:`SparseMatrix` keeps its columns in that format, which is what the
operators produce naturally (column ``j`` is the image of basis element ``j``).

Elimination is Gauss-Jordan over the field: every pivot row is normalised to a
leading 1 and cleared from all other pivot rows, so reducing a vector against
the span is a single pass over its support.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import ONE, ZERO, GaussianRational, as_scalar

Vector = dict


def vec_add(u: Vector, v: Vector, c=ONE) -> Vector:
    """Return ``u + c*v`` as a new vector."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        y = c * x if y is None else y + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def _axpy(u: Vector, v: Vector, c) -> None:
    """In place ``u += c*v``."""
    for k, x in v.items():
        y = u.get(k)
        y = c * x if y is None else y + c * x
        if y:
            u[k] = y
        elif k in u:
            del u[k]


def vec_scale(v: Vector, c) -> Vector:
    c = as_scalar(c)
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def dot(u: Vector, v: Vector) -> GaussianRational:
    """Bilinear pairing ``sum u_k v_k`` (no conjugation)."""
    if len(u) > len(v):
        u, v = v, u
    s = ZERO
    for k, x in u.items():
        y = v.get(k)
        if y is not None:
            s = s + x * y
    return s


def vec_conj(v: Vector) -> Vector:
    return {k: x.conj() for k, x in v.items()}


def dense(v: Vector, size: int) -> list:
    out = [ZERO] * size
    for k, x in v.items():
        out[k] = x
    return out


def sparse(values: Iterable) -> Vector:
    out = {}
    for k, x in enumerate(values):
        x = as_scalar(x)
        if x:
            out[k] = x
    return out


class Echelon:
    """Incremental reduced echelon basis of a growing span.

    With ``track=True`` every basis vector remembers how it was built from the
    inserted vectors (keyed by the labels passed to :meth:`insert`), which is
    what kernels and solutions are read off from.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: dict[int, Vector] = {}
        self.history: dict[int, Vector] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vector):
        """Return ``(residual, combo)`` with ``v = residual + sum combo[k] * rows[k]``.

        The residual vanishes on every pivot position.
        """
        r = dict(v)
        combo = {}
        for k in [k for k in v if k in self.rows]:
            c = r.get(k)
            if not c:
                continue
            _axpy(r, self.rows[k], -c)
            combo[k] = c
        return r, combo

    def insert(self, v: Vector, label=None) -> bool:
        """Add ``v`` to the span; return True when the rank grows."""
        r, combo = self.reduce(v)
        if not r:
            return False
        piv = min(r)
        inv = r[piv].inverse()
        r = {k: x * inv for k, x in r.items()}
        if self.track:
            h = {label: ONE}
            for k, c in combo.items():
                _axpy(h, self.history[k], -c)
            h = {k: x * inv for k, x in h.items()}
        for k, row in self.rows.items():
            c = row.get(piv)
            if c:
                _axpy(row, r, -c)
                if self.track:
                    _axpy(self.history[k], h, -c)
        self.rows[piv] = r
        if self.track:
            self.history[piv] = h
        return True

    def express(self, combo: Vector) -> Vector:
        """Translate a combination of basis rows into one of inserted labels."""
        out: dict = {}
        for k, c in combo.items():
            _axpy(out, self.history[k], c)
        return out

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)[0]

    def annihilator(self, v: Vector):
        """A functional vanishing on the span but not on ``v``, or None if ``v`` is in it.

        Picks the first non-pivot coordinate ``k`` where the residual is nonzero
        and returns ``e_k - sum_j rows[j][k] e_j``.
        """
        r, _ = self.reduce(v)
        if not r:
            return None
        k = min(r)
        y = {k: ONE}
        for piv, row in self.rows.items():
            c = row.get(k)
            if c:
                y[piv] = -c
        return y

    def basis(self) -> list[Vector]:
        return [dict(self.rows[k]) for k in sorted(self.rows)]


class SparseMatrix:
    """An ``nrows x ncols`` matrix stored as a list of sparse columns."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[Vector] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.cols = [dict(c) for c in cols]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "SparseMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, x in enumerate(row):
                x = as_scalar(x)
                if x:
                    cols[j][i] = x
        return cls(nrows, ncols, cols)

    @classmethod
    def from_row_vectors(cls, rows: Sequence[Vector], ncols: int) -> "SparseMatrix":
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j, x in row.items():
                cols[j][i] = x
        return cls(len(rows), ncols, cols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, [{j: ONE} for j in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_zero(self) -> bool:
        return not any(self.cols)

    def rows(self) -> list[Vector]:
        out = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def to_dense(self) -> list[list[GaussianRational]]:
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def apply(self, v: Vector) -> Vector:
        out: dict = {}
        for j, c in v.items():
            _axpy(out, self.cols[j], c)
        return out

    def left_apply(self, y: Vector) -> Vector:
        """Row vector times matrix: ``(y^T M)_j = sum_i y_i M_ij``."""
        out = {}
        for j, col in enumerate(self.cols):
            s = dot(y, col)
            if s:
                out[j] = s
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return SparseMatrix(self.nrows, self.ncols, [vec_add(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [vec_scale(col, c) for col in self.cols])

    def conj(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [vec_conj(c) for c in self.cols])

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, self.rows())

    def adjoint(self) -> "SparseMatrix":
        return self.transpose().conj()

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def __repr__(self):
        nnz = sum(len(c) for c in self.cols)
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={nnz})"


def vstack(mats: Sequence[SparseMatrix]) -> SparseMatrix:
    """Stack matrices sharing a column count on top of each other."""
    if not mats:
        raise ValueError("nothing to stack")
    ncols = mats[0].ncols
    cols = [{} for _ in range(ncols)]
    offset = 0
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("column count mismatch in vstack")
        for j, col in enumerate(m.cols):
            for i, x in col.items():
                cols[j][i + offset] = x
        offset += m.nrows
    return SparseMatrix(offset, ncols, cols)


def hstack(mats: Sequence[SparseMatrix]) -> SparseMatrix:
    if not mats:
        raise ValueError("nothing to stack")
    nrows = mats[0].nrows
    cols = []
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("row count mismatch in hstack")
        cols.extend(m.cols)
    return SparseMatrix(nrows, len(cols), cols)


def span_of(vectors: Iterable[Vector], track: bool = False) -> Echelon:
    e = Echelon(track=track)
    for k, v in enumerate(vectors):
        e.insert(v, k)
    return e


def rank(m: SparseMatrix | Sequence[Vector]) -> int:
    vectors = m.cols if isinstance(m, SparseMatrix) else m
    return span_of(vectors).rank


def nullspace(m: SparseMatrix) -> list[Vector]:
    """Basis of ``{x : m x = 0}``, one vector per redundant column."""
    e = Echelon(track=True)
    out = []
    for j, col in enumerate(m.cols):
        r, combo = e.reduce(col)
        if r:
            e.insert(col, j)
        else:
            x = e.express(combo)
            x = vec_scale(x, -1)
            x[j] = ONE
            out.append(x)
    return out


def solve(m: SparseMatrix, b: Vector):
    """Some ``x`` with ``m x = b``, or None when ``b`` is outside the column space."""
    e = span_of(m.cols, track=True)
    r, combo = e.reduce(b)
    if r:
        return None
    return e.express(combo)


def inverse(m: SparseMatrix) -> SparseMatrix:
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    e = span_of(m.cols, track=True)
    if e.rank != n:
        raise ZeroDivisionError("singular matrix")
    return SparseMatrix(n, n, [e.express(e.reduce({i: ONE})[1]) for i in range(n)])


def left_annihilator(vectors: Sequence[Vector], target: Vector):
    """A functional ``y`` with ``y.v = 0`` for each ``v`` and ``y.target != 0``, or None."""
    return span_of(vectors).annihilator(target)


def determinant(rows: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    """Determinant of a small dense square matrix by elimination."""
    n = len(rows)
    a = [[as_scalar(x) for x in row] for row in rows]
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        p = a[c][c]
        det = det * p
        inv = p.inverse()
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f = f * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det
