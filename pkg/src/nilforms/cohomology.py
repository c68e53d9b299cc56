"""Invariant de Rham, Dolbeault, Bott-Chern and Aeppli cohomology.

Dimensions come from exact ranks:

* Dolbeault ``h^{p,q} = dim Ker dbar|_{p,q} - rank dbar|_{p,q-1}``
* Bott-Chern ``h^{p,q} = dim (Ker d ^ (p,q)) - rank ddbar|_{p-1,q-1}``
* Aeppli ``h^{p,q} = dim Ker ddbar|_{p,q} - rank [d|_{p-1,q} , dbar|_{p,q-1}]``
* de Rham by total degree.

Harmonic spaces are joint kernels of the operator systems, with adjoints taken
for the chosen metric.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forms import Form, basis, basis_index
from .linalg import SparseMatrix, nullspace, rank, solve, span_of, vec_add, vec_scale, vstack
from .metrics import HermitianMetric, adjoint_matrix
from .operators import operator_matrix
from .scalars import ONE
from .structure import InvalidPresentation, StructurePresentation

__all__ = [
    "CohomologyTable",
    "HarmonicBasis",
    "MembershipResult",
    "cohomology_dims",
    "harmonic_basis",
    "subspace_membership",
    "aeppli_breakdown",
    "normalize_kind",
    "KINDS",
    "span_equal",
    "in_span",
    "pairing",
    "reduced_from_end",
    "is_reduced_from_end",
]

KINDS = ("deRham", "Dolbeault", "BottChern", "Aeppli")

_KIND_ALIASES = {
    "derham": "deRham",
    "de_rham": "deRham",
    "de-rham": "deRham",
    "dr": "deRham",
    "dolbeault": "Dolbeault",
    "dbar": "Dolbeault",
    "bottchern": "BottChern",
    "bott-chern": "BottChern",
    "bott_chern": "BottChern",
    "bc": "BottChern",
    "aeppli": "Aeppli",
    "a": "Aeppli",
}


def normalize_kind(kind: str) -> str:
    k = _KIND_ALIASES.get(kind.lower())
    if k is None:
        raise ValueError(f"unknown cohomology kind {kind!r}; expected one of {', '.join(KINDS)}")
    return k


@dataclass(frozen=True)
class CohomologyTable:
    kind: str
    n: int
    dims: dict = field(hash=False)

    def __getitem__(self, key):
        return self.dims[key]

    def to_json(self) -> dict:
        if self.kind == "deRham":
            entries = {str(k): v for k, v in sorted(self.dims.items())}
        else:
            entries = {f"{p},{q}": v for (p, q), v in sorted(self.dims.items())}
        return {"kind": self.kind, "scope": "invariant", "n": self.n, "dims": entries}

    def grid(self) -> str:
        """Rows q = n..0, columns p = 0..n, as in a Hodge diamond laid flat."""
        if self.kind == "deRham":
            return "  ".join(f"b{k}={v}" for k, v in sorted(self.dims.items()))
        lines = []
        for q in range(self.n, -1, -1):
            lines.append(f"q={q} |" + "".join(f"{self.dims[(p, q)]:4d}" for p in range(self.n + 1)))
        lines.append("    +" + "-" * (4 * (self.n + 1)))
        lines.append("  p= " + "".join(f"{p:4d}" for p in range(self.n + 1)))
        return "\n".join(lines)


@dataclass(frozen=True)
class HarmonicBasis:
    kind: str
    bidegree: tuple[int, int]
    metric: HermitianMetric
    basis: tuple[Form, ...]

    def __len__(self):
        return len(self.basis)

    def to_json(self) -> dict:
        from .textio import format_form

        return {
            "kind": self.kind,
            "bidegree": list(self.bidegree),
            "dimension": len(self.basis),
            "basis": [format_form(f) for f in self.basis],
        }


def _mat(pres, op, p, q) -> SparseMatrix:
    n = pres.n
    ncols = len(basis(n, p, q)) if 0 <= p <= n and 0 <= q <= n else 0
    if ncols == 0:
        return SparseMatrix(0, 0)
    return operator_matrix(pres, op, p, q).matrix


def _nullity(m: SparseMatrix) -> int:
    return m.ncols - rank(m)


def _in_range(n, p, q):
    return 0 <= p <= n and 0 <= q <= n


def _image_rank(pres, op, p, q) -> int:
    if not _in_range(pres.n, p, q):
        return 0
    return rank(_mat(pres, op, p, q))


def _bc_dim(pres, p, q) -> int:
    ker = _nullity(vstack([_mat(pres, "del", p, q), _mat(pres, "delbar", p, q)]))
    return ker - _image_rank(pres, "ddbar", p - 1, q - 1)


def _aeppli_images(pres, p, q) -> list:
    cols = []
    if _in_range(pres.n, p - 1, q):
        cols.extend(_mat(pres, "del", p - 1, q).cols)
    if _in_range(pres.n, p, q - 1):
        cols.extend(_mat(pres, "delbar", p, q - 1).cols)
    return cols


def _aeppli_dim(pres, p, q) -> int:
    ker = _nullity(_mat(pres, "ddbar", p, q))
    return ker - rank(_aeppli_images(pres, p, q))


def _dolbeault_dim(pres, p, q) -> int:
    return _nullity(_mat(pres, "delbar", p, q)) - _image_rank(pres, "delbar", p, q - 1)


def _degree_basis(n, k):
    out = []
    for p in range(k, -1, -1):
        q = k - p
        if _in_range(n, p, q):
            out.extend(basis(n, p, q))
    return out


def _d_on_degree(pres, k) -> SparseMatrix:
    n = pres.n
    src = _degree_basis(n, k)
    tgt = {m: i for i, m in enumerate(_degree_basis(n, k + 1))}
    cols = []
    for m in src:
        img = pres.d_monomial(m)
        cols.append({tgt[m2]: c for m2, c in img.items()})
    return SparseMatrix(len(tgt), len(src), cols)


def cohomology_dims(pres: StructurePresentation, kind: str) -> CohomologyTable:
    """Dimensions of invariant cohomology of the given kind."""
    kind = normalize_kind(kind)
    pres.require_valid()
    n = pres.n
    if kind == "deRham":
        dims = {}
        for k in range(2 * n + 1):
            dk = _d_on_degree(pres, k)
            prev = rank(_d_on_degree(pres, k - 1)) if k > 0 else 0
            dims[k] = _nullity(dk) - prev
        return CohomologyTable(kind, n, dims)
    if not pres.integrable:
        raise InvalidPresentation(f"{kind} cohomology needs an integrable structure")
    fn = {"Dolbeault": _dolbeault_dim, "BottChern": _bc_dim, "Aeppli": _aeppli_dim}[kind]
    dims = {(p, q): fn(pres, p, q) for p in range(n + 1) for q in range(n + 1)}
    return CohomologyTable(kind, n, dims)


@dataclass(frozen=True)
class AeppliBreakdown:
    ker_ddbar: int
    im_del: int
    im_delbar: int
    intersection: int
    dimension: int


def aeppli_breakdown(pres: StructurePresentation, p: int, q: int) -> AeppliBreakdown:
    """The four numbers behind ``h_A^{p,q}`` (kernel, both images, their overlap)."""
    pres.require_integrable()
    ker = _nullity(_mat(pres, "ddbar", p, q))
    a = _image_rank(pres, "del", p - 1, q)
    b = _image_rank(pres, "delbar", p, q - 1)
    total = rank(_aeppli_images(pres, p, q))
    return AeppliBreakdown(ker, a, b, a + b - total, ker - total)


def _harmonic_system(pres, kind, p, q, H) -> SparseMatrix:
    n = pres.n
    blocks = []

    def adj(op):
        return adjoint_matrix(pres, H, op, p, q).matrix

    if kind == "BottChern":
        blocks = [_mat(pres, "del", p, q), _mat(pres, "delbar", p, q), adj("ddbar")]
    elif kind == "Aeppli":
        blocks = [_mat(pres, "ddbar", p, q), adj("del"), adj("delbar")]
    elif kind == "Dolbeault":
        blocks = [_mat(pres, "delbar", p, q), adj("delbar")]
    else:
        raise ValueError("harmonic bases are computed for Dolbeault, BottChern and Aeppli")
    ncols = len(basis(n, p, q))
    blocks = [b if b.ncols == ncols else SparseMatrix(0, ncols) for b in blocks]
    return vstack(blocks)


def harmonic_basis(pres: StructurePresentation, kind: str, p: int, q: int, H: HermitianMetric) -> HarmonicBasis:
    """A basis of the joint kernel of the harmonic system for ``kind`` in bidegree (p,q)."""
    kind = normalize_kind(kind)
    pres.require_integrable()
    n = pres.n
    if not _in_range(n, p, q):
        raise ValueError(f"bidegree ({p},{q}) out of range for n={n}")
    if H.n != n:
        raise ValueError(f"metric has dimension {H.n}, expected {n}")
    system = _harmonic_system(pres, kind, p, q, H)
    b = basis(n, p, q)
    forms = tuple(Form._trusted(n, {b[k]: c for k, c in v.items()}) for v in reduced_from_end(nullspace(system)))
    return HarmonicBasis(kind, (p, q), H, forms)


def reduced_from_end(vectors) -> list[dict]:
    """Canonical basis of a span: each vector's last nonzero entry is a 1 that
    every other vector has as 0; sorted by that position."""
    done: list[tuple[int, dict]] = []
    for v in vectors:
        r = dict(v)
        for piv, pr in done:
            c = r.get(piv)
            if c:
                r = vec_add(r, pr, -c)
        if not r:
            continue
        piv = max(r)
        r = vec_scale(r, r[piv].inverse())
        done = [(pp, vec_add(q, r, -q[piv]) if q.get(piv) else q) for pp, q in done]
        done.append((piv, r))
    done.sort(key=lambda t: t[0])
    return [r for _, r in done]


def is_reduced_from_end(vectors) -> bool:
    """Whether ``vectors`` are exactly in the form produced by :func:`reduced_from_end`."""
    pivots = []
    for v in vectors:
        if not v:
            return False
        piv = max(v)
        if v[piv] != ONE:
            return False
        pivots.append(piv)
    if pivots != sorted(set(pivots)):
        return False
    return all(k == i or not vectors[k].get(piv) for i, piv in enumerate(pivots) for k in range(len(vectors)))


# membership --------------------------------------------------------------------


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    generator_coefficients: tuple | None = None
    preimages: tuple | None = None
    witness: Form | None = None

    def __bool__(self):
        return self.member


def pairing(y: Form, v: Form):
    """Bilinear pairing of a functional with a form: ``sum y_m v_m`` (no conjugation)."""
    from .linalg import dot

    return dot(dict(y.items()), dict(v.items()))


def _pure_bidegree(forms):
    bds = set()
    for f in forms:
        bds |= f.bidegrees()
    if len(bds) > 1:
        raise ValueError(f"forms span several bidegrees: {sorted(bds)}")
    return next(iter(bds)) if bds else None


def subspace_membership(
    target: Form,
    generators=(),
    plus_images=(),
    pres: StructurePresentation | None = None,
) -> MembershipResult:
    """Decide whether ``target`` lies in ``span(generators) + sum op(source)``.

    ``plus_images`` lists ``(op_name, (p, q))`` pairs: the image of ``op`` on the
    (p,q)-forms.  A member comes with coefficients and preimages; a non-member
    comes with a functional that kills the whole subspace but not ``target``.
    """
    n = target.n
    gens = list(generators)
    for g in gens:
        target._check(g)
    bd = _pure_bidegree([target] + gens)
    image_mats = []
    for op, (sp, sq) in plus_images:
        if pres is None:
            raise ValueError("operator images need a presentation")
        m = operator_matrix(pres, op, sp, sq)
        if bd is None:
            bd = m.target
        elif m.targets and m.target != bd:
            raise ValueError(f"image of {op} on ({sp},{sq}) lands in {m.target}, not {bd}")
        image_mats.append(((sp, sq), m))
    if bd is None:
        # everything is zero
        return MembershipResult(True, tuple(ONE * 0 for _ in gens), tuple(Form.zero(n) for _ in image_mats), None)
    idx = basis_index(n, *bd)
    cols = [{idx[m]: c for m, c in g.items()} for g in gens]
    splits = [len(cols)]
    for _, m in image_mats:
        cols.extend(m.matrix.cols)
        splits.append(len(cols))
    A = SparseMatrix(len(idx), len(cols), cols)
    b = {idx[m]: c for m, c in target.items()}
    x = solve(A, b)
    if x is None:
        y = span_of(cols).annihilator(b)
        bb = basis(n, *bd)
        return MembershipResult(False, witness=Form._trusted(n, {bb[k]: c for k, c in y.items()}))
    zero = ONE * 0
    coeffs = tuple(x.get(k, zero) for k in range(splits[0]))
    pre = []
    for j, ((sp, sq), _) in enumerate(image_mats):
        sb = basis(n, sp, sq)
        lo = splits[j]
        pre.append(Form._trusted(n, {sb[k - lo]: c for k, c in x.items() if lo <= k < splits[j + 1]}))
    return MembershipResult(True, coeffs, tuple(pre), None)


def span_equal(forms_a, forms_b) -> bool:
    """Whether two lists of forms of one bidegree span the same space."""
    all_forms = list(forms_a) + list(forms_b)
    bd = _pure_bidegree(all_forms)
    if bd is None:
        return True
    n = all_forms[0].n
    idx = basis_index(n, *bd)

    def vecs(fs):
        return [{idx[m]: c for m, c in f.items()} for f in fs]

    ea = span_of(vecs(forms_a))
    eb = span_of(vecs(forms_b))
    return ea.rank == eb.rank and all(ea.contains(v) for v in vecs(forms_b))


def in_span(form: Form, forms) -> bool:
    return subspace_membership(form, forms).member
