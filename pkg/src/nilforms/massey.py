"""Triple Aeppli-Bott-Chern-Massey products with replayable certificates.

For Bott-Chern classes ``a = [alpha]`` of bidegree (p,q), ``b = [beta]`` of (r,s)
and ``c = [gamma]`` of (u,v) with ``alpha^beta`` and ``beta^gamma`` both
ddbar-exact, pick ``f_ab``, ``f_bc`` with

    ddbar f_ab = (-1)^{p+q} alpha ^ beta,    ddbar f_bc = (-1)^{r+s} beta ^ gamma

and form ``(-1)^{p+q} alpha ^ f_bc - (-1)^{r+s} f_ab ^ gamma``.  The product is
the class of that form in Aeppli cohomology modulo
``H_A ^ a + H_A ^ c``.

Certificates use canonical choices so that every stored coefficient is pinned
by an equation the verifier checks:

* primitives are the minimal-norm solutions (orthogonal to Ker ddbar in the
  monomial pairing);
* a nonvanishing witness is the projection of the representative onto the
  complement of the indeterminacy, normalised to pair to 1 with it;
* the multipliers ``z`` proving that the witness kills ``Ker ddbar ^ alpha``
  (``y(x ^ alpha) = z(ddbar x)`` for every x) are minimal-norm too;
* every minimal-norm solution ``v`` of ``B v = r`` is stored with a dual ``u``
  such that ``v = B^H u``, and the harmonic generators are in a reduced form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cohomology import harmonic_basis, is_reduced_from_end, pairing, subspace_membership
from .forms import Form, basis, basis_index, wedge
from .linalg import SparseMatrix, dot, solve, vec_add
from .metrics import HermitianMetric, del_star, delbar_star
from .operators import ddbar, operator_matrix
from .scalars import ONE, ZERO
from .structure import StructurePresentation
from .textio import format_form, format_structure, parse_form, parse_structure

__all__ = [
    "BCClass",
    "MasseyCertificate",
    "NoSolution",
    "NO_SOLUTION",
    "solve_ddbar_primitive",
    "triple_abc",
    "verify_certificate",
    "certificate_failures",
    "representative_of",
    "certificate_from_json",
    "verdict_with_primitives",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1


class NoSolution:
    """Returned when a target is not ddbar-exact."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "NO_SOLUTION"


NO_SOLUTION = NoSolution()


@dataclass(frozen=True)
class BCClass:
    representative: Form
    pres: StructurePresentation = field(compare=False)

    def __post_init__(self):
        f = self.representative
        if not f:
            raise ValueError("a Bott-Chern class needs a nonzero representative")
        f.bidegree  # raises on mixed bidegree
        if self.pres.d(f):
            raise ValueError(f"representative {format_form(f)} is not d-closed")

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.representative.bidegree

    @property
    def degree(self) -> int:
        return sum(self.bidegree)


# linear algebra helpers ------------------------------------------------------------


def _vec(f: Form, bd) -> dict:
    idx = basis_index(f.n, *bd)
    return {idx[m]: c for m, c in f.items()}


def _form(n, bd, v) -> Form:
    b = basis(n, *bd)
    return Form._trusted(n, {b[k]: c for k, c in v.items() if c})


def _in_range(n, bd):
    return 0 <= bd[0] <= n and 0 <= bd[1] <= n


def _live_rows(B: SparseMatrix) -> set:
    return {k for col in B.cols for k in col}


def _pinned(B: SparseMatrix, r: dict):
    """Minimal-norm ``v`` with ``B v = r`` and a dual ``u`` with ``v = B^H u``, or None.

    ``u`` is supported on the nonzero rows of ``B``, so a verifier can pin both
    vectors with products alone.
    """
    BH = B.adjoint()
    u = solve(B @ BH, r)
    if u is None:
        return None
    live = _live_rows(B)
    u = {k: c for k, c in u.items() if k in live and c}
    return BH.apply(u), u


def _pin_failures(B: SparseMatrix, v: dict, u: dict, label: str) -> list[str]:
    fails = []
    live = _live_rows(B)
    if any(k not in live for k in u):
        fails.append(f"dual of {label} touches a row the matrix never reaches")
    if B.adjoint().apply(u) != v:
        fails.append(f"{label} is not the minimal-norm solution named by its dual")
    return fails


def _orthogonal_split(A: SparseMatrix, r: dict):
    """``r = A x + perp`` with ``perp`` orthogonal to the columns and ``x`` pinned by a dual."""
    if A.ncols:
        AH = A.adjoint()
        x0 = solve(AH @ A, AH.apply(r))
        proj = A.apply(x0)
    else:
        proj = {}
    x, dual = _pinned(A, proj)
    perp = vec_add(r, A.apply(x), -ONE)
    return x, dual, perp


def _functional_of(perp: dict) -> dict:
    """``conj(perp) / |perp|^2``: pairs to 1 with ``perp`` under the bilinear pairing."""
    norm = sum((c * c.conj() for c in perp.values()), ZERO)
    return {k: c.conj() / norm for k, c in perp.items()}


def _ddbar_matrix(pres, target_bd) -> SparseMatrix:
    n = pres.n
    src = (target_bd[0] - 1, target_bd[1] - 1)
    if src[0] < 0 or src[1] < 0:
        return SparseMatrix(len(basis(n, *target_bd)), 0)
    return operator_matrix(pres, "ddbar", *src).matrix


def _pinned_primitive(pres: StructurePresentation, target: Form):
    n = pres.n
    if not target:
        return Form.zero(n), Form.zero(n)
    bd = target.bidegree
    M = _ddbar_matrix(pres, bd)
    res = _pinned(M, _vec(target, bd)) if M.ncols else None
    if res is None:
        return None
    f, u = res
    return _form(n, (bd[0] - 1, bd[1] - 1), f), _form(n, bd, u)


def solve_ddbar_primitive(pres: StructurePresentation, target: Form):
    """Minimal-norm ``f`` with ``ddbar f = target``, or :data:`NO_SOLUTION`."""
    res = _pinned_primitive(pres, target)
    return NO_SOLUTION if res is None else res[0]


# certificate ---------------------------------------------------------------------


@dataclass(frozen=True)
class MasseyCertificate:
    """Everything needed to replay a triple-product verdict without solving anything.

    Each stored solution of a linear equation is the minimal-norm one and comes
    with a ``dual`` vector that names it (``v = B^H dual``), so changing any
    single coefficient breaks an equality the verifier checks.
    """

    pres: StructurePresentation
    metric: HermitianMetric
    alpha: Form
    beta: Form
    gamma: Form
    verdict: str  # nonzero | zero | undefined
    f_ab: Form | None = None
    f_bc: Form | None = None
    dual_ab: Form | None = None
    dual_bc: Form | None = None
    representative: Form | None = None
    harmonic_a_side: tuple = ()  # Aeppli-harmonic forms multiplied by alpha
    harmonic_c_side: tuple = ()  # ... and by gamma
    # decomposition of the representative over the indeterminacy (exact for
    # "zero", the orthogonal projection for "nonzero")
    coeffs_a_side: tuple = ()
    coeffs_c_side: tuple = ()
    R: Form | None = None
    S: Form | None = None
    dual: Form | None = None
    witness: Form | None = None
    z_alpha: Form | None = None
    z_gamma: Form | None = None
    dual_z_alpha: Form | None = None
    dual_z_gamma: Form | None = None
    undefined_product: str | None = None  # "ab" or "bc"
    exactness_witness: Form | None = None
    exactness_preimage: Form | None = None
    exactness_dual: Form | None = None

    @property
    def target_bidegree(self):
        (p, q), (r, s), (u, v) = self.alpha.bidegree, self.beta.bidegree, self.gamma.bidegree
        return (p + r + u - 1, q + s + v - 1)

    def to_json(self) -> dict:
        from .scalars import format_scalar

        def ff(f):
            return None if f is None else format_form(f)

        out = {
            "schema_version": SCHEMA_VERSION,
            "kind": "abc-massey-certificate",
            "structure": format_structure(self.pres),
            "metric": self.metric.to_json(),
            "inputs": {"a": ff(self.alpha), "b": ff(self.beta), "c": ff(self.gamma)},
            "verdict": self.verdict,
        }
        if self.verdict == "undefined":
            out["undefined"] = {
                "product": self.undefined_product,
                "witness": ff(self.exactness_witness),
                "preimage": ff(self.exactness_preimage),
                "dual": ff(self.exactness_dual),
            }
            return out
        out["primitives"] = {
            "f_ab": ff(self.f_ab),
            "f_bc": ff(self.f_bc),
            "dual_ab": ff(self.dual_ab),
            "dual_bc": ff(self.dual_bc),
        }
        out["representative"] = ff(self.representative)
        out["indeterminacy"] = {
            "harmonic_a_side": [ff(h) for h in self.harmonic_a_side],
            "harmonic_c_side": [ff(h) for h in self.harmonic_c_side],
        }
        out["decomposition"] = {
            "coeffs_a_side": [format_scalar(c) for c in self.coeffs_a_side],
            "coeffs_c_side": [format_scalar(c) for c in self.coeffs_c_side],
            "R": ff(self.R),
            "S": ff(self.S),
            "dual": ff(self.dual),
        }
        if self.verdict == "nonzero":
            out["witness"] = {
                "functional": ff(self.witness),
                "z_alpha": ff(self.z_alpha),
                "z_gamma": ff(self.z_gamma),
                "dual_z_alpha": ff(self.dual_z_alpha),
                "dual_z_gamma": ff(self.dual_z_gamma),
            }
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def certificate_from_json(doc: dict) -> MasseyCertificate:
    """Inverse of :meth:`MasseyCertificate.to_json` (raises ValueError on malformed input)."""
    from .scalars import parse_scalar

    if doc.get("schema_version") != SCHEMA_VERSION or doc.get("kind") != "abc-massey-certificate":
        raise ValueError("not a version-1 ABC-Massey certificate")
    pres, _ = parse_structure(doc["structure"])
    n = pres.n
    metric = HermitianMetric([[parse_scalar(x) for x in row] for row in doc["metric"]])

    def pf(text):
        if text is None:
            return None
        return Form.zero(n) if text.strip() == "0" else parse_form(text, n)

    inp = doc["inputs"]
    kw = dict(pres=pres, metric=metric, alpha=pf(inp["a"]), beta=pf(inp["b"]), gamma=pf(inp["c"]), verdict=doc["verdict"])
    if doc["verdict"] == "undefined":
        u = doc["undefined"]
        return MasseyCertificate(
            **kw,
            undefined_product=u["product"],
            exactness_witness=pf(u["witness"]),
            exactness_preimage=pf(u["preimage"]),
            exactness_dual=pf(u["dual"]),
        )
    if doc["verdict"] not in ("zero", "nonzero"):
        raise ValueError(f"unknown verdict {doc['verdict']!r}")
    prim = doc["primitives"]
    ind = doc["indeterminacy"]
    dec = doc["decomposition"]
    kw.update(
        f_ab=pf(prim["f_ab"]),
        f_bc=pf(prim["f_bc"]),
        dual_ab=pf(prim["dual_ab"]),
        dual_bc=pf(prim["dual_bc"]),
        representative=pf(doc["representative"]),
        harmonic_a_side=tuple(pf(h) for h in ind["harmonic_a_side"]),
        harmonic_c_side=tuple(pf(h) for h in ind["harmonic_c_side"]),
        coeffs_a_side=tuple(parse_scalar(c) for c in dec["coeffs_a_side"]),
        coeffs_c_side=tuple(parse_scalar(c) for c in dec["coeffs_c_side"]),
        R=pf(dec["R"]),
        S=pf(dec["S"]),
        dual=pf(dec["dual"]),
    )
    if doc["verdict"] == "nonzero":
        w = doc["witness"]
        kw.update(
            witness=pf(w["functional"]),
            z_alpha=pf(w["z_alpha"]),
            z_gamma=pf(w["z_gamma"]),
            dual_z_alpha=pf(w["dual_z_alpha"]),
            dual_z_gamma=pf(w["dual_z_gamma"]),
        )
    return MasseyCertificate(**kw)


# construction --------------------------------------------------------------------


def _sign(k):
    return -1 if k % 2 else 1


def representative_of(alpha, gamma, f_ab, f_bc, deg_a, deg_b) -> Form:
    """``(-1)^{deg a} alpha ^ f_bc - (-1)^{deg b} f_ab ^ gamma``."""
    return wedge(alpha, f_bc) * _sign(deg_a) - wedge(f_ab, gamma) * _sign(deg_b)


def _products(alpha, beta, gamma):
    (p, q), (r, s) = alpha.bidegree, beta.bidegree
    return wedge(alpha, beta) * _sign(p + q), wedge(beta, gamma) * _sign(r + s)


class _Indeterminacy:
    """Columns ``h ^ alpha``, ``h ^ gamma``, ``del`` and ``dbar`` images in bidegree (P,Q)."""

    def __init__(self, pres, alpha, gamma, ha, hc, bd):
        n = pres.n
        self.n, self.bd = n, bd
        P, Q = bd
        cols = [_vec(wedge(h, alpha), bd) for h in ha] + [_vec(wedge(h, gamma), bd) for h in hc]
        self.na, self.nc = len(ha), len(hc)
        self.src_R = (P - 1, Q) if _in_range(n, (P - 1, Q)) else None
        self.src_S = (P, Q - 1) if _in_range(n, (P, Q - 1)) else None
        self.nR = self.nS = 0
        if self.src_R:
            c = operator_matrix(pres, "del", *self.src_R).matrix.cols
            self.nR = len(c)
            cols.extend(c)
        if self.src_S:
            c = operator_matrix(pres, "delbar", *self.src_S).matrix.cols
            self.nS = len(c)
            cols.extend(c)
        self.A = SparseMatrix(len(basis(n, *bd)), len(cols), cols)

    def unpack(self, x: dict):
        na, nc, nR = self.na, self.nc, self.nR
        ca = tuple(x.get(k, ZERO) for k in range(na))
        cc = tuple(x.get(na + k, ZERO) for k in range(nc))
        lo = na + nc
        R = _form(self.n, self.src_R, {k - lo: c for k, c in x.items() if lo <= k < lo + nR}) if self.src_R else Form.zero(self.n)
        lo2 = lo + nR
        S = _form(self.n, self.src_S, {k - lo2: c for k, c in x.items() if k >= lo2}) if self.src_S else Form.zero(self.n)
        return ca, cc, R, S

    def pack(self, ca, cc, R, S) -> dict:
        if len(ca) != self.na or len(cc) != self.nc:
            raise ValueError("decomposition length does not match the indeterminacy generators")
        x = {}
        for k, c in enumerate(tuple(ca) + tuple(cc)):
            if c:
                x[k] = c
        lo = self.na + self.nc
        for form, src, off in ((R, self.src_R, lo), (S, self.src_S, lo + self.nR)):
            if form:
                if src is None:
                    raise ValueError("decomposition names an image with an empty source")
                for k, c in _vec(form, src).items():
                    x[off + k] = c
        return x


def _side_multiplier(pres, y: Form, other: Form, src):
    """Minimal-norm ``z`` (and its dual) with ``y(x ^ other) = z(ddbar x)`` for every x of bidegree src."""
    n = pres.n
    tgt = (src[0] + 1, src[1] + 1)
    rhs = {}
    for k, m in enumerate(basis(n, *src)):
        val = pairing(y, wedge(Form._trusted(n, {m: ONE}), other))
        if val:
            rhs[k] = val
    if not _in_range(n, tgt):
        return None if rhs else (Form.zero(n), Form.zero(n))
    M = operator_matrix(pres, "ddbar", *src).matrix  # ddbar: src -> tgt
    res = _pinned(M.transpose(), rhs)
    if res is None:
        return None
    z, u = res
    return _form(n, tgt, z), _form(n, src, u)


def _undefined(base, pres, which, prod):
    n = pres.n
    bd = prod.bidegree
    M = _ddbar_matrix(pres, bd)
    x, dual, perp = _orthogonal_split(M, _vec(prod, bd))
    src = (bd[0] - 1, bd[1] - 1)
    pre = _form(n, src, x) if M.ncols else Form.zero(n)
    return MasseyCertificate(
        **base,
        verdict="undefined",
        undefined_product=which,
        exactness_witness=_form(n, bd, _functional_of(perp)),
        exactness_preimage=pre,
        exactness_dual=_form(n, bd, dual),
    )


def triple_abc(a: BCClass, b: BCClass, c: BCClass, H: HermitianMetric) -> MasseyCertificate:
    """Decide ``<a, b, c>_ABC`` and return a certificate built from canonical choices."""
    pres = a.pres
    pres.require_integrable()
    n = pres.n
    alpha, beta, gamma = a.representative, b.representative, c.representative
    for x in (alpha, beta, gamma):
        if x.n != n:
            raise ValueError("classes live in different dimensions")
    (p, q), (r, s), (u, v) = a.bidegree, b.bidegree, c.bidegree
    P, Q = p + r + u - 1, q + s + v - 1
    if not _in_range(n, (P, Q)) or P < 0 or Q < 0:
        raise ValueError(f"triple product lands outside the bidegree range: ({P},{Q})")
    ab, bc = _products(alpha, beta, gamma)
    base = dict(pres=pres, metric=H, alpha=alpha, beta=beta, gamma=gamma)
    prim_ab = _pinned_primitive(pres, ab)
    if prim_ab is None:
        return _undefined(base, pres, "ab", ab)
    prim_bc = _pinned_primitive(pres, bc)
    if prim_bc is None:
        return _undefined(base, pres, "bc", bc)
    (f_ab, d_ab), (f_bc, d_bc) = prim_ab, prim_bc
    rep = representative_of(alpha, gamma, f_ab, f_bc, p + q, r + s)

    src_a = (P - p, Q - q)  # H_A of this bidegree, wedged with alpha
    src_c = (P - u, Q - v)
    ha = harmonic_basis(pres, "Aeppli", *src_a, H).basis if _in_range(n, src_a) else ()
    hc = harmonic_basis(pres, "Aeppli", *src_c, H).basis if _in_range(n, src_c) else ()
    ind = _Indeterminacy(pres, alpha, gamma, ha, hc, (P, Q))
    x, dual, perp = _orthogonal_split(ind.A, _vec(rep, (P, Q)))
    ca, cc, R, S = ind.unpack(x)
    base.update(
        f_ab=f_ab,
        f_bc=f_bc,
        dual_ab=d_ab,
        dual_bc=d_bc,
        representative=rep,
        harmonic_a_side=tuple(ha),
        harmonic_c_side=tuple(hc),
        coeffs_a_side=ca,
        coeffs_c_side=cc,
        R=R,
        S=S,
        dual=_form(n, (P, Q), dual),
    )
    if not perp:
        return MasseyCertificate(**base, verdict="zero")
    y = _form(n, (P, Q), _functional_of(perp))
    za = _side_multiplier(pres, y, alpha, src_a) if _in_range(n, src_a) else (Form.zero(n), Form.zero(n))
    zc = _side_multiplier(pres, y, gamma, src_c) if _in_range(n, src_c) else (Form.zero(n), Form.zero(n))
    if za is None or zc is None:
        raise AssertionError("witness fails to annihilate Ker ddbar ^ alpha or Ker ddbar ^ gamma")
    return MasseyCertificate(
        **base, verdict="nonzero", witness=y, z_alpha=za[0], dual_z_alpha=za[1], z_gamma=zc[0], dual_z_gamma=zc[1]
    )


def verdict_with_primitives(a: BCClass, b: BCClass, c: BCClass, H: HermitianMetric, f_ab: Form, f_bc: Form) -> str:
    """The verdict computed from caller-supplied primitives (checked) instead of canonical ones."""
    pres = a.pres
    alpha, beta, gamma = a.representative, b.representative, c.representative
    ab, bc = _products(alpha, beta, gamma)
    if ddbar(pres, f_ab) != ab or ddbar(pres, f_bc) != bc:
        raise ValueError("supplied primitives do not solve ddbar f = product")
    (p, q), (r, s), (u, v) = a.bidegree, b.bidegree, c.bidegree
    P, Q = p + r + u - 1, q + s + v - 1
    rep = representative_of(alpha, gamma, f_ab, f_bc, p + q, r + s)
    n = pres.n
    src_a, src_c = (P - p, Q - q), (P - u, Q - v)
    ha = harmonic_basis(pres, "Aeppli", *src_a, H).basis if _in_range(n, src_a) else ()
    hc = harmonic_basis(pres, "Aeppli", *src_c, H).basis if _in_range(n, src_c) else ()
    gens = [wedge(h, alpha) for h in ha] + [wedge(h, gamma) for h in hc]
    images = [(op, src) for op, src in (("del", (P - 1, Q)), ("delbar", (P, Q - 1))) if _in_range(n, src)]
    if not rep:
        return "zero"
    return "zero" if subspace_membership(rep, gens, images, pres).member else "nonzero"


# replay --------------------------------------------------------------------------


def _functional_failures(y: Form | None, perp: dict, bd, n, label) -> list[str]:
    if y is None:
        return [f"{label} is missing"]
    if not perp:
        return [f"{label} given but the residual vanishes"]
    if y != _form(n, bd, _functional_of(perp)):
        return [f"{label} is not conj(residual)/|residual|^2"]
    return []


def _kills_columns(y: Form, A: SparseMatrix, bd) -> bool:
    yv = _vec(y, bd) if y else {}
    return all(not dot(yv, col) for col in A.cols)


def _harmonic_failures(pres, H, forms, src, label) -> list[str]:
    fails = []
    for h in forms:
        if not h or h.bidegree != src:
            return [f"{label} element outside bidegree {src}"]
        if ddbar(pres, h) or del_star(pres, h, H) or delbar_star(pres, h, H):
            fails.append(f"{label} element {format_form(h)} is not Aeppli-harmonic")
    if not is_reduced_from_end([_vec(h, src) for h in forms]):
        fails.append(f"{label} is not in reduced form")
    return fails


def _replay(cert: MasseyCertificate) -> list[str]:
    """List of failed checks (empty when the certificate is valid)."""
    fails = []
    pres = cert.pres
    n = pres.n
    if not pres.validate().jacobi_ok:
        return ["presentation does not satisfy d^2 = 0"]
    if not pres.integrable:
        return ["presentation is not integrable"]
    forms = {"a": cert.alpha, "b": cert.beta, "c": cert.gamma}
    for k, f in forms.items():
        if f is None or not f or len(f.bidegrees()) != 1:
            return [f"input {k} missing, zero or of mixed bidegree"]
        if pres.d(f):
            fails.append(f"input {k} is not d-closed")
    (p, q), (r, s), (u, v) = cert.alpha.bidegree, cert.beta.bidegree, cert.gamma.bidegree
    P, Q = p + r + u - 1, q + s + v - 1
    ab, bc = _products(cert.alpha, cert.beta, cert.gamma)

    if cert.verdict == "undefined":
        prod = {"ab": ab, "bc": bc}.get(cert.undefined_product)
        if prod is None or not prod:
            return fails + ["undefined verdict names no nonzero product"]
        if cert.undefined_product == "bc" and _pinned_primitive(pres, ab) is None:
            fails.append("the a^b product is already non-exact")
        bd = prod.bidegree
        M = _ddbar_matrix(pres, bd)
        pre = cert.exactness_preimage or Form.zero(n)
        x = _vec(pre, (bd[0] - 1, bd[1] - 1)) if pre else {}
        dual = _vec(cert.exactness_dual, bd) if cert.exactness_dual else {}
        fails += _pin_failures(M, x, dual, "exactness preimage")
        perp = vec_add(_vec(prod, bd), M.apply(x), -ONE)
        fails += _functional_failures(cert.exactness_witness, perp, bd, n, "exactness witness")
        if cert.exactness_witness is not None and not _kills_columns(cert.exactness_witness, M, bd):
            fails.append("exactness witness does not kill Im ddbar")
        return fails

    if cert.verdict not in ("zero", "nonzero"):
        return fails + [f"unknown verdict {cert.verdict!r}"]
    if None in (cert.f_ab, cert.f_bc, cert.representative, cert.dual_ab, cert.dual_bc, cert.dual, cert.R, cert.S):
        return fails + ["missing primitives, representative or decomposition"]
    for name, f, d, prod in (("f_ab", cert.f_ab, cert.dual_ab, ab), ("f_bc", cert.f_bc, cert.dual_bc, bc)):
        if ddbar(pres, f) != prod:
            fails.append(f"ddbar {name} does not equal its signed product")
        if prod:
            bd = prod.bidegree
            fv = _vec(f, (bd[0] - 1, bd[1] - 1)) if f else {}
            fails += _pin_failures(_ddbar_matrix(pres, bd), fv, _vec(d, bd) if d else {}, name)
        elif f or d:
            fails.append(f"{name} should vanish with its product")
    rep = representative_of(cert.alpha, cert.gamma, cert.f_ab, cert.f_bc, p + q, r + s)
    if rep != cert.representative:
        fails.append("representative does not match the defining formula")
    src_a, src_c = (P - p, Q - q), (P - u, Q - v)
    for forms_, src, label in ((cert.harmonic_a_side, src_a, "a-side"), (cert.harmonic_c_side, src_c, "c-side")):
        if not _in_range(n, src):
            if forms_:
                fails.append(f"{label} generators given for an empty source")
            continue
        fails += _harmonic_failures(pres, cert.metric, forms_, src, f"{label} harmonic list")
    ind = _Indeterminacy(pres, cert.alpha, cert.gamma, cert.harmonic_a_side, cert.harmonic_c_side, (P, Q))
    x = ind.pack(cert.coeffs_a_side, cert.coeffs_c_side, cert.R, cert.S)
    fails += _pin_failures(ind.A, x, _vec(cert.dual, (P, Q)) if cert.dual else {}, "decomposition")
    perp = vec_add(_vec(cert.representative, (P, Q)) if cert.representative else {}, ind.A.apply(x), -ONE)

    if cert.verdict == "zero":
        if perp:
            fails.append("decomposition does not reproduce the representative")
        if cert.witness is not None:
            fails.append("zero verdict carries a witness")
        return fails

    y = cert.witness
    fails += _functional_failures(y, perp, (P, Q), n, "witness")
    if y is None or not perp:
        return fails
    if pairing(y, rep) != ONE:
        fails.append("witness does not pair to 1 with the representative")
    if not _kills_columns(y, ind.A, (P, Q)):
        fails.append("witness does not kill the indeterminacy")
    for side, other, src, z, dz in (
        ("alpha", cert.alpha, src_a, cert.z_alpha, cert.dual_z_alpha),
        ("gamma", cert.gamma, src_c, cert.z_gamma, cert.dual_z_gamma),
    ):
        if z is None or dz is None:
            fails.append(f"z_{side} or its dual is missing")
            continue
        if not _in_range(n, src) or not _in_range(n, (src[0] + 1, src[1] + 1)):
            if z or dz:
                fails.append(f"z_{side} given for an empty source")
            if _in_range(n, src):
                for m in basis(n, *src):
                    if pairing(y, wedge(Form._trusted(n, {m: ONE}), other)):
                        fails.append(f"witness does not kill Ker ddbar ^ {side}")
                        break
            continue
        tgt = (src[0] + 1, src[1] + 1)
        M = operator_matrix(pres, "ddbar", *src).matrix
        zv = _vec(z, tgt) if z else {}
        rhs = {}
        for k, m in enumerate(basis(n, *src)):
            val = pairing(y, wedge(Form._trusted(n, {m: ONE}), other))
            if val:
                rhs[k] = val
        if M.transpose().apply(zv) != rhs:
            fails.append(f"witness does not kill Ker ddbar ^ {side}")
        fails += _pin_failures(M.transpose(), zv, _vec(dz, src) if dz else {}, f"z_{side}")
    return fails


def verify_certificate(cert: MasseyCertificate | dict | str) -> bool:
    """Replay every defining equality of a certificate (object, parsed JSON, or JSON text)."""
    return not certificate_failures(cert)


def certificate_failures(cert) -> list[str]:
    try:
        if isinstance(cert, str):
            cert = json.loads(cert)
        if isinstance(cert, dict):
            cert = certificate_from_json(cert)
        return _replay(cert)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        return [f"malformed certificate: {exc}"]
