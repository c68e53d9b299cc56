"""Built-in structure equations.

Each entry's docstring carries a ``Reference expansion`` block: one line per
nonzero ``d eta^k`` written as a sum of ``<constant>*<parameter>*<monomial>``
terms.  The test suite re-reads those lines with its own evaluator and compares
them term by term with what the builder produces.

Parameter defaults are the instance each family is usually exercised with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .forms import Form
from .scalars import GaussianRational, I, parse_scalar
from .structure import StructurePresentation
from .textio import parse_form

__all__ = ["CatalogEntry", "CatalogError", "ParamSpec", "catalog", "catalog_names", "get_entry", "parse_params", "CATALOG"]


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class ParamSpec:
    name: str
    default: object = 0
    domain: str = "complex"  # complex | real | int
    nonzero: bool = False


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple[ParamSpec, ...]
    builder: Callable[[dict], StructurePresentation]
    doc: str
    integrable_expected: Callable[[dict], bool] = field(default=lambda p: True)
    open_params: bool = False  # accepts extra parameters (gen_n's coefficients)

    def defaults(self) -> dict:
        return {p.name: _coerce(p, p.default) for p in self.params}

    def resolve(self, given: Mapping[str, object] | None = None) -> dict:
        values = self.defaults()
        specs = {p.name: p for p in self.params}
        for k, v in (given or {}).items():
            spec = specs.get(k)
            if spec is None:
                if self.open_params:
                    values[k] = _coerce(ParamSpec(k), v)
                    continue
                raise CatalogError(f"unknown parameter {k!r} for {self.name}; expected one of {', '.join(specs)}")
            values[k] = _coerce(spec, v)
        for p in self.params:
            if p.nonzero and not values[p.name]:
                raise CatalogError(f"{p.name} must be nonzero")
        return values

    def build(self, given: Mapping[str, object] | None = None) -> StructurePresentation:
        values = self.resolve(given)
        pres = self.builder(values)
        pres.name = self.name
        return pres


def _coerce(spec: ParamSpec, v):
    if spec.domain == "int":
        if isinstance(v, GaussianRational):
            if not v.is_real() or v.re.denominator != 1:
                raise CatalogError(f"{spec.name} must be an integer")
            return int(v.re)
        try:
            return int(str(v).strip()) if not isinstance(v, int) else v
        except ValueError:
            raise CatalogError(f"{spec.name} must be an integer") from None
    if isinstance(v, str):
        try:
            z = parse_scalar(v)
        except ValueError as exc:
            raise CatalogError(f"{spec.name}: {exc}") from None
    elif isinstance(v, GaussianRational):
        z = v
    elif isinstance(v, float):
        raise CatalogError(f"{spec.name}: floating-point values are not exact")
    else:
        z = GaussianRational(Fraction(v))
    if spec.domain == "real" and not z.is_real():
        raise CatalogError(f"{spec.name} must be real")
    return z


def parse_params(items) -> dict:
    """``["a=1", "b=1-3i,c=2"]`` -> ``{"a": "1", "b": "1-3i", "c": "2"}``."""
    out = {}
    for item in items or ():
        for part in _split_top(item):
            if not part.strip():
                continue
            if "=" not in part:
                raise CatalogError(f"expected name=value, got {part!r}")
            k, v = part.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def _split_top(text: str):
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def _eq(n: int, terms) -> Form:
    """Sum of ``coeff * monomial`` with monomials in the text syntax (factor order respected)."""
    out = Form.zero(n)
    for c, mono in terms:
        if c:
            out = out + parse_form(mono, n) * c
    return out


def _pres(n, eqs: dict[int, list]) -> StructurePresentation:
    return StructurePresentation(n, [_eq(n, eqs.get(k, [])) for k in range(1, n + 1)])


# --- families --------------------------------------------------------------------

_FAM5_NAMES = (
    [f"a{k}" for k in range(1, 8)] + [f"b{k}" for k in range(1, 7)] + [f"c{k}" for k in range(1, 6)] + [f"d{k}" for k in range(1, 5)]
)

_FAM5_MONOS = {
    "a1": "e1^e2", "a2": "e1^e3", "a3": "e1^e4", "a4": "e1^~e1", "a5": "e1^~e2", "a6": "e1^~e3", "a7": "e1^~e4",
    "b1": "e2^e3", "b2": "e2^e4", "b3": "e2^~e1", "b4": "e2^~e2", "b5": "e2^~e3", "b6": "e2^~e4",
    "c1": "e3^e4", "c2": "e3^~e1", "c3": "e3^~e2", "c4": "e3^~e3", "c5": "e3^~e4",
    "d1": "e4^~e1", "d2": "e4^~e2", "d3": "e4^~e3", "d4": "e4^~e4",
}  # fmt: skip


def _fam5(p):
    return _pres(5, {5: [(p[k], _FAM5_MONOS[k]) for k in _FAM5_NAMES]})


def _fam5_literal(p):
    monos = dict(_FAM5_MONOS, a3="e1^e3")
    return _pres(5, {5: [(p[k], monos[k]) for k in _FAM5_NAMES]})


def _fam5_blowup(p):
    return _pres(
        5,
        {
            5: [
                (-p["a1"], "e1^e2"),
                (p["a4"], "e1^~e1"),
                (p["b4"], "e2^~e2"),
                (-p["c1"], "e3^e4"),
                (p["c4"], "e3^~e3"),
                (p["d4"], "e4^~e4"),
            ]
        },
    )


def _y3(p):
    return _pres(3, {3: [(p["a4"], "e1^~e1"), (p["c4"], "e2^~e2")]})


def _almost4(p):
    return _pres(
        4,
        {
            4: [
                (p["a1"], "e1^e2"),
                (p["a2"], "e2^e3"),
                (p["a3"], "e1^~e1"),
                (p["a4"], "e2^~e2"),
                (p["a5"], "e3^~e3"),
                (p["a6"], "~e1^~e2"),
                (p["a7"], "~e2^~e3"),
            ]
        },
    )


def _fps6(p):
    return _pres(
        3,
        {
            3: [
                (p["A"], "~e1^e2"),
                (p["B"], "~e2^e2"),
                (p["C"], "e1^~e1"),
                (p["D"], "e1^~e2"),
                (p["E"], "e1^e2"),
            ]
        },
    )


_GEN_DEFAULT = {"c11": 1, "c22": 1, "c12": 1, "c21": 1, "c33": I}


def _gen_n(p):
    n = p["n"]
    if not 2 <= n <= 9:
        raise CatalogError("n must be between 2 and 9")
    coeffs = {}
    explicit = {k: v for k, v in p.items() if k != "n"}
    if not explicit and n == 4:
        explicit = {k: parse_scalar(str(v)) if not isinstance(v, GaussianRational) else v for k, v in _GEN_DEFAULT.items()}
    for k, v in explicit.items():
        if len(k) != 3 or k[0] != "c" or not k[1:].isdigit():
            raise CatalogError(f"gen_n coefficients are named c<i><j>, got {k!r}")
        i, j = int(k[1]), int(k[2])
        if not (1 <= i < n and 1 <= j < n):
            raise CatalogError(f"{k}: indices must lie in 1..{n - 1}")
        coeffs[(i, j)] = v
    return _pres(n, {n: [(c, f"e{i}^~e{j}") for (i, j), c in sorted(coeffs.items())]})


def _kt_kt(p):
    return _pres(4, {2: [(p["A"], "e1^~e1")], 4: [(p["B"], "e3^~e3")]})


def _inoue_pair(alpha, beta, lo):
    """d eta^lo and d eta^{lo+1} of one Inoue factor on indices lo, lo+1."""
    k = (alpha - I * beta) / (2 * I)
    a, b = lo, lo + 1
    return {
        a: [(k, f"e{a}^e{b}"), (-k, f"e{a}^~e{b}")],
        b: [(-I * alpha, f"e{b}^~e{b}")],
    }


def _inoue_inoue(p):
    eqs = _inoue_pair(p["alpha"], p["beta"], 1)
    eqs.update(_inoue_pair(p["gamma"], p["delta"], 3))
    return _pres(4, eqs)


def _inoue_kt(p):
    eqs = _inoue_pair(p["alpha"], p["beta"], 1)
    eqs[4] = [(I / 2, "e3^~e3")]
    return _pres(4, eqs)


def _fam4(p):
    return _pres(4, {3: [(p["A"], "e2^~e1")], 4: [(p["B1"], "e1^e2"), (p["B2"], "e1^~e1"), (p["B3"], "e2^~e2")]})


def _abelian(p):
    n = p["n"]
    if not 1 <= n <= 8:
        raise CatalogError("n must be between 1 and 8")
    return _pres(n, {})


def _c(name, default=0, domain="complex", nonzero=False):
    return ParamSpec(name, default, domain, nonzero)


_ENTRIES = [
    CatalogEntry(
        "fam5",
        tuple(_c(k) for k in _FAM5_NAMES),
        _fam5,
        """Complex dimension 5, two-step nilpotent: d eta^j = 0 for j <= 4 and
d eta^5 a combination of the 22 monomials below (complex-structure-equations
of the astheno-Kaehler family).  Here a3 multiplies eta^{14}; fam5_literal
keeps the variant where a2 and a3 both sit on eta^{13}.

Reference expansion:
  d5 = a1*e1^e2 + a2*e1^e3 + a3*e1^e4 + a4*e1^~e1 + a5*e1^~e2 + a6*e1^~e3 + a7*e1^~e4 + b1*e2^e3 + b2*e2^e4 + b3*e2^~e1 + b4*e2^~e2 + b5*e2^~e3 + b6*e2^~e4 + c1*e3^e4 + c2*e3^~e1 + c3*e3^~e2 + c4*e3^~e3 + c5*e3^~e4 + d1*e4^~e1 + d2*e4^~e2 + d3*e4^~e3 + d4*e4^~e4
""",
    ),
    CatalogEntry(
        "fam5_literal",
        tuple(_c(k) for k in _FAM5_NAMES),
        _fam5_literal,
        """fam5 variant in which a2 and a3 both multiply eta^{13}.

Reference expansion:
  d5 = a1*e1^e2 + a2*e1^e3 + a3*e1^e3 + a4*e1^~e1 + a5*e1^~e2 + a6*e1^~e3 + a7*e1^~e4 + b1*e2^e3 + b2*e2^e4 + b3*e2^~e1 + b4*e2^~e2 + b5*e2^~e3 + b6*e2^~e4 + c1*e3^e4 + c2*e3^~e1 + c3*e3^~e2 + c4*e3^~e3 + c5*e3^~e4 + d1*e4^~e1 + d2*e4^~e2 + d3*e4^~e3 + d4*e4^~e4
""",
    ),
    CatalogEntry(
        "fam5_blowup",
        (_c("a1", "-1-3i"), _c("a4", 1), _c("b4", 1), _c("c1", -4), _c("c4", 2), _c("d4", 2)),
        _fam5_blowup,
        """The 5-dimensional nilmanifold used for the blowup construction, from the
group law on C^5: note the minus signs on a1 and c1, which differ from fam5.
Defaults are the constants a1 = -1-3i, a4 = 1, b4 = 1, c1 = -4, c4 = 2, d4 = 2.

Reference expansion:
  d5 = -1*a1*e1^e2 + a4*e1^~e1 + b4*e2^~e2 - 1*c1*e3^e4 + c4*e3^~e3 + d4*e4^~e4
""",
    ),
    CatalogEntry(
        "y3",
        (_c("a4", 1), _c("c4", 2)),
        _y3,
        """The 3-dimensional submanifold Y of fam5_blowup, in the coframe
(eta^1, eta^3, eta^5) renamed (e1, e2, e3).

Reference expansion:
  d3 = a4*e1^~e1 + c4*e2^~e2
""",
    ),
    CatalogEntry(
        "almost4",
        tuple(_c(f"a{k}", v) for k, v in zip(range(1, 8), (1, 1, 0, 0, 0, 1, -1))),
        _almost4,
        """Almost complex 4-dimensional family (psi^1..psi^4 written e1..e4).  Not
integrable whenever (a6, a7) != (0, 0).  a7 multiplies psi^{2bar 3bar} (a
psi^{2bar 2bar} term would vanish identically).

Reference expansion:
  d4 = a1*e1^e2 + a2*e2^e3 + a3*e1^~e1 + a4*e2^~e2 + a5*e3^~e3 + a6*~e1^~e2 + a7*~e2^~e3
""",
        integrable_expected=lambda p: not p["a6"] and not p["a7"],
    ),
    CatalogEntry(
        "fps6",
        (_c("A", 0), _c("B", 1), _c("C", "i"), _c("D", 0), _c("E", 0)),
        _fps6,
        """Complex 3-folds with d alpha^1 = d alpha^2 = 0 and d alpha^3 in the span below.
Invariant metrics are SKT exactly when |A|^2 + |D|^2 + |E|^2 + 2 Re(conj(B) C) = 0.

Reference expansion:
  d3 = A*~e1^e2 + B*~e2^e2 + C*e1^~e1 + D*e1^~e2 + E*e1^e2
""",
    ),
    CatalogEntry(
        "gen_n",
        (_c("n", 4, "int"),),
        _gen_n,
        """d eta^i = 0 for i < n and d eta^n = sum c<i><j> eta^i ^ etabar^j over i, j < n.
Coefficients are passed as c11, c12, ...; with n = 4 and none given the
instance c11 = c22 = c12 = c21 = 1, c33 = i is used, which is SKT.

Reference expansion (n = 4 default):
  d4 = e1^~e1 + e2^~e2 + e1^~e2 + e2^~e1 + (0,1)*e3^~e3
""",
        open_params=True,
    ),
    CatalogEntry(
        "kt_kt",
        (_c("A", 1, nonzero=True), _c("B", 1, nonzero=True)),
        _kt_kt,
        """Product of two primary Kodaira surfaces.

Reference expansion:
  d2 = A*e1^~e1
  d4 = B*e3^~e3
""",
    ),
    CatalogEntry(
        "inoue_inoue",
        (_c("alpha", 1, "real", True), _c("beta", 0, "real"), _c("gamma", 1, "real", True), _c("delta", 0, "real")),
        _inoue_inoue,
        """Product of two Inoue surfaces of type S_M (solvable, not nilpotent).
d eta^3 mirrors d eta^1 with (gamma, delta): d eta^3 = k eta^{34} - k eta^{3 4bar},
k = (gamma - i delta)/(2i).

Reference expansion:
  d1 = (0,-1/2)*alpha*e1^e2 - 1/2*beta*e1^e2 + (0,1/2)*alpha*e1^~e2 + 1/2*beta*e1^~e2
  d2 = (0,-1)*alpha*e2^~e2
  d3 = (0,-1/2)*gamma*e3^e4 - 1/2*delta*e3^e4 + (0,1/2)*gamma*e3^~e4 + 1/2*delta*e3^~e4
  d4 = (0,-1)*gamma*e4^~e4
""",
    ),
    CatalogEntry(
        "inoue_kt",
        (_c("alpha", 1, "real", True), _c("beta", 0, "real")),
        _inoue_kt,
        """Product of an Inoue surface of type S_M and a primary Kodaira surface.

Reference expansion:
  d1 = (0,-1/2)*alpha*e1^e2 - 1/2*beta*e1^e2 + (0,1/2)*alpha*e1^~e2 + 1/2*beta*e1^~e2
  d2 = (0,-1)*alpha*e2^~e2
  d4 = (0,1/2)*e3^~e3
""",
    ),
    CatalogEntry(
        "fam4",
        (_c("A", 1, nonzero=True), _c("B1", 0), _c("B2", 1), _c("B3", 1)),
        _fam4,
        """Indecomposable 4-dimensional family with
d eta^4 = B1 eta^{12} + B2 eta^{1 1bar} + B3 eta^{2 2bar}.  A variant placing B1 on
eta^{1 1bar} too would merge B1 and B2 into one parameter, so B1 stays on eta^{12}.
The diagonal metric is SKT iff
|A|^2 + |B1|^2 = 2 Re(B2 conj(B3)).

Reference expansion:
  d3 = A*e2^~e1
  d4 = B1*e1^e2 + B2*e1^~e1 + B3*e2^~e2
""",
    ),
    CatalogEntry(
        "abelian",
        (_c("n", 2, "int"),),
        _abelian,
        """Abelian Lie algebra: every d eta^i vanishes.

Reference expansion:
""",
    ),
]

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


def catalog_names() -> list[str]:
    return sorted(CATALOG)


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise CatalogError(f"unknown catalog entry {name!r}; available: {', '.join(catalog_names())}") from None


def catalog(name: str, params: Mapping[str, object] | None = None, **kw) -> StructurePresentation:
    """Build and validate the named presentation.  Parameters may be ints, Fractions, Q(i) values or strings."""
    given = dict(params or {})
    given.update(kw)
    entry = get_entry(name)
    pres = entry.build(given)
    pres.require_valid()
    return pres
