"""Metric conditions (Kaehler, balanced, SKT, astheno-Kaehler, Gauduchon) and the
p-pluriclosed obstruction test.

Every check returns the exact residual form; a condition holds iff its residual
vanishes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .forms import Form, bidegree_project, indices_of, sigma_real
from .metrics import HermitianMetric, fundamental_form, fundamental_power
from .operators import ddbar, ddc
from .scalars import GaussianRational
from .structure import StructurePresentation
from .textio import format_form, format_monomial

__all__ = [
    "ConditionReport",
    "ObstructionResult",
    "check_k_gauduchon",
    "check_balanced",
    "check_kahler",
    "check_condition",
    "check_conditions",
    "condition_name",
    "pluriclosed_obstruction",
    "CONDITION_NAMES",
    "condition_value_fps",
]

CONDITION_NAMES = ("kahler", "balanced", "skt", "astheno", "gauduchon", "k-gauduchon(k)", "p-pluriclosed-obstruction(p)")


@dataclass(frozen=True)
class ConditionReport:
    name: str
    holds: bool
    residual: Form
    operator: str = ""

    def __post_init__(self):
        if self.holds != (not self.residual):
            raise AssertionError("holds must match the vanishing of the residual")

    def to_json(self) -> dict:
        return {"condition": self.name, "holds": self.holds, "operator": self.operator, "residual": format_form(self.residual)}


def _check_dims(pres, H):
    if H.n != pres.n:
        raise ValueError(f"metric has dimension {H.n}, presentation has {pres.n}")


def condition_name(n: int, k: int) -> str:
    if k == 1:
        return "skt"
    if k == n - 2:
        return "astheno"
    if k == n - 1:
        return "gauduchon"
    return f"k-gauduchon({k})"


def check_k_gauduchon(pres: StructurePresentation, H: HermitianMetric, k: int, name: str | None = None) -> ConditionReport:
    """Residual ``ddbar(F^k)``: k = 1 is SKT, k = n-2 astheno-Kaehler, k = n-1 Gauduchon."""
    pres.require_integrable()
    _check_dims(pres, H)
    n = pres.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}, got {k}")
    res = ddbar(pres, fundamental_power(H, k))
    return ConditionReport(name or condition_name(n, k), not res, res, f"ddbar(F^{k})")


def check_balanced(pres: StructurePresentation, H: HermitianMetric) -> ConditionReport:
    _check_dims(pres, H)
    res = pres.d(fundamental_power(H, pres.n - 1))
    return ConditionReport("balanced", not res, res, f"d(F^{pres.n - 1})")


def check_kahler(pres: StructurePresentation, H: HermitianMetric) -> ConditionReport:
    _check_dims(pres, H)
    res = pres.d(fundamental_form(H))
    return ConditionReport("kahler", not res, res, "d(F)")


_K_RE = re.compile(r"^k-gauduchon\((\d+)\)$")


def check_condition(pres: StructurePresentation, H: HermitianMetric, name: str) -> ConditionReport:
    """Dispatch on a condition name such as ``skt`` or ``k-gauduchon(3)``."""
    key = name.strip().lower()
    n = pres.n
    if key == "kahler":
        return check_kahler(pres, H)
    if key == "balanced":
        return check_balanced(pres, H)
    if key == "skt":
        return check_k_gauduchon(pres, H, 1, "skt")
    if key == "astheno":
        if n < 3:
            raise ValueError("astheno-Kaehler needs n >= 3")
        return check_k_gauduchon(pres, H, n - 2, "astheno")
    if key in ("gauduchon", "standard"):
        return check_k_gauduchon(pres, H, n - 1, "gauduchon")
    m = _K_RE.match(key)
    if m:
        k = int(m.group(1))
        return check_k_gauduchon(pres, H, k, f"k-gauduchon({k})")
    raise ValueError(f"unknown condition {name!r}; expected one of {', '.join(CONDITION_NAMES)}")


def check_conditions(pres, H, names) -> list[ConditionReport]:
    return [check_condition(pres, H, nm) for nm in names]


# obstruction ---------------------------------------------------------------------


@dataclass(frozen=True)
class ObstructionResult:
    """Outcome of the p-pluriclosed obstruction test.

    ``decomposition`` lists ``(I, c_I)`` with ``beta = sum c_I sigma_m eta^I ^ conj(eta^I)``.
    ``ray`` is ``c_1`` for the first index; every ``c_I / ray`` is a positive rational
    when the verdict is ``obstructed``.  ``strict`` records whether the ``c_I`` are
    themselves real of one sign.
    """

    verdict: str
    p: int
    beta: Form
    decomposition: tuple = field(default=())
    ray: GaussianRational | None = None
    strict: bool = False
    reason: str = ""

    @property
    def obstructed(self) -> bool:
        return self.verdict == "obstructed"

    def to_json(self) -> dict:
        from .scalars import format_scalar

        out = {
            "condition": f"p-pluriclosed-obstruction({self.p})",
            "verdict": self.verdict,
            "beta": format_form(self.beta),
            "strict": self.strict,
            "reason": self.reason,
            "decomposition": [
                {"psi": format_monomial((mask, 0)), "coefficient": format_scalar(c)} for mask, c in self.decomposition
            ],
        }
        if self.ray is not None:
            out["ray"] = format_scalar(self.ray)
        return out


def pluriclosed_obstruction(pres: StructurePresentation, alpha: Form, p: int) -> ObstructionResult:
    """Try to write ``(dd^c alpha)^{(n-p,n-p)}`` as a same-ray sum of ``sigma psi ^ conj(psi)``.

    The ``psi`` range over coordinate-simple (n-p,0)-forms ``eta^I``.  Works without
    integrability.  A non-diagonal term, a vanishing projection or coefficients off a
    common ray give ``inconclusive``.
    """
    n = pres.n
    m = n - p
    if not 0 <= p < n:
        raise ValueError(f"p must lie in 0..{n - 1}")
    degs = alpha.degrees()
    if degs and degs != {2 * n - 2 * p - 2}:
        raise ValueError(f"alpha must have degree {2 * n - 2 * p - 2}, got {sorted(degs)}")
    beta = bidegree_project(ddc(pres, alpha), m, m)
    if not beta:
        return ObstructionResult("inconclusive", p, beta, reason="projection of dd^c(alpha) vanishes")
    decomposition = []
    for mono, c in sorted(beta.items(), key=lambda kv: (indices_of(kv[0][0]), indices_of(kv[0][1]))):
        if mono[0] != mono[1]:
            return ObstructionResult("inconclusive", p, beta, reason=f"off-diagonal term {format_monomial(mono)}")
        unit = sigma_real(Form._trusted(n, {(mono[0], 0): GaussianRational(1)})).coefficient(mono)
        decomposition.append((mono[0], c / unit))
    ray = decomposition[0][1]
    for _, c in decomposition:
        r = c / ray
        if not r.is_real() or r.re <= 0:
            return ObstructionResult(
                "inconclusive", p, beta, tuple(decomposition), reason="coefficients do not share a common ray"
            )
    strict = ray.is_real()
    return ObstructionResult("obstructed", p, beta, tuple(decomposition), ray, strict)


def condition_value_fps(A, B, C, D, E) -> Fraction:
    """``|A|^2 + |D|^2 + |E|^2 + 2 Re(conj(B) C)`` for the fps6 family."""
    return A.abs2() + D.abs2() + E.abs2() + 2 * (B.conj() * C).re

