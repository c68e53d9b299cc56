"""Lie algebras with (almost-)complex structure given by structure equations.

A presentation fixes ``d eta^i`` for the (1,0)-coframe; ``d etabar^i`` is always
the conjugate and is never taken as input.  Everything else in the package
(operators, cohomology, metrics) is driven by the cached derivation here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .forms import Form, bidegree_project, conjugate, indices_of, mono_wedge

__all__ = ["StructurePresentation", "ValidationReport", "validate", "InvalidPresentation"]


class InvalidPresentation(ValueError):
    """Raised when a presentation is not a Lie algebra (d^2 != 0) or is malformed."""


@dataclass(frozen=True)
class ValidationReport:
    jacobi_ok: bool
    integrable: bool
    salamon_filtration_ok: bool
    nilpotent: bool
    salamon_order: tuple[int, ...] | None = None
    diagnostics: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.jacobi_ok

    def to_json(self) -> dict:
        return {
            "jacobi_ok": self.jacobi_ok,
            "integrable": self.integrable,
            "salamon_filtration_ok": self.salamon_filtration_ok,
            "nilpotent": self.nilpotent,
            "salamon_order": list(self.salamon_order) if self.salamon_order else None,
            "diagnostics": list(self.diagnostics),
        }


class StructurePresentation:
    """Complex dimension ``n`` plus ``d eta^1 .. d eta^n`` as 2-forms."""

    def __init__(self, n: int, d_eta: Sequence[Form], name: str | None = None):
        if len(d_eta) != n:
            raise InvalidPresentation(f"expected {n} structure equations, got {len(d_eta)}")
        for k, f in enumerate(d_eta, 1):
            if f.n != n:
                raise InvalidPresentation(f"d eta^{k} lives in dimension {f.n}, not {n}")
            if f and f.degrees() != {2}:
                raise InvalidPresentation(f"d eta^{k} must be a 2-form")
        self.n = n
        self.name = name
        self.d_eta = tuple(d_eta)
        self.d_etabar = tuple(conjugate(f) for f in self.d_eta)
        self.integrable = all(not bidegree_project(f, 0, 2) for f in self.d_eta)
        self._mono_cache: dict = {}
        self._matrix_cache: dict = {}
        self._report: ValidationReport | None = None

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<StructurePresentation{label} n={self.n}>"

    def __eq__(self, other):
        if not isinstance(other, StructurePresentation):
            return NotImplemented
        return self.n == other.n and self.d_eta == other.d_eta

    def __hash__(self):
        return hash((self.n, self.d_eta))

    # the differential ----------------------------------------------------

    def differential_on_generators(self) -> dict[str, Form]:
        """``{"eta1": d eta^1, ..., "etabar1": d etabar^1, ...}``."""
        out = {}
        for k in range(self.n):
            out[f"eta{k + 1}"] = self.d_eta[k]
        for k in range(self.n):
            out[f"etabar{k + 1}"] = self.d_etabar[k]
        return out

    def d_monomial(self, m) -> dict:
        """``d`` of a canonical monomial as a term dict (cached).

        With the factors ``theta_0 .. theta_{k-1}`` in canonical order,
        ``d(mono) = sum_j (-1)^j d(theta_j) ^ (mono without theta_j)``; the
        2-form ``d(theta_j)`` commutes past the first ``j`` factors.
        """
        hit = self._mono_cache.get(m)
        if hit is not None:
            return hit
        unb, bar = m
        out: dict = {}
        pos = 0
        factors = [(k, False) for k in indices_of(unb)] + [(k, True) for k in indices_of(bar)]
        for k, barred in factors:
            bit = 1 << (k - 1)
            rest = (unb, bar & ~bit) if barred else (unb & ~bit, bar)
            df = self.d_etabar[k - 1] if barred else self.d_eta[k - 1]
            sign = -1 if pos & 1 else 1
            for m1, c1 in df.items():
                r = mono_wedge(m1, rest)
                if r is None:
                    continue
                s, m2 = r
                c = c1 if s * sign > 0 else -c1
                prev = out.get(m2)
                if prev is not None:
                    c = prev + c
                    if not c:
                        del out[m2]
                        continue
                out[m2] = c
            pos += 1
        self._mono_cache[m] = out
        return out

    def d(self, a: Form) -> Form:
        if a.n != self.n:
            raise ValueError(f"dimension mismatch: form n={a.n}, presentation n={self.n}")
        out: dict = {}
        for m, c in a.items():
            for m2, c2 in self.d_monomial(m).items():
                v = c * c2
                prev = out.get(m2)
                if prev is not None:
                    v = prev + v
                    if not v:
                        del out[m2]
                        continue
                out[m2] = v
        return Form._trusted(self.n, out)

    # validation ----------------------------------------------------------

    def validate(self) -> ValidationReport:
        if self._report is None:
            self._report = validate(self)
        return self._report

    def require_valid(self) -> "StructurePresentation":
        rep = self.validate()
        if not rep.jacobi_ok:
            raise InvalidPresentation("d^2 != 0: " + "; ".join(rep.diagnostics))
        return self

    def require_integrable(self) -> "StructurePresentation":
        self.require_valid()
        if not self.integrable:
            raise InvalidPresentation("the almost complex structure is not integrable")
        return self


def _in_ideal(f: Form, mask: int) -> bool:
    """Whether ``f`` lies in the ideal generated by the unbarred coframe elements in ``mask``."""
    return all(m[0] & mask for m in f.terms)


def salamon_order(pres: StructurePresentation) -> tuple[int, ...] | None:
    """An ordering with ``d eta^{k+1}`` in the ideal of the earlier ones, if one exists.

    Membership is monotone in the generating set, so taking any admissible
    generator at each step never blocks a later one.
    """
    used = 0
    order = []
    remaining = list(range(1, pres.n + 1))
    while remaining:
        for k in remaining:
            if _in_ideal(pres.d_eta[k - 1], used):
                order.append(k)
                used |= 1 << (k - 1)
                remaining.remove(k)
                break
        else:
            return None
    return tuple(order)


def validate(pres: StructurePresentation) -> ValidationReport:
    diags = []
    jacobi = True
    for label, df in pres.differential_on_generators().items():
        dd = pres.d(df)
        if dd:
            jacobi = False
            diags.append(f"d(d {label}) = {dd}")
    for k, f in enumerate(pres.d_eta, 1):
        part = bidegree_project(f, 0, 2)
        if part:
            diags.append(f"d eta^{k} has a (0,2) part {part}")
    order = salamon_order(pres)
    if order is None:
        diags.append("no coframe ordering satisfies the nilpotent filtration")
    return ValidationReport(
        jacobi_ok=jacobi,
        integrable=pres.integrable,
        salamon_filtration_ok=order is not None,
        nilpotent=order is not None,
        salamon_order=order,
        diagnostics=tuple(diags),
    )


def bidegree_components(f: Form) -> dict[tuple[int, int], Form]:
    out = {}
    for bd in sorted(f.bidegrees()):
        out[bd] = bidegree_project(f, *bd)
    return out
