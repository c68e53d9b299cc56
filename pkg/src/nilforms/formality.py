"""Geometric Bott-Chern formality of an invariant metric.

A metric is geometrically-Bott-Chern-formal when wedge products of Bott-Chern
harmonic forms are again harmonic.  The product of two harmonic forms is
always d-closed, so only ``(ddbar)^* (alpha ^ beta) = 0`` has to be tested; up to
the star isomorphism this is ``ddbar * conj(alpha ^ beta) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import harmonic_basis
from .forms import Form, conjugate, wedge
from .metrics import HermitianMetric, hodge_star
from .operators import ddbar, operator_matrix
from .structure import StructurePresentation
from .textio import format_form

__all__ = ["FormalityReport", "is_geometrically_BC_formal", "ddbar_vanishes_on_invariants", "bc_harmonic_algebra_basis"]


@dataclass(frozen=True)
class FormalityReport:
    metric: HermitianMetric
    formal: bool
    checked_pairs: int
    first_failure: tuple | None = None  # (alpha, beta, residual)

    def to_json(self) -> dict:
        out = {"formal": self.formal, "checked_pairs": self.checked_pairs, "metric": self.metric.to_json()}
        if self.first_failure is not None:
            a, b, r = self.first_failure
            out["first_failure"] = {"alpha": format_form(a), "beta": format_form(b), "residual": format_form(r)}
        return out


def bc_harmonic_algebra_basis(pres: StructurePresentation, H: HermitianMetric) -> list[Form]:
    """Bott-Chern harmonic bases of every bidegree, concatenated (degree 0 first)."""
    n = pres.n
    out = []
    for p in range(n + 1):
        for q in range(n + 1):
            out.extend(harmonic_basis(pres, "BottChern", p, q, H).basis)
    return out


def is_geometrically_BC_formal(pres: StructurePresentation, H: HermitianMetric, stop_at_first: bool = True) -> FormalityReport:
    """Test ``ddbar star(conj(alpha ^ beta)) = 0`` over all pairs of harmonic basis elements."""
    pres.require_integrable()
    hb = [h for h in bc_harmonic_algebra_basis(pres, H) if h.degrees() != {0}]
    checked = 0
    failure = None
    for i, a in enumerate(hb):
        for b in hb[i:]:
            prod = wedge(a, b)
            checked += 1
            if not prod:
                continue
            if pres.d(prod):
                raise AssertionError("product of d-closed forms is not d-closed")
            res = ddbar(pres, hodge_star(conjugate(prod), H))
            if res and failure is None:
                failure = (a, b, res)
                if stop_at_first:
                    return FormalityReport(H, False, checked, failure)
    return FormalityReport(H, failure is None, checked, failure)


def ddbar_vanishes_on_invariants(pres: StructurePresentation) -> bool:
    """Whether the ddbar matrix is zero in every bidegree."""
    pres.require_integrable()
    n = pres.n
    return all(operator_matrix(pres, "ddbar", p, q).is_zero() for p in range(n) for q in range(n))
