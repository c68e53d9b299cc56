"""Exact computations with invariant forms on nilmanifolds.

Scalars live in Q(i); forms are sparse sums of ``eta^I ^ etabar^J``; every
linear-algebra step is exact.
"""

__version__ = "0.1.0"

from .scalars import GR, GaussianRational, I, ONE, ZERO, format_scalar, parse_scalar
from .forms import Form, bidegree_project, conjugate, is_real, power, sigma, sigma_real, wedge
from .structure import InvalidPresentation, StructurePresentation, ValidationReport, validate
from .operators import OPERATORS, OperatorMatrix, d, dc, ddbar, ddc, del_, delbar, mu, mubar, operator_matrix
from .metrics import (
    HermitianMetric,
    InvalidMetric,
    del_star,
    delbar_star,
    ddbar_star,
    fundamental_form,
    fundamental_power,
    hodge_star,
    inner_product,
    random_metric,
    volume_form,
)
from .cohomology import (
    CohomologyTable,
    HarmonicBasis,
    aeppli_breakdown,
    cohomology_dims,
    harmonic_basis,
    in_span,
    span_equal,
    subspace_membership,
)
from .special_metrics import (
    ConditionReport,
    ObstructionResult,
    check_balanced,
    check_condition,
    check_k_gauduchon,
    check_kahler,
    pluriclosed_obstruction,
)
from .massey import NO_SOLUTION, BCClass, MasseyCertificate, solve_ddbar_primitive, triple_abc, verify_certificate
from .formality import FormalityReport, ddbar_vanishes_on_invariants, is_geometrically_BC_formal
from .textio import ParseError, format_form, parse_form, parse_structure
from .catalog import CatalogError, catalog, catalog_names

parse_structure_file = parse_structure
