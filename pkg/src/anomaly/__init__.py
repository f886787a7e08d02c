"""Exact verification of modular anomaly-cancellation identities.

The package reconstructs the characteristic q-series of spin, spin with
auxiliary bundle, and spin-c with line bundle settings along two independent
routes (lambda-ring theta-power bundles and Jacobi theta quotients), fits
them against Eisenstein basis forms, verifies the identity catalog as exact
polynomial identities, and extracts the divisibility moduli of the index
corollaries.  All arithmetic is exact over the rationals.
"""

from .algebra import (
    GeneratorTable,
    GradedPoly,
    exp_truncated,
    log_truncated,
    pontryagin_table,
    power_sum_in_pontryagin,
    top_component,
)
from .bundles import (
    BundleQSeries,
    VirtualBundle,
    aux_complexification,
    line_real_complexification,
    tangent_complexification,
    theta_series,
)
from .genera import ahat_form, ahat_genus, aux_bundle_factor, multiplicative_genus_eval, spinor_ch
from .qseries import (
    NonUnitError,
    PolyRing,
    QHalfSeries,
    RATIONALS,
    RationalRing,
    RingMismatchError,
    eisenstein,
    modular_basis,
    qseries_exp,
    tau_shift_half,
)
from .theta import (
    TwoVarSeries,
    jacobi_identity_residual,
    line_quotient_evaluation,
    q_series_via_theta,
    symmetric_quotient_product,
    theta_quotient,
)
from .verifier import (
    CASE_DIMS,
    CASES,
    COROLLARIES,
    IDENTITIES,
    CaseReport,
    CaseSpec,
    FitResult,
    IdentityResult,
    ManifoldData,
    ManifoldDataError,
    NonIntegralSolveError,
    RouteMismatchError,
    UnknownIdentityError,
    assemble_Q,
    bundle_route_integrand,
    corollaries_for,
    corollary_modulus,
    divisibility_modulus,
    eisenstein_fit,
    evaluate_manifold,
    evaluate_report,
    identities_for,
    impose_condition,
    index_relation_forms,
    report_jsonable,
    run_case,
    theta_route_integrand,
    verify_identity,
    verify_identity_as_printed,
)

__version__ = "0.1.0"

__all__ = [
    "GeneratorTable",
    "GradedPoly",
    "pontryagin_table",
    "power_sum_in_pontryagin",
    "top_component",
    "exp_truncated",
    "log_truncated",
    "VirtualBundle",
    "BundleQSeries",
    "tangent_complexification",
    "aux_complexification",
    "line_real_complexification",
    "theta_series",
    "ahat_genus",
    "ahat_form",
    "spinor_ch",
    "aux_bundle_factor",
    "multiplicative_genus_eval",
    "RationalRing",
    "PolyRing",
    "RATIONALS",
    "QHalfSeries",
    "RingMismatchError",
    "NonUnitError",
    "qseries_exp",
    "tau_shift_half",
    "eisenstein",
    "modular_basis",
    "TwoVarSeries",
    "theta_quotient",
    "jacobi_identity_residual",
    "symmetric_quotient_product",
    "line_quotient_evaluation",
    "q_series_via_theta",
    "CASES",
    "CASE_DIMS",
    "CaseSpec",
    "CaseReport",
    "FitResult",
    "IdentityResult",
    "IDENTITIES",
    "COROLLARIES",
    "RouteMismatchError",
    "UnknownIdentityError",
    "NonIntegralSolveError",
    "ManifoldData",
    "ManifoldDataError",
    "assemble_Q",
    "bundle_route_integrand",
    "theta_route_integrand",
    "impose_condition",
    "eisenstein_fit",
    "verify_identity",
    "verify_identity_as_printed",
    "identities_for",
    "corollaries_for",
    "index_relation_forms",
    "divisibility_modulus",
    "corollary_modulus",
    "evaluate_manifold",
    "evaluate_report",
    "run_case",
    "report_jsonable",
]
