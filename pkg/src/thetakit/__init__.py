"""thetakit: exact and high-precision tools for theta-series moments.

The package computes the cumulant and moment polynomials of the discrete
normal distribution in exact rational arithmetic, generates the associated
integer sequences, and verifies every closed form against independent
high-precision series oracles.
"""

from .exactalg import (
    BigRat,
    ConsistencyError,
    TriPoly,
    UniPoly,
    binomial,
    schett_raw,
    schett_reduced,
)
from .numkernel import (
    DEFAULT_DIGITS,
    DomainError,
    HPFloat,
    ModulusContext,
    agm,
    ellipE,
    ellipK,
    ellipK_series,
    gamma_quarter,
    hermite,
    hpf,
    jacobi_transform_residual,
    lemniscatic_context,
    make_context,
    pi,
    pow10,
    theta,
    theta0,
    theta3_product,
)
from .cumulants import (
    CumulantPoly,
    EisensteinValue,
    cumulant_eisenstein,
    cumulant_lambert,
    cumulant_poly,
    cumulant_symmetry_residual,
    cumulant_value,
    p_poly,
    symmetry_check_P,
)
from .moments import (
    ConjectureRow,
    MomentPoly,
    a_sequence,
    bell_moments,
    conjecture_check,
    d_sequence,
    dk_sequence,
    kappa_recurrence_check,
    moments_determinant,
    moments_from_cumulants,
    moments_partition,
    q_from_a,
    q_sequence,
    q_value,
)
from .combinatorics import (
    CandidateVerdict,
    CyclePeakProfile,
    ReconciliationReport,
    count_profiles,
    cycle_peaks,
    peak_numbers,
    reconcile_thm11,
)
from .verify import (
    VerificationReport,
    default_grid,
    parse_modulus,
    run_suite,
    series_moment,
    suite_tolerance,
    verify_dual_moment_relation,
    verify_jacobi_transform,
    verify_legendre,
    verify_lambert_schett,
    verify_phi_consistency,
    verify_romik11,
    verify_theorem1,
    verify_theorem3,
    verify_variance_symmetry,
)

__version__ = "0.1.0"

__all__ = [
    "BigRat",
    "CandidateVerdict",
    "ConjectureRow",
    "ConsistencyError",
    "CumulantPoly",
    "CyclePeakProfile",
    "DEFAULT_DIGITS",
    "DomainError",
    "EisensteinValue",
    "HPFloat",
    "ModulusContext",
    "MomentPoly",
    "ReconciliationReport",
    "TriPoly",
    "UniPoly",
    "VerificationReport",
    "a_sequence",
    "agm",
    "bell_moments",
    "binomial",
    "conjecture_check",
    "count_profiles",
    "cumulant_eisenstein",
    "cumulant_lambert",
    "cumulant_poly",
    "cumulant_symmetry_residual",
    "cumulant_value",
    "cycle_peaks",
    "d_sequence",
    "default_grid",
    "dk_sequence",
    "ellipE",
    "ellipK",
    "ellipK_series",
    "gamma_quarter",
    "hermite",
    "hpf",
    "jacobi_transform_residual",
    "kappa_recurrence_check",
    "lemniscatic_context",
    "make_context",
    "moments_determinant",
    "moments_from_cumulants",
    "moments_partition",
    "p_poly",
    "parse_modulus",
    "peak_numbers",
    "pi",
    "pow10",
    "q_from_a",
    "q_sequence",
    "q_value",
    "reconcile_thm11",
    "run_suite",
    "schett_raw",
    "schett_reduced",
    "series_moment",
    "suite_tolerance",
    "symmetry_check_P",
    "theta",
    "theta0",
    "theta3_product",
    "verify_dual_moment_relation",
    "verify_jacobi_transform",
    "verify_lambert_schett",
    "verify_legendre",
    "verify_phi_consistency",
    "verify_romik11",
    "verify_theorem1",
    "verify_theorem3",
    "verify_variance_symmetry",
]
