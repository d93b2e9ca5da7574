"""Exact rational eigenfunctions of singular ball operators.

The package constructs, in exact rational arithmetic, the polynomial
eigenfunctions of the second-order operator

    L_mu = Lap - <x, grad>^2 - (2 mu + d) <x, grad>

on the unit ball in d variables, including the singular weight parameters
mu = -1, -2, ..., and verifies every eigenvalue, orthogonality, and
dimension claim with zero numerical tolerance.
"""

from .polyalg import (
    Exponent,
    Polynomial,
    exponents_of_degree,
    exponents_up_to_degree,
    gradient,
    normsq,
    one_minus_normsq,
    one_minus_normsq_times,
)
from .quadsym import (
    InnerProductSpec,
    ball_integral,
    ball_weighted_monomial_integral,
    format_rational,
    gram_matrix,
    gram_to_strings,
    ip_bilap,
    ip_classical,
    ip_delta_form,
    ip_grad,
    ip_sphere,
    ip_star,
    sphere_integral,
    sphere_monomial_integral,
    sphere_restricts_to_zero,
    star_matching_weight,
    star_radial_part,
)
from .bases import (
    BasisFamily,
    FamilyElement,
    HarmonicBasis,
    SingularCoefficientError,
    family_by_kind,
    harmonic_basis,
    harmonic_dim,
    homogeneous_dim,
    jacobi,
    jacobi_radial_coeffs,
    jacobi_value,
    pochhammer,
    shell_coefficient,
    singularity_report,
    total_dim,
    u_basis,
    vdelta_basis,
    vminus2_basis,
    wminus1_basis,
    wmu_basis,
)
from .spectral import (
    EigenReport,
    GramReport,
    QuadraticDefectReport,
    SymmetryReport,
    apply_L,
    check_eigen,
    check_orthogonality,
    check_symmetry,
    eigenvalue,
    harmonic_eigen_check,
    natural_mu,
    operator_matrix,
    power_identity_residual,
    quadratic_defect_report,
    random_polynomial,
    shift_identity_residual,
    star_middle_shell_restriction_check,
)

__version__ = "0.1.0"
