"""Eigenvalue inequality toolkit."""

from ._core import (
    CatalogInputError,
    ConfigError,
    DomainError,
    ProblemKind,
    Shape,
    Spectrum,
    bessel_zero,
    buckling_ball,
    c_constant,
    catalog,
    chain_check,
    clamped_ball,
    convergence_study,
    d_constant,
    d_constant_result,
    dirichlet_ball,
    evaluate_suite,
    grid_spectrum,
    j_curve,
    neumann_ball,
    rectangle_spectrum,
    verify,
)

__version__ = "0.1.0"
