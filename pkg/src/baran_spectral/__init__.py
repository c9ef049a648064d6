"""Spectral geometry of pluripotential equilibrium measures on the ball,
simplex and sphere: metrics, curvature, geodesics, quadrature, orthogonal
bases diagonalising the Laplace-Beltrami operator, and the Baran inequality.
"""

from .domains import (
    BALL,
    SIMPLEX,
    SPHERE,
    ChartPoint,
    DomainError,
    DomainSpec,
    ball,
    simplex,
    sphere,
)
from .geometry import (
    MetricEval,
    baran_length,
    christoffel,
    collar_volume,
    einstein_constant,
    einstein_residual,
    equilibrium_density,
    geodesic_distance,
    geodesic_distance_shooting,
    geodesic_shoot,
    metric_eval,
    ricci,
)
from .orthopoly1d import (
    JacobiParams,
    Poly1D,
    chebyshev_eval,
    chebyshev_poly,
    monic_jacobi_eval,
    monic_jacobi_poly,
    poly_derivative,
    weighted_norm_sq,
)
from .polynomials import PolyN, random_polynomial
from .bases import (
    BasisFunction,
    MultiIndex,
    ball_basis_eval,
    ball_basis_norm_sq,
    ball_basis_poly,
    basis_function,
    basis_norm_sq,
    basis_poly,
    eigenvalue,
    enumerate_indices,
    simplex_basis_eval,
    simplex_basis_poly,
    simplex_jacobi_params,
    spherical_harmonic_eval,
    sphere_harmonic_basis,
    zonal_harmonic_eval,
)
from .quadrature import QuadratureRule, domain_rule, gauss_jacobi_rule, gram_matrix, inner_product
from .operators import (
    dirichlet_form,
    eigen_residual,
    lb_apply,
    lb_apply_ball,
    lb_apply_numeric,
    lb_apply_simplex,
)
from .spectral import (
    SpectralExpansion,
    baran_fuzz,
    baran_margin,
    evaluate_expansion,
    project,
    sobolev_sums,
)
from .sphere_extremal import (
    ComplexSpherePoint,
    equilibrium_constant,
    extremal_eval,
    hyperbolic_curve_point,
    imaginary_arc,
    surface_area,
    tangent_derivative,
)

__version__ = "0.1.0"
