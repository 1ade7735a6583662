"""Laurent multiple orthogonal polynomials on the unit circle: exact
construction, two-point Hermite-Pade companions, identity verification and
the bridge to multiple orthogonal polynomials on the real line."""

from .core import (
    MultiIndexPair,
    SolveResult,
    alpha,
    beta,
    build_T,
    det_T,
    eta,
    gamma,
    heine_coefficients,
    heine_type_ii,
    heine_type_ii_star,
    is_normal,
    kappa_ell,
    phi,
    phi_star,
    rho,
    sigma,
    type_i,
    type_i_star,
    type_ii,
    type_ii_star,
    xi,
    xi_star,
)
from .errors import *  # noqa: F401,F403
from .hermite_pade import (
    ApproximantPair,
    OrderCertificate,
    approximant,
    certify_orders,
    delta,
    psi_type_ii,
    psi_type_ii_star,
    upsilon,
    upsilon_star,
)
from .laurent import LaurentPolynomial, LaurentVector
from .moments import (
    MINUS_ONE,
    CircleAtom,
    FunctionalSystem,
    LaurentMomentFunctional,
    RealMomentFunctional,
    caratheodory_series,
    from_atoms,
    from_moment_table,
    geometric,
    lebesgue,
    real_from_atoms,
    real_from_moments,
    szego_inverse,
    szego_map,
)
from .real_mop import (
    NNCoefficients,
    RealPolynomial,
    classical_geronimus_check,
    geronimus_check,
    nn_coefficients,
    real_system_of,
    real_type_i,
    real_type_ii,
    szego_polynomial_check,
)
from .relations import (
    IndexPath,
    VerificationReport,
    christoffel_darboux,
    enumerate_paths,
    verify_index,
)
from .scalars import GaussianRational, approx_equal, exact

__version__ = "0.1.0"
