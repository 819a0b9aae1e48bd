"""Nörlund polynomials, sech^2 convolution densities and digamma identities.

The exact layer (:mod:`norlund.exact`) works over :class:`fractions.Fraction`;
numerical work goes through :mod:`norlund.kernels`, which uses the compiled
extension when it is importable and a numpy fallback otherwise.
"""

from .density import DensityMethod, MethodError, density
from .exact import (
    PI,
    PiScalar,
    Poly,
    bernoulli_numbers,
    bernoulli_poly,
    modified_norlund,
    norlund_poly,
)
from .hyperbolic import HyperExpr, eval_hyper, rho_closed_form, rho_from_recurrence
from .kernels import BACKEND
from .quadrature import QuadConfig, QuadResult, TailMode, integrate_interval, integrate_semi_infinite
from .report import VerificationReport
from .special import DomainError, digamma, hurwitz_zeta, polygamma
from .verify import REGISTRY, run_identity, run_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DensityMethod",
    "DomainError",
    "HyperExpr",
    "MethodError",
    "PI",
    "PiScalar",
    "Poly",
    "QuadConfig",
    "QuadResult",
    "REGISTRY",
    "TailMode",
    "VerificationReport",
    "bernoulli_numbers",
    "bernoulli_poly",
    "density",
    "digamma",
    "eval_hyper",
    "hurwitz_zeta",
    "integrate_interval",
    "integrate_semi_infinite",
    "modified_norlund",
    "norlund_poly",
    "polygamma",
    "rho_closed_form",
    "rho_from_recurrence",
    "run_identity",
    "run_suite",
]
