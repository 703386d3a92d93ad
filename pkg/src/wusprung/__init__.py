"""Exact and numerical analysis of the Wu-Sprung potential."""

from .asymptotics import asym_V, asym_x, lambert_w0
from .errors import ConvergenceError, DomainError, MultiValuedError
from .exact import OmegaPoly, TruncSeries
from .expansions import (
    case1_coefficients,
    case2_coefficients,
    eval_case1,
    eval_case2,
)
from .solver import (
    Regime,
    branches_at,
    classify,
    dxdV,
    forward_x,
    invert_V,
    principal_V,
    theta0_of_V0,
    theta_to_xV,
    v0_of_theta0,
)

__version__ = "0.1.0"
