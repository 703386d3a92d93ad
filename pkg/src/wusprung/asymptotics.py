"""Large-|x| behaviour: principal Lambert W and the leading-order approximant.

For large ``V`` the defining relation reduces to
``sqrt(V) ln(2V / (pi e^2)) = pi |x|``, whose exact solution is

    V = (pi x / 2)^2 / W0(sqrt(pi/2) |x| / e)^2

and does not depend on ``V0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = ["AsymptoticApprox", "lambert_w0", "asym_V", "asym_x", "asym_approx", "V_FLOOR"]

# asym_x is only defined where ln(2V / (pi e^2)) > 0
V_FLOOR = math.pi * math.e**2 / 2

_MAX_ITER = 100


def _w0_guess(z: float) -> float:
    if z <= 0.25:
        return z - z * z + 1.5 * z**3
    if z <= math.e:
        return math.log1p(z) * (1 - math.log1p(math.log1p(z)) / (2 + math.log1p(z)))
    lz = math.log(z)
    return lz - math.log(lz)


def lambert_w0(z: float) -> float:
    """Real principal branch ``W0`` on ``[0, inf)``: ``w e^w = z``, ``w >= 0``.

    Halley iteration from an asymptotic or Taylor starting guess.
    """
    if math.isnan(z) or z < 0:
        raise DomainError(f"lambert_w0 is implemented for z >= 0 only, got {z!r}")
    if z == 0:
        return 0.0
    if math.isinf(z):
        return math.inf
    w = _w0_guess(z)
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - z
        if f == 0:
            return w
        wp1 = w + 1
        step = f / (ew * wp1 - (w + 2) * f / (2 * wp1))
        w_new = w - step
        if w_new < 0:
            w_new = w / 2
        if abs(w_new - w) <= 4 * math.ulp(max(w_new, 1e-300)):
            return w_new
        w = w_new
    raise ConvergenceError(f"lambert_w0 did not converge for z = {z!r}")


@dataclass(frozen=True)
class AsymptoticApprox:
    x: float
    W: float
    V: float


def asym_approx(x: float) -> AsymptoticApprox:
    if x == 0:
        raise DomainError("the large-|x| approximant is not defined at x = 0")
    ax = abs(x)
    W = lambert_w0(math.sqrt(math.pi / 2) * ax / math.e)
    return AsymptoticApprox(x=x, W=W, V=(math.pi * ax / (2 * W)) ** 2)


def asym_V(x: float) -> float:
    """Leading-order large-|x| potential; even in ``x``, rejects ``x = 0``."""
    return asym_approx(x).V


def asym_x(V: float) -> float:
    """Inverse of :func:`asym_V` on ``V > pi e^2 / 2``."""
    if not V > V_FLOOR:
        raise DomainError(f"asym_x needs V > pi*e^2/2 = {V_FLOOR:.15g}, got {V!r}")
    return math.sqrt(V) * math.log(2 * V / (math.pi * math.e**2)) / math.pi
