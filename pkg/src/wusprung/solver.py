"""Floating-point geometry of the implicit curve relating ``x`` and ``V``.

The curve is

    pi x = sqrt(V - V0) ln(V0 / (2 pi e^2)) + sqrt(V) ln((sqrt(V) + sqrt(V - V0))^2 / V0)

for ``V >= V0``.  Writing ``V = V0 sec^2(theta)`` and ``u = tan(theta)``, this is

    pi x / sqrt(V0) = u ln(V0 / 2 pi) + At(u),   At(u) = 2 sqrt(1+u^2) asinh(u) - 2u

which is what we evaluate: ``At`` is computed without cancellation near ``u = 0``.

Below the critical amplitude ``2 pi`` the signed curve dips below ``x = 0``
before turning back, so ``V(x)`` is multi-valued; :func:`branches_at`
enumerates the values and :func:`principal_V` follows the branch through
``(0, V0)``.  At and above ``2 pi`` the curve is monotone and
:func:`invert_V` returns the unique value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .asymptotics import asym_V
from .errors import ConvergenceError, DomainError, MultiValuedError

__all__ = [
    "TWO_PI",
    "CRITICAL_EPS",
    "Regime",
    "PotentialParams",
    "BranchSample",
    "CriticalAngle",
    "classify",
    "atilde",
    "forward_x",
    "dxdV",
    "invert_V",
    "theta_to_xV",
    "theta0_of_V0",
    "v0_of_theta0",
    "dip_minimum",
    "principal_V",
    "branches_at",
]

TWO_PI = 2 * math.pi
CRITICAL_EPS = 1e-12
MAX_ITER = 200

# Taylor coefficients of At(u) = sum_k c_k u^(2k+1), k = 1..8 (exact rationals
# from expansions.atilde_series; float is enough here)
_AT_TAYLOR = (
    2 / 3,
    -4 / 15,
    16 / 105,
    -32 / 315,
    256 / 3465,
    -512 / 9009,
    2048 / 45045,
    -4096 / 109395,
)


class Regime(enum.Enum):
    MULTI_VALUED = "multi-valued"
    CRITICAL = "critical"
    SINGLE_VALUED = "single-valued"


@dataclass(frozen=True)
class PotentialParams:
    V0: float
    omega: float | None
    regime: Regime

    @property
    def is_critical(self) -> bool:
        return self.regime is Regime.CRITICAL


@dataclass(frozen=True)
class BranchSample:
    theta: float
    x: float
    V: float


@dataclass(frozen=True)
class CriticalAngle:
    theta0: float
    V0: float

    @property
    def V_branch(self) -> float:
        """Second ``x = 0`` value, ``V0 sec^2(theta0)``."""
        return self.V0 / math.cos(self.theta0) ** 2


def _check_v0(V0: float) -> None:
    if not math.isfinite(V0) or V0 <= 0:
        raise DomainError(f"V0 must be finite and positive, got {V0!r}")


def classify(V0: float, eps: float = CRITICAL_EPS) -> PotentialParams:
    """Regime of the amplitude; ``|V0 - 2pi| <= eps * 2pi`` counts as critical."""
    _check_v0(V0)
    if abs(V0 - TWO_PI) <= eps * TWO_PI:
        return PotentialParams(V0, None, Regime.CRITICAL)
    omega = 1.0 / math.log(V0 / TWO_PI)
    regime = Regime.MULTI_VALUED if V0 < TWO_PI else Regime.SINGLE_VALUED
    return PotentialParams(V0, omega, regime)


def atilde(u: float) -> float:
    """``2 sqrt(1+u^2) asinh(u) - 2u`` in floating point, odd in ``u``."""
    au = abs(u)
    if au < 0.05:
        u2 = u * u
        acc = 0.0
        for c in reversed(_AT_TAYLOR):
            acc = acc * u2 + c
        return acc * u2 * u
    return 2 * math.sqrt(1 + u * u) * math.asinh(u) - 2 * u


def _x_of_u(u: float, V0: float) -> float:
    return math.sqrt(V0) / math.pi * (u * math.log(V0 / TWO_PI) + atilde(u))


def forward_x(V: float, V0: float) -> float:
    """Signed ``x`` on the curve at potential ``V >= V0``."""
    _check_v0(V0)
    if not V >= V0:
        raise DomainError(f"forward_x needs V >= V0, got V={V!r}, V0={V0!r}")
    if V == V0:
        return 0.0
    return _x_of_u(math.sqrt((V - V0) / V0), V0)


def dxdV(V: float, V0: float) -> float:
    """Closed-form slope ``dx/dV``; singular at ``V = V0``."""
    _check_v0(V0)
    if not V > V0:
        raise DomainError(f"dxdV needs V > V0, got V={V!r}, V0={V0!r}")
    u = math.sqrt((V - V0) / V0)
    return (
        math.log(V0 / TWO_PI) / (2 * math.sqrt(V - V0)) + math.asinh(u) / math.sqrt(V)
    ) / math.pi


def _rtsafe(f, df, lo: float, hi: float, tol: float) -> float:
    """Newton inside a maintained bracket ``f(lo) < 0 < f(hi)``, bisecting when
    a Newton step leaves the bracket or fails to halve the residual."""
    x = hi
    fx = f(x)
    prev = math.inf
    for _ in range(MAX_ITER):
        if abs(fx) <= tol:
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        if hi - lo <= 2 * math.ulp(hi):
            flo, fhi = f(lo), f(hi)
            return lo if abs(flo) <= abs(fhi) else hi
        step_ok = False
        if x > lo:
            d = df(x)
            if d > 0 and math.isfinite(d):
                x_new = x - fx / d
                step_ok = lo < x_new < hi and abs(fx) < 0.5 * prev
        if not step_ok:
            x_new = lo + (hi - lo) / 2
        prev = abs(fx)
        x = x_new
        fx = f(x)
    raise ConvergenceError("safeguarded Newton did not converge in 200 iterations")


def invert_V(x: float, V0: float) -> float:
    """Unique ``V >= V0`` on the curve at ``|x|`` (needs ``V0 >= 2pi``).

    The x-residual target is ``1e-12 * max(1, |x|)``.  Very close to ``V0`` the
    slope ``dx/dV`` blows up and adjacent doubles of ``V`` can straddle the
    target; the better of the two is returned.
    """
    params = classify(V0)
    if params.regime is Regime.MULTI_VALUED:
        raise MultiValuedError(
            f"V0 = {V0!r} < 2*pi is in the multi-valued regime; "
            "use branches_at or principal_V"
        )
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    target = abs(x)
    if target == 0:
        return V0
    hi = max(asym_V(target), 2 * V0)
    while forward_x(hi, V0) < target:
        hi = V0 + 2 * (hi - V0)
    tol = 1e-12 * max(1.0, target)
    return _rtsafe(lambda V: forward_x(V, V0) - target, lambda V: dxdV(V, V0), V0, hi, tol)


def theta_to_xV(theta: float, V0: float) -> BranchSample:
    """Point of the parametric curve at angle ``theta``."""
    _check_v0(V0)
    if not abs(theta) < math.pi / 2:
        raise DomainError(f"theta must lie in (-pi/2, pi/2), got {theta!r}")
    t = math.tan(theta)
    return BranchSample(theta, _x_of_u(t, V0), V0 / math.cos(theta) ** 2)


def _zero_angle_residual(theta: float, V0: float) -> float:
    # x(theta) / tan(theta), up to the positive factor sqrt(V0)/pi
    t = math.tan(theta)
    ratio = atilde(t) / t if t != 0 else 0.0
    return math.log(V0 / TWO_PI) + ratio


def theta0_of_V0(V0: float) -> CriticalAngle:
    """Nontrivial angle in ``(0, pi/2)`` where ``x = 0`` (needs ``0 < V0 < 2pi``)."""
    params = classify(V0)
    if params.regime is not Regime.MULTI_VALUED:
        raise DomainError(f"no nontrivial x = 0 angle for V0 = {V0!r} >= 2*pi")
    lo, hi = 0.0, math.pi / 2
    # residual -> ln(V0/2pi) < 0 at 0 and -> +inf at pi/2
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 1e-15 or mid in (lo, hi):
            break
        if _zero_angle_residual(mid, V0) < 0:
            lo = mid
        else:
            hi = mid
    return CriticalAngle(0.5 * (lo + hi), V0)


def v0_of_theta0(theta0: float) -> float:
    """Amplitude whose nontrivial ``x = 0`` angle is ``theta0``.

    Closed form ``2 pi e^2 (sec + tan)^(-2 sec / tan)``, evaluated as
    ``2 pi exp(-At(tan)/tan)``.
    """
    if not 0 < theta0 < math.pi / 2:
        raise DomainError(f"theta0 must lie in (0, pi/2), got {theta0!r}")
    t = math.tan(theta0)
    return TWO_PI * math.exp(-atilde(t) / t)


def dip_minimum(V0: float) -> BranchSample:
    """Turning point of the dip (where ``dx/dV = 0``) for ``0 < V0 < 2pi``."""
    crit = theta0_of_V0(V0)
    lo, hi = V0, crit.V_branch
    # dxdV -> -inf at V0+, and is positive where the curve recrosses x = 0
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or hi - lo <= 1e-15 * hi:
            break
        if dxdV(mid, V0) < 0:
            lo = mid
        else:
            hi = mid
    V = 0.5 * (lo + hi)
    return BranchSample(math.acos(math.sqrt(V0 / V)), forward_x(V, V0), V)


def _bisect_theta(g, lo: float, hi: float, glo: float) -> float:
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        gm = g(mid)
        if gm == 0:
            return mid
        if (gm < 0) == (glo < 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def principal_V(x: float, V0: float) -> float:
    """``V`` on the branch through ``(0, V0)``, even in ``x``.

    Equal to :func:`invert_V` for ``V0 >= 2pi``.  Below ``2pi`` the branch
    only reaches ``|x| <= |x_min|`` (the bottom of the dip); beyond that a
    :class:`DomainError` is raised.
    """
    params = classify(V0)
    if params.regime is not Regime.MULTI_VALUED:
        return invert_V(x, V0)
    target = -abs(x)
    if target == 0:
        return V0
    bottom = dip_minimum(V0)
    if target < bottom.x:
        raise DomainError(
            f"|x| = {abs(x)!r} exceeds the reach {abs(bottom.x)!r} of the principal "
            f"branch for V0 = {V0!r}"
        )
    g = lambda th: theta_to_xV(th, V0).x - target
    theta = _bisect_theta(g, 0.0, bottom.theta, g(0.0))
    return V0 / math.cos(theta) ** 2


def branches_at(x: float, V0: float, samples: int = 4096) -> list[float]:
    """All ``V >= V0`` with ``forward_x(V, V0) == x`` on the signed curve.

    Sign changes of ``x(theta) - x`` are bracketed on a uniform grid over
    ``(1e-9, pi/2 - 1e-6)`` (plus ``theta = 0``) and refined by bisection.
    Returned in ascending order.
    """
    _check_v0(V0)
    g = lambda th: theta_to_xV(th, V0).x - x
    lo_edge, hi_edge = 1e-9, math.pi / 2 - 1e-6
    step = (hi_edge - lo_edge) / (samples - 1)
    grid = [0.0] + [lo_edge + i * step for i in range(samples)]
    values = [g(th) for th in grid]
    roots: list[float] = []
    for i, (th, gv) in enumerate(zip(grid, values)):
        if gv == 0:
            roots.append(th)
            continue
        if i + 1 < len(grid):
            gn = values[i + 1]
            if gn != 0 and (gv < 0) != (gn < 0):
                roots.append(_bisect_theta(g, th, grid[i + 1], gv))
    out: list[float] = []
    for th in sorted(roots):
        V = V0 / math.cos(th) ** 2
        if not out or V - out[-1] > 1e-12 * V:
            out.append(V)
    return out
