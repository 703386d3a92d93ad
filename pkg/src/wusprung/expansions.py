"""Small-x expansions of the potential about ``(0, V0)``.

Both coefficient tables come from reverting the parametric relation between
``x`` and ``u = tan(theta) = sqrt((V - V0)/V0)``::

    pi x / sqrt(V0) = u ln(V0 / 2pi) + At(u),    At(u) = 2 sqrt(1+u^2) asinh(u) - 2u

Generic amplitude (``w = 1/ln(V0/2pi)`` finite): with ``tau = pi x w / sqrt(V0)``
the relation is ``tau = u + w At(u)``.  Reverting gives ``u(tau)`` over Q[w],
and the coefficient of ``tau^(2k)`` in ``u^2`` is ``(-1)^(k-1) a_k / w``.

Critical amplitude ``V0 = 2pi``: the linear term drops out and
``s^3 = (3/2) pi x / sqrt(2pi) = (3/2) At(u)``, so ``u`` is a series in ``s``
and the coefficient of ``s^(2k)`` in ``u^2`` is ``(2/5)^(k-1) b_k``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import (
    OmegaPoly,
    TruncSeries,
    format_omega_poly,
    format_rational,
    series_cbrt,
    series_compose,
    series_mul,
    series_recip,
    series_revert,
)
from .errors import DomainError
from .solver import Regime, classify

__all__ = [
    "CaseICoefficients",
    "CaseIICoefficients",
    "WrongCaseError",
    "asinh_series",
    "sqrt1p_sq_series",
    "atilde_series",
    "case1_relation",
    "case1_coefficients",
    "case2_coefficients",
    "case2_coefficients_by_reversion",
    "case2_c_series",
    "case1_compose_back",
    "case2_compose_back",
    "eval_case1",
    "eval_case2",
    "case1_tau",
    "case2_z",
    "format_coefficients",
    "coefficients_to_json",
]


class WrongCaseError(DomainError):
    """The requested expansion does not apply at this amplitude."""


@dataclass(frozen=True)
class CaseICoefficients:
    a: tuple[OmegaPoly, ...]

    def __len__(self):
        return len(self.a)

    def __getitem__(self, k):
        return self.a[k]

    @property
    def count(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class CaseIICoefficients:
    b: tuple[Fraction, ...]

    def __len__(self):
        return len(self.b)

    def __getitem__(self, k):
        return self.b[k]

    @property
    def count(self) -> int:
        return len(self.b)


def asinh_series(N: int) -> TruncSeries:
    cs = [Fraction(0)] * (N + 1)
    for n in range((N - 1) // 2 + 1):
        cs[2 * n + 1] = Fraction(
            (-1) ** n * factorial(2 * n), 4**n * factorial(n) ** 2 * (2 * n + 1)
        )
    return TruncSeries(cs, N)


def sqrt1p_sq_series(N: int) -> TruncSeries:
    """``sqrt(1 + u^2)`` by the binomial series."""
    cs = [Fraction(0)] * (N + 1)
    coef = Fraction(1)
    for n in range(N // 2 + 1):
        cs[2 * n] = coef
        coef = coef * (Fraction(1, 2) - n) / (n + 1)
    return TruncSeries(cs, N)


def atilde_series(N: int) -> TruncSeries:
    """``2 sqrt(1+u^2) asinh(u) - 2u``, an odd series starting at ``(2/3) u^3``."""
    if N < 3:
        raise ValueError("atilde_series needs N >= 3")
    prod = series_mul(sqrt1p_sq_series(N), asinh_series(N), N)
    return 2 * prod - 2 * TruncSeries.variable(N)


def case1_relation(N: int) -> TruncSeries:
    """``G(u) = u + w At(u)`` over Q[w]."""
    at = atilde_series(max(N, 3)).truncate(N).lift(OmegaPoly)
    return TruncSeries.variable(N, OmegaPoly) + at * OmegaPoly.omega()


@lru_cache(maxsize=None)
def _case1_table(K: int) -> tuple[OmegaPoly, ...]:
    N = 2 * K + 1
    u_of_tau = series_revert(case1_relation(N), N)
    u_sq = series_mul(u_of_tau, u_of_tau, N)
    w = OmegaPoly.omega()
    return tuple(
        u_sq[2 * k] * w * (1 if k % 2 == 1 else -1) for k in range(1, K + 1)
    )


def case1_coefficients(K: int) -> CaseICoefficients:
    """Exact ``a_1 .. a_K`` as polynomials in ``w``."""
    if K < 0:
        raise ValueError("K must be >= 0")
    if K == 0:
        return CaseICoefficients(())
    return CaseICoefficients(_case1_table(K))


def _h_series(N: int) -> TruncSeries:
    """``h(v)`` with ``At(u) = u^3 h(u^2)``, as a series in ``v``."""
    at = atilde_series(2 * N + 3)
    return TruncSeries([at[2 * j + 3] for j in range(N + 1)], N)


def case2_c_series(M: int) -> TruncSeries:
    """``C(y)`` to order ``M`` with ``u = s C(s^2)`` solving ``s^3 = (3/2) At(u)``.

    Fixed point ``C = (3/2 h(y C^2))^(-1/3)``; each pass fixes one more
    coefficient, so ``M + 1`` passes suffice.
    """
    scaled_h = _h_series(M) * Fraction(3, 2)
    y = TruncSeries.variable(M)
    C = TruncSeries.constant(1, M)
    for _ in range(M + 1):
        arg = series_mul(y, series_mul(C, C, M), M)
        C = series_recip(series_cbrt(series_compose(scaled_h, arg, M), M), M)
    return C


@lru_cache(maxsize=None)
def _case2_table(K: int) -> tuple[Fraction, ...]:
    # u^2 = y C(y)^2 and s^2 = (5/2) z
    M = K - 1
    C = case2_c_series(M)
    u_sq_over_y = series_mul(C, C, M)
    return tuple(Fraction(5, 2) ** k * u_sq_over_y[k] for k in range(K))


def case2_coefficients(K: int) -> CaseIICoefficients:
    """Exact ``b_1 .. b_K`` (critical amplitude ``V0 = 2pi``)."""
    if K < 0:
        raise ValueError("K must be >= 0")
    if K == 0:
        return CaseIICoefficients(())
    return CaseIICoefficients(_case2_table(K))


def case2_coefficients_by_reversion(K: int) -> CaseIICoefficients:
    """Same table by direct reversion of ``s = u (3/2 h(u^2))^(1/3)``.

    Kept as an independent route for cross-checking the fixed-point solve.
    """
    if K == 0:
        return CaseIICoefficients(())
    N = 2 * K + 1
    h = _h_series(K) * Fraction(3, 2)
    h_in_u = TruncSeries(
        [h[j // 2] if j % 2 == 0 and j // 2 <= K else 0 for j in range(N + 1)], N
    )
    s_of_u = series_mul(TruncSeries.variable(N), series_cbrt(h_in_u, N), N)
    u_of_s = series_revert(s_of_u, N)
    u_sq = series_mul(u_of_s, u_of_s, N)
    return CaseIICoefficients(
        tuple(Fraction(5, 2) ** (k - 1) * u_sq[2 * k] for k in range(1, K + 1))
    )


def case1_compose_back(K: int) -> TruncSeries:
    """``G(u(tau)) - tau`` to order ``2K + 1``; zero when the reversion is exact."""
    N = 2 * K + 1
    G = case1_relation(N)
    u_of_tau = series_revert(G, N)
    return series_compose(G, u_of_tau, N) - TruncSeries.variable(N, OmegaPoly)


def case2_compose_back(K: int) -> TruncSeries:
    """``(3/2) At(u(s)) - s^3`` to order ``2K + 1`` using the fixed-point ``C``."""
    N = 2 * K + 1
    C = case2_c_series(K)
    u_of_s = TruncSeries(
        [C[(j - 1) // 2] if j % 2 == 1 and (j - 1) // 2 <= K else 0 for j in range(N + 1)],
        N,
    )
    at = atilde_series(N)
    cube = TruncSeries([0, 0, 0, 1], N)
    return series_compose(at, u_of_s, N) * Fraction(3, 2) - cube


# --- numeric evaluation -----------------------------------------------------


def case1_tau(x: float, V0: float) -> float:
    omega = 1.0 / math.log(V0 / (2 * math.pi))
    return math.pi * x * omega / math.sqrt(V0)


def case2_z(x: float) -> float:
    return (3 * abs(x)) ** (2 / 3) * math.pi ** (1 / 3) / 5


def eval_case1(x: float, V0: float, K: int = 10) -> float:
    """Partial sum of the generic-amplitude expansion with ``K`` terms."""
    params = classify(V0)
    if params.regime is Regime.CRITICAL:
        raise WrongCaseError(
            f"V0 = {V0!r} is the critical amplitude 2*pi; use eval_case2"
        )
    omega = params.omega
    a = case1_coefficients(K)
    # V = V0 - (V0/w) sum a_k(w) q^k,  q = -(pi x w)^2 / V0
    q = -((math.pi * x * omega) ** 2) / V0
    acc = 0.0
    for ak in reversed(a.a):
        acc = (acc + ak(omega)) * q
    return V0 - V0 / omega * acc


def eval_case2(x: float, K: int = 10) -> float:
    """Partial sum of the critical-amplitude (``x^(2/3)``) expansion."""
    b = case2_coefficients(K)
    z = case2_z(x)
    acc = 0.0
    for bk in reversed(b.b):
        acc = (acc + float(bk)) * z
    return 2 * math.pi + 5 * math.pi * acc


# --- serialization ----------------------------------------------------------


def format_coefficients(coeffs: CaseICoefficients | CaseIICoefficients) -> list[str]:
    """Text lines such as ``a3 = 8/15*w^2 + 28/9*w^3`` or ``b3 = 1/21``."""
    if isinstance(coeffs, CaseICoefficients):
        return [f"a{k} = {format_omega_poly(p)}" for k, p in enumerate(coeffs.a, 1)]
    return [f"b{k} = {format_rational(q)}" for k, q in enumerate(coeffs.b, 1)]


def coefficients_to_json(coeffs: CaseICoefficients | CaseIICoefficients) -> str:
    rows = []
    if isinstance(coeffs, CaseICoefficients):
        for k, p in enumerate(coeffs.a, 1):
            terms = [
                {"power": power, "num": c.numerator, "den": c.denominator}
                for power, c in p.terms()
            ]
            rows.append({"name": f"a{k}", "terms": terms})
    else:
        for k, q in enumerate(coeffs.b, 1):
            terms = [{"power": 0, "num": q.numerator, "den": q.denominator}]
            rows.append({"name": f"b{k}", "terms": terms})
    return json.dumps(rows, indent=2)


def coefficients_from_json(text: str) -> CaseICoefficients | CaseIICoefficients:
    rows = json.loads(text)
    if rows and rows[0]["name"].startswith("b"):
        return CaseIICoefficients(
            tuple(
                sum((Fraction(t["num"], t["den"]) for t in r["terms"]), Fraction(0))
                for r in rows
            )
        )
    polys = []
    for r in rows:
        top = max((t["power"] for t in r["terms"]), default=-1)
        cs = [Fraction(0)] * (top + 1)
        for t in r["terms"]:
            cs[t["power"]] += Fraction(t["num"], t["den"])
        polys.append(OmegaPoly(cs))
    return CaseICoefficients(tuple(polys))

