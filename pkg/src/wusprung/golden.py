"""Published coefficient tables and the comparison against exact derivation.

The tables are stored as printed.  Entries where the exact reversion
disagrees with the print are listed in :data:`KNOWN_DISCREPANCIES`; each one
must still pass the compose-back identity and must beat the printed value
numerically against the root solver (see :func:`discrepancy_evidence`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import OmegaPoly, parse_omega_poly
from .expansions import (
    case1_coefficients,
    case1_compose_back,
    case2_coefficients,
    case2_compose_back,
    case2_z,
)
from .solver import invert_V

PUBLISHED_A_TEXT = (
    "w",
    "4/3*w^2",
    "8/15*w^2 + 28/9*w^3",
    "32/105*w^2 + 16/5*w^3 + 80/9*w^4",
    "64/315*w^2 + 528/175*w^3 + 704/45*w^4 + 2288/81*w^5",
    "512/3465*w^2 + 13312/4725*w^3 + 14144/675*w^4 + 5824/81*w^5 + 23296/243*w^6",
    "1024/9009*w^2 + 12800/4851*w^3 + 13312/525*w^4 + 356864/2835*w^5"
    " + 8704/27*w^6 + 82688/243*w^7",
    "4096/45045*w^2 + 17408/7007*w^3 + 5892608/202125*w^4 + 1901824/10125*w^5"
    " + 661504/945*w^6 + 578816/405*w^7 + 909568/729*w^8",
    "8192/109395*w^2 + 136192/57915*w^3 + 153819136/4729725*w^4"
    " + 599911168/2338875*w^5 + 22685696/18225*w^6 + 13536512/3645*w^7"
    " + 68913152/10935*w^8 + 30764800/6561*w^9",
    "131072/2078505*w^2 + 3670016/1640925*w^3 + 229421056/6449625*w^4"
    " + 4575588352/13820625*w^5 + 2095044608/1063125*w^6 + 1036288/135*w^7"
    " + 208812032/10935*w^8 + 6735872/243*w^9 + 117877760/6561*w^10",
)

PUBLISHED_A: tuple[OmegaPoly, ...] = tuple(parse_omega_poly(t) for t in PUBLISHED_A_TEXT)

PUBLISHED_B: tuple[Fraction, ...] = tuple(
    Fraction(t)
    for t in (
        "1",
        "2/3",
        "1/21",
        "-2/567",
        "92/130977",
        "-4/21021",
        "19543/321810489",
        "-352610/16412334939",
        "12799/1568439873",
        "6350075192/1944910927276317",
    )
)

# name -> nature of the disagreement between print and exact derivation
KNOWN_DISCREPANCIES = {"b10": "sign: exact value is negative, printed positive"}


@dataclass
class TableReport:
    matches: list[str] = field(default_factory=list)
    documented: list[str] = field(default_factory=list)
    unexplained: list[str] = field(default_factory=list)
    compose_back_ok: bool = True

    @property
    def ok(self) -> bool:
        return not self.unexplained and self.compose_back_ok


def _classify_mismatch(name: str, report: TableReport) -> None:
    if name in KNOWN_DISCREPANCIES:
        report.documented.append(name)
    else:
        report.unexplained.append(name)


def check_case1(K: int = 10) -> TableReport:
    report = TableReport()
    exact = case1_coefficients(K)
    for k, (got, printed) in enumerate(zip(exact.a, PUBLISHED_A), 1):
        name = f"a{k}"
        if got == printed:
            report.matches.append(name)
        else:
            _classify_mismatch(name, report)
    residual = case1_compose_back(K)
    report.compose_back_ok = all(c.is_zero() for c in residual.coeffs)
    return report


def check_case2(K: int = 10) -> TableReport:
    report = TableReport()
    exact = case2_coefficients(K)
    for k, (got, printed) in enumerate(zip(exact.b, PUBLISHED_B), 1):
        name = f"b{k}"
        if got == printed:
            report.matches.append(name)
        else:
            _classify_mismatch(name, report)
    residual = case2_compose_back(K)
    report.compose_back_ok = all(c == 0 for c in residual.coeffs)
    return report


def _eval_b(b, x: float) -> float:
    z = case2_z(x)
    acc = 0.0
    for bk in reversed(b):
        acc = (acc + float(bk)) * z
    return 2 * math.pi + 5 * math.pi * acc


def discrepancy_evidence(xs=(0.25, 0.5, 1.0)) -> list[tuple[float, float, float]]:
    """``(x, err_exact, err_printed)`` for the critical series against the solver.

    Both partial sums use ten terms and differ only where exact and printed
    coefficients disagree.
    """
    exact = case2_coefficients(10).b
    out = []
    for x in xs:
        ref = invert_V(x, 2 * math.pi)
        out.append((x, abs(_eval_b(exact, x) - ref), abs(_eval_b(PUBLISHED_B, x) - ref)))
    return out
