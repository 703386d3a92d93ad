import json
import math
import random
from fractions import Fraction as F

import mpmath
import pytest

from wusprung.exact import OmegaPoly, TruncSeries, series_compose, series_revert
from wusprung.expansions import (
    WrongCaseError,
    atilde_series,
    case1_coefficients,
    case1_compose_back,
    case1_relation,
    case2_coefficients,
    case2_coefficients_by_reversion,
    case2_compose_back,
    case2_z,
    coefficients_from_json,
    coefficients_to_json,
    eval_case1,
    eval_case2,
    format_coefficients,
)
from wusprung.golden import PUBLISHED_A, PUBLISHED_B, discrepancy_evidence
from wusprung.solver import TWO_PI, invert_V, principal_V

W = OmegaPoly.omega()


# --- atilde_series ----------------------------------------------------------


@pytest.mark.parametrize(
    "N, expected",
    [
        (3, [0, 0, 0, F(2, 3)]),
        (5, [0, 0, 0, F(2, 3), 0, F(-4, 15)]),
        (7, [0, 0, 0, F(2, 3), 0, F(-4, 15), 0, F(16, 105)]),
    ],
)
def test_atilde_series(N, expected):
    assert atilde_series(N) == TruncSeries(expected, N)


def test_atilde_series_matches_mpmath_taylor():
    # independent numerical Taylor expansion
    mpmath.mp.dps = 40
    taylor = mpmath.taylor(lambda u: 2 * mpmath.sqrt(1 + u * u) * mpmath.asinh(u) - 2 * u, 0, 13)
    exact = atilde_series(13)
    for k in range(14):
        assert abs(float(exact[k]) - float(taylor[k])) < 1e-25 + 1e-20 * abs(float(taylor[k]))


def test_atilde_series_requires_order_three():
    with pytest.raises(ValueError):
        atilde_series(2)


# --- case I -----------------------------------------------------------------


def test_case1_low_orders():
    assert case1_coefficients(0).a == ()
    assert case1_coefficients(1).a == (W,)
    a = case1_coefficients(3)
    assert a[2] == F(8, 15) * W * W + F(28, 9) * W * W * W


def test_case1_a10_top_term():
    a10 = case1_coefficients(10)[9]
    assert a10[10] == F(117877760, 6561)


def test_case1_golden_table():
    assert case1_coefficients(10).a == PUBLISHED_A


def test_case1_degree_law():
    for n, p in enumerate(case1_coefficients(12).a, 1):
        assert p.degree == n


def test_case1_extending_k_is_stable():
    assert case1_coefficients(12).a[:10] == case1_coefficients(10).a


def test_case1_compose_back_is_exact():
    residual = case1_compose_back(10)
    assert residual.order == 21
    assert all(c.is_zero() for c in residual.coeffs)


def test_case1_relation_linear_coefficient_is_one():
    G = case1_relation(9)
    assert G[0].is_zero() and G[1] == 1 and G[3] == F(2, 3) * W


def test_case1_relation_matches_parametric_form():
    # tau = u + w At(u)  <=>  pi x / sqrt(V0) = u ln(V0/2pi) + At(u)
    rng = random.Random(3)
    G = case1_relation(15)
    for _ in range(10):
        V0 = rng.uniform(0.5, 20)
        if abs(V0 - TWO_PI) < 0.1:
            continue
        w = 1 / math.log(V0 / TWO_PI)
        u = rng.uniform(0.0, 0.2)
        at = 2 * math.sqrt(1 + u * u) * math.asinh(u) - 2 * u
        x = math.sqrt(V0) / math.pi * (u / w + at)
        tau = math.pi * x * w / math.sqrt(V0)
        series = sum(G[k](w) * u**k for k in range(16))
        assert series == pytest.approx(tau, rel=1e-12, abs=1e-14)


def test_case1_expansion_equivalent_forms():
    # V0 + sum a_k (pi x)^2k w^(2k-1) (-V0)^(1-k) == V0 - (V0/w) sum a_k q^k
    a = case1_coefficients(10)
    for V0, x in [(3.1, 0.03), (7.1, 0.02), (12.0, 0.05)]:
        w = 1 / math.log(V0 / TWO_PI)
        direct = V0 + sum(
            a[k - 1](w) * (math.pi * x) ** (2 * k) * w ** (2 * k - 1) * (-V0) ** (1 - k)
            for k in range(1, 11)
        )
        assert eval_case1(x, V0, 10) == pytest.approx(direct, rel=1e-14)


# --- case II ----------------------------------------------------------------


def test_case2_low_orders():
    assert case2_coefficients(0).b == ()
    assert case2_coefficients(3).b == (1, F(2, 3), F(1, 21))
    assert case2_coefficients(6)[5] == F(-4, 21021)


def test_case2_first_nine_match_published():
    assert case2_coefficients(10).b[:9] == PUBLISHED_B[:9]


def test_case2_b10_magnitude_matches_published_sign_differs():
    b10 = case2_coefficients(10)[9]
    assert abs(b10) == F(6350075192, 1944910927276317)
    assert b10 == -PUBLISHED_B[9]


def test_case2_two_routes_agree():
    assert case2_coefficients(12).b == case2_coefficients_by_reversion(12).b


def test_case2_compose_back_is_exact():
    residual = case2_compose_back(10)
    assert residual.order == 21
    assert all(c == 0 for c in residual.coeffs)


def test_case2_exact_b10_beats_printed_against_solver():
    for x, err_exact, err_printed in discrepancy_evidence():
        assert err_exact < err_printed / 5, x


def test_case2_frame_identity():
    # s^2 = (5/2) z with s^3 = (3/2) pi x / sqrt(2 pi)
    for x in (1e-3, 0.1, 2.0):
        s = (1.5 * math.pi * x / math.sqrt(TWO_PI)) ** (1 / 3)
        assert s * s == pytest.approx(2.5 * case2_z(x), rel=1e-14)


def test_case2_expansion_equivalent_forms():
    b = case2_coefficients(10)
    for x in (0.01, 0.1):
        direct = TWO_PI + math.pi * sum(
            float(b[k - 1]) * (3 * x) ** (2 * k / 3) * 5 ** (1 - k) * math.pi ** (k / 3)
            for k in range(1, 11)
        )
        assert eval_case2(x, 10) == pytest.approx(direct, rel=1e-14)


# --- numeric evaluation -----------------------------------------------------


def test_eval_at_origin():
    assert eval_case1(0.0, 7.1, 10) == 7.1
    assert eval_case2(0.0, 10) == TWO_PI


@pytest.mark.parametrize("x", [0.003, 0.01, 0.07])
def test_eval_is_even(x):
    assert eval_case1(-x, 7.1) == eval_case1(x, 7.1)
    assert eval_case1(-x, 3.1) == eval_case1(x, 3.1)
    assert eval_case2(-x) == eval_case2(x)


def test_eval_case1_rejects_critical():
    with pytest.raises(WrongCaseError):
        eval_case1(0.01, TWO_PI)
    with pytest.raises(WrongCaseError):
        eval_case1(0.01, TWO_PI * (1 + 1e-13))


@pytest.mark.parametrize("V0", [3.1, 7.1])
@pytest.mark.parametrize("x", [0.001, 0.005, 0.01])
def test_eval_case1_against_solver(V0, x):
    assert abs(eval_case1(x, V0, 10) - principal_V(x, V0)) / V0 <= 1e-8


@pytest.mark.parametrize("x", [0.001, 0.005, 0.01])
def test_eval_case2_against_solver(x):
    assert abs(eval_case2(x, 10) - invert_V(x, TWO_PI)) / TWO_PI <= 1e-8


# --- serialization ----------------------------------------------------------


def test_text_format():
    assert format_coefficients(case1_coefficients(3)) == [
        "a1 = w",
        "a2 = 4/3*w^2",
        "a3 = 8/15*w^2 + 28/9*w^3",
    ]
    assert format_coefficients(case2_coefficients(4)) == [
        "b1 = 1",
        "b2 = 2/3",
        "b3 = 1/21",
        "b4 = -2/567",
    ]


def test_json_round_trip():
    for coeffs in (case1_coefficients(6), case2_coefficients(6)):
        text = coefficients_to_json(coeffs)
        assert coefficients_from_json(text) == coeffs
    rows = json.loads(coefficients_to_json(case1_coefficients(3)))
    assert rows[2] == {
        "name": "a3",
        "terms": [{"power": 2, "num": 8, "den": 15}, {"power": 3, "num": 28, "den": 9}],
    }
