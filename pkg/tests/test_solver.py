import math
import random

import mpmath
import numpy as np
import pytest

from wusprung.errors import ConvergenceError, DomainError, MultiValuedError
from wusprung.solver import (
    TWO_PI,
    Regime,
    branches_at,
    classify,
    dip_minimum,
    dxdV,
    forward_x,
    invert_V,
    principal_V,
    theta0_of_V0,
    theta_to_xV,
    v0_of_theta0,
)


def x_literal(V, V0, dps=50):
    """The implicit relation exactly as written, in high precision."""
    with mpmath.workdps(dps):
        V, V0 = mpmath.mpf(V), mpmath.mpf(V0)
        d = mpmath.sqrt(V - V0)
        rhs = d * mpmath.log(V0 / (2 * mpmath.pi * mpmath.e**2)) + mpmath.sqrt(V) * mpmath.log(
            (mpmath.sqrt(V) + d) ** 2 / V0
        )
        return float(rhs / mpmath.pi)


def trig_rhs(theta, V0):
    t, sec = math.tan(theta), 1 / math.cos(theta)
    return t * math.log(V0 / (TWO_PI * math.e**2)) + 2 * sec * math.log(sec + t)


# --- classify ---------------------------------------------------------------


def test_classify_regimes():
    assert classify(7.1).regime is Regime.SINGLE_VALUED
    assert classify(TWO_PI).regime is Regime.CRITICAL
    assert classify(3.1).regime is Regime.MULTI_VALUED
    assert classify(TWO_PI * (1 + 5e-13)).regime is Regime.CRITICAL
    assert classify(TWO_PI * (1 + 1e-10)).regime is Regime.SINGLE_VALUED


def test_classify_omega():
    assert classify(TWO_PI).omega is None
    assert classify(7.1).omega == pytest.approx(1 / math.log(7.1 / TWO_PI))


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_classify_rejects(bad):
    with pytest.raises(DomainError):
        classify(bad)


# --- forward_x --------------------------------------------------------------


def test_forward_x_at_v0():
    for V0 in (1.0, 3.1, TWO_PI, 7.1):
        assert forward_x(V0, V0) == 0.0


def test_forward_x_zero_at_second_branch():
    th0 = theta0_of_V0(3.1).theta0
    assert abs(forward_x(3.1 / math.cos(th0) ** 2, 3.1)) <= 1e-10


@pytest.mark.parametrize("V0", [0.7, 3.1, TWO_PI, 7.1, 25.0])
def test_forward_x_matches_literal_relation(V0):
    for V in V0 * np.geomspace(1.001, 1e5, 40):
        assert forward_x(float(V), V0) == pytest.approx(x_literal(V, V0), rel=1e-12, abs=1e-13)


def test_forward_x_matches_u_form():
    for V0 in (3.1, 7.1):
        for V in np.linspace(V0 * 1.01, V0 * 50, 25):
            u = math.sqrt(V / V0 - 1)
            ref = math.sqrt(V0) / math.pi * (
                u * math.log(V0 / TWO_PI) - 2 * u + 2 * math.sqrt(1 + u * u) * math.asinh(u)
            )
            assert forward_x(float(V), V0) == pytest.approx(ref, rel=1e-12)


def test_forward_x_domain():
    with pytest.raises(DomainError):
        forward_x(3.0, 3.1)


# --- dxdV -------------------------------------------------------------------


def test_dxdV_finite_difference():
    V, V0 = 20.0, 7.1
    h = 1e-5 * V
    fd = (forward_x(V + h, V0) - forward_x(V - h, V0)) / (2 * h)
    assert abs(dxdV(V, V0) / fd - 1) <= 1e-6


def test_dxdV_sign_near_v0():
    assert dxdV(3.1 * (1 + 1e-9), 3.1) < 0
    assert dxdV(7.1 * (1 + 1e-9), 7.1) > 0


def test_dxdV_domain():
    with pytest.raises(DomainError):
        dxdV(7.1, 7.1)


# --- invert_V ---------------------------------------------------------------


def test_invert_at_origin():
    assert invert_V(0.0, 7.1) == 7.1


@pytest.mark.parametrize("V0", [TWO_PI, 7.1, 10.0, 1e3])
@pytest.mark.parametrize("x", [1e-6, 0.01, 0.1, 1.0, 5.0, 10.0, 100.0, 1e4])
def test_invert_round_trip(x, V0):
    V = invert_V(x, V0)
    assert V >= V0
    # next to V0 the slope is huge and one ulp of V bounds the attainable residual
    bound = max(1e-12 * max(1.0, x), 2 * abs(dxdV(V, V0)) * math.ulp(V))
    assert abs(forward_x(V, V0) - x) <= bound


def test_invert_critical_round_trip():
    assert abs(forward_x(invert_V(5.0, TWO_PI), TWO_PI) - 5.0) <= 1e-10


@pytest.mark.parametrize("x", [0.2, 3.0, 70.0])
def test_invert_is_even(x):
    assert invert_V(-x, 7.1) == invert_V(x, 7.1)


def test_invert_rejects_multivalued():
    with pytest.raises(MultiValuedError):
        invert_V(1.0, 3.1)


def test_invert_rejects_nonfinite():
    with pytest.raises(DomainError):
        invert_V(math.inf, 7.1)


def test_convergence_error_is_raised_on_cap(monkeypatch):
    import wusprung.solver as solver

    monkeypatch.setattr(solver, "MAX_ITER", 2)
    with pytest.raises(ConvergenceError):
        solver.invert_V(3.0, 7.1)


# --- theta parametrization --------------------------------------------------


def test_theta_origin():
    p = theta_to_xV(0.0, 3.1)
    assert p.x == 0.0 and p.V == 3.1


def test_theta_at_theta0():
    th0 = theta0_of_V0(3.1).theta0
    p = theta_to_xV(th0, 3.1)
    assert abs(p.x) <= 1e-10
    assert p.V == pytest.approx(3.1 / math.cos(th0) ** 2, rel=1e-15)


@pytest.mark.parametrize("V0", [3.1, TWO_PI, 7.1])
def test_theta_matches_forward_x(V0):
    # the grid starts at 0.02: below that, rounding V = V0 sec^2 dominates
    for th in np.linspace(0.02, 1.5, 75):
        p = theta_to_xV(float(th), V0)
        assert p.x == pytest.approx(forward_x(p.V, V0), rel=1e-12, abs=1e-15)


def test_theta_matches_printed_trig_form():
    for V0 in (3.1, 7.1):
        for th in np.linspace(-1.5, 1.5, 31):
            p = theta_to_xV(float(th), V0)
            assert p.x == pytest.approx(math.sqrt(V0) / math.pi * trig_rhs(th, V0), rel=1e-12, abs=1e-15)


def test_theta_domain():
    with pytest.raises(DomainError):
        theta_to_xV(math.pi / 2, 3.1)


# --- critical angle ---------------------------------------------------------


def test_theta0_residual():
    th0 = theta0_of_V0(3.1).theta0
    assert 0 < th0 < math.pi / 2
    assert abs(trig_rhs(th0, 3.1)) <= 1e-12


def test_theta0_tends_to_zero_at_critical_amplitude():
    near = theta0_of_V0(TWO_PI - 1e-6).theta0
    assert 0 < near < theta0_of_V0(3.1).theta0


def test_theta0_domain():
    for bad in (7.1, TWO_PI, 0.0):
        with pytest.raises(DomainError):
            theta0_of_V0(bad)


def test_v0_of_theta0_limit():
    assert abs(v0_of_theta0(1e-6) - TWO_PI) <= 1e-4


def test_v0_of_theta0_quarter_pi():
    direct = TWO_PI * math.e**2 * (1 + math.sqrt(2)) ** (-2 * math.sqrt(2))
    assert v0_of_theta0(math.pi / 4) == pytest.approx(direct, rel=1e-14)
    assert v0_of_theta0(math.pi / 4) == pytest.approx(3.84, abs=5e-3)


def test_v0_of_theta0_closed_form():
    for th in np.linspace(0.05, 1.5, 20):
        sec, t = 1 / math.cos(th), math.tan(th)
        direct = TWO_PI * math.e**2 * (sec + t) ** (-2 * sec / t)
        assert v0_of_theta0(float(th)) == pytest.approx(direct, rel=1e-13)


@pytest.mark.parametrize("th", [0.3, 0.8, 1.2])
def test_theta0_round_trip(th):
    assert abs(theta0_of_V0(v0_of_theta0(th)).theta0 - th) <= 1e-10


def test_v0_of_theta0_domain():
    for bad in (0.0, math.pi / 2, -0.1):
        with pytest.raises(DomainError):
            v0_of_theta0(bad)


# --- branches ---------------------------------------------------------------


def test_branches_single_valued_origin():
    assert branches_at(0.0, 7.1) == [7.1]


def test_branches_multivalued_origin():
    got = branches_at(0.0, 3.1)
    th0 = theta0_of_V0(3.1).theta0
    assert len(got) == 2
    assert got[0] == 3.1
    assert got[1] == pytest.approx(3.1 / math.cos(th0) ** 2, rel=1e-12)


def test_branches_single_valued_agrees_with_inverse():
    got = branches_at(0.5, 7.1)
    assert len(got) == 1
    assert got[0] == pytest.approx(invert_V(0.5, 7.1), rel=1e-12)


def test_branches_in_dip_has_two_values():
    bottom = dip_minimum(3.1)
    got = branches_at(bottom.x / 2, 3.1)
    assert len(got) == 2
    for V in got:
        assert forward_x(V, 3.1) == pytest.approx(bottom.x / 2, abs=1e-12)
    assert branches_at(bottom.x * 1.01, 3.1) == []


def test_branches_multivalued_positive_x():
    got = branches_at(0.3, 3.1)
    assert len(got) == 1 and got[0] > theta_to_xV(theta0_of_V0(3.1).theta0, 3.1).V


# --- principal branch -------------------------------------------------------


def test_principal_matches_smallest_branch():
    for x in (0.01, 0.05, 0.1):
        assert principal_V(x, 3.1) == pytest.approx(min(branches_at(-x, 3.1)), rel=1e-12)
    assert principal_V(0.5, 7.1) == invert_V(0.5, 7.1)


def test_principal_reach():
    bottom = dip_minimum(3.1)
    assert dxdV(bottom.V, 3.1) == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(DomainError):
        principal_V(abs(bottom.x) * 1.01, 3.1)


# --- properties -------------------------------------------------------------


@pytest.mark.parametrize("V0", [TWO_PI, 7.1, 10.0])
def test_monotone_above_critical(V0):
    for V in V0 + np.geomspace(1e-9 * V0, 1e6 - V0, 1000):
        assert dxdV(float(V), V0) > 0


def test_dip_structure():
    V0 = 3.1
    Vb = theta0_of_V0(V0).V_branch
    for V in np.linspace(V0, Vb, 502)[1:-1]:
        assert forward_x(float(V), V0) < 0


def test_v0_of_theta0_decreasing():
    vals = [v0_of_theta0(float(t)) for t in np.linspace(0.01, 1.55, 100)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert all(0 < v < TWO_PI for v in vals)


def test_dxdV_random_points():
    rng = random.Random(7)
    for _ in range(50):
        V0 = rng.uniform(TWO_PI, 30)
        V = V0 * math.exp(rng.uniform(math.log(1.01), math.log(1e4)))
        h = 1e-5 * V
        fd = (forward_x(V + h, V0) - forward_x(V - h, V0)) / (2 * h)
        assert abs(dxdV(V, V0) / fd - 1) <= 1e-6
