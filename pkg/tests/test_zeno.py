import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gatecmp.params import BASELINE, DimensionalParams, GateEnvironment, ZenoTuning
from gatecmp.zeno import (
    log_alpha,
    swap_fidelity,
    zeno_cz_success_value,
    zeno_rates,
    zeno_rates_dimensional,
    zeno_success,
    zeno_success_value,
)

TUNED = ZenoTuning(eps_kappa=725.0, Delta_r=6.4)


def _alpha_direct(radicand, r2_ts):
    h = r2_ts / 4
    if radicand > 0:
        x = math.sqrt(radicand)
        return math.cosh(x) + h * math.sinh(x) / x
    y = math.sqrt(-radicand)
    return math.cos(y) + h * math.sin(y) / y


# frozen values cross-checked with 30-digit mpmath arithmetic
def test_baseline_rates():
    rates = zeno_rates(BASELINE, TUNED)
    assert rates.r1_ts == pytest.approx(0.1467478571593163, rel=1e-12)
    assert rates.r2_ts == pytest.approx(131.43749230559172, rel=1e-12)
    assert rates.radicand == pytest.approx(1069.868794572816, rel=1e-12)
    assert abs(rates.omega0_ts) == pytest.approx(32.71, abs=0.005)
    assert rates.hyperbolic
    assert rates.swap_time == pytest.approx(math.pi / 1450, rel=1e-15)


def test_baseline_success():
    res = zeno_success(BASELINE, TUNED)
    assert res.amp_11 == pytest.approx(0.7445511440115147, rel=1e-12)
    assert res.success == pytest.approx(0.5543564060488526, rel=1e-12)
    assert res.success == pytest.approx(0.55, abs=0.01)
    assert res.conditional_phase_ok
    assert res.amp_00 == 1.0
    assert res.log_success == pytest.approx(math.log(res.success), rel=1e-14)


def test_swap_entries():
    res = zeno_success(BASELINE, TUNED)
    assert res.amp_01_swap == res.amp_10_swap
    assert res.amp_01_swap.real == 0 and res.amp_01_swap.imag < 0
    assert abs(res.amp_01_swap) ** 2 == pytest.approx(swap_fidelity(BASELINE, TUNED), rel=1e-14)
    assert swap_fidelity(BASELINE, TUNED) == pytest.approx(math.exp(-0.015310364853724548),
                                                           rel=1e-12)


def test_swap_fidelity_limits():
    assert swap_fidelity(BASELINE, ZenoTuning(1e15, 6.4)) == pytest.approx(1.0, abs=1e-12)
    weak = GateEnvironment(0.1, 1e-9)
    assert swap_fidelity(weak, ZenoTuning(math.pi / 2, 0.0)) == pytest.approx(math.exp(-1),
                                                                             rel=1e-12)


def test_branch_point():
    # radicand exactly zero: alpha -> 1 + R2 t_s / 4 = 1 + pi
    sign, logmag = log_alpha(0.0, 4 * math.pi)
    assert sign == 1.0
    assert logmag == pytest.approx(math.log(1 + math.pi), rel=1e-15)
    # pick eps_kappa to land on the branch point: 2 N Gamma_r Omega^4 / (eps A) = 1
    env = GateEnvironment(0.5, 3.0, 2)
    Delta_r = 0.25
    eps = 2 * 2 * 0.5 * 3.0**4 / (4 * Delta_r**2 + 1)
    rates = zeno_rates(env, ZenoTuning(eps, Delta_r))
    assert abs(rates.radicand) < 1e-9
    expected = math.exp(-2 * (rates.r1_ts + math.pi)) * (1 + math.pi) ** 2
    assert zeno_success(env, ZenoTuning(eps, Delta_r)).success == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("r2_ts", [0.5, 4 * math.pi, 30.0])
def test_continuity_across_radicand_zero(r2_ts):
    lo = log_alpha(-1e-8, r2_ts)
    hi = log_alpha(1e-8, r2_ts)
    assert abs(lo[1] - hi[1]) <= 1e-6
    assert lo[0] == hi[0] == 1.0


@pytest.mark.parametrize("x2", [-1e-6, 1e-6, 1.0, -1.0])
def test_continuity_at_internal_switches(x2):
    # series cutoff and the switch to the log-domain form
    h = 2.0
    below = log_alpha(x2 * (1 - 1e-12), 4 * h)[1]
    above = log_alpha(x2 * (1 + 1e-12), 4 * h)[1]
    assert abs(below - above) <= 1e-10


@settings(max_examples=300, deadline=None)
@given(x2=st.floats(-50.0, 50.0), r2_ts=st.floats(0.0, 200.0))
def test_log_alpha_matches_direct_evaluation(x2, r2_ts):
    if abs(x2) < 1e-3:
        return
    direct = _alpha_direct(x2, r2_ts)
    if direct == 0:
        return
    sign, logmag = log_alpha(x2, r2_ts)
    assert sign == math.copysign(1.0, direct)
    assert logmag == pytest.approx(math.log(abs(direct)), abs=1e-11)


def test_no_overflow_for_huge_rates():
    env = GateEnvironment(1.0, 1e4, 1000)
    res = zeno_success(env, ZenoTuning(1.0, 0.0))
    assert math.isfinite(res.log_success)
    assert 0 <= res.success <= 1


def test_weak_coupling_limit():
    # no absorption: the pair swaps through the double-occupancy state and back
    env = GateEnvironment(0.1, 1e-6)
    for eps in (0.5, 3.0, 40.0):
        res = zeno_success(env, ZenoTuning(eps, 0.0))
        assert res.success == pytest.approx(math.exp(-math.pi / eps), rel=1e-9)
        assert res.amp_11 < 0 and not res.conditional_phase_ok


def test_strong_zeno_limit():
    values = []
    for s in (1.0, 10.0, 100.0, 1000.0):
        # absorption grows like s while the linear loss per swap falls like 1/s
        env = GateEnvironment(1.0, 1e3 * s)
        values.append(zeno_success(env, ZenoTuning(1e10 * s**3, 0.0)).success)
    assert all(a < b < 1 for a, b in zip(values, values[1:]))
    assert values[-1] > 0.9999


def test_dimensional_rates_agree():
    p = DimensionalParams(g1=5, g2=5, gamma2=0.1, gamma3=0.1, kappa=1, Delta=0.64, delta=0.0,
                          eps=725)
    a = zeno_rates_dimensional(p)
    b = zeno_rates(BASELINE, TUNED)
    for name in ("r1_ts", "r2_ts", "radicand", "swap_loss_ts", "swap_time"):
        assert getattr(a, name) == pytest.approx(getattr(b, name), rel=1e-12)


def test_vectorized_matches_scalar():
    eps = np.array([10.0, 725.0, 1e4])
    D = np.array([0.5, 6.4, 2.0])
    success, amp = zeno_success_value(0.1, 50.0, 1, eps, D)
    for i in range(3):
        res = zeno_success(BASELINE, ZenoTuning(eps[i], D[i]))
        assert success[i] == pytest.approx(res.success, rel=1e-14)
        assert amp[i] == pytest.approx(res.amp_11, rel=1e-14)


def test_cz_objective_rejects_swapped_pairs():
    env = GateEnvironment(0.1, 1e-3)
    assert zeno_cz_success_value(env.gamma_r, env.omega, 1, 1.0, 0.0) == -np.inf
    assert zeno_cz_success_value(0.1, 50.0, 1, 725.0, 6.4) == pytest.approx(0.5543564060488526)


@settings(max_examples=300, deadline=None)
@given(
    gamma_r=st.floats(1e-3, 1e2), omega=st.floats(1e-3, 1e3), n=st.integers(1, 1000),
    eps=st.floats(1e-2, 1e7), Delta_r=st.floats(-1e3, 1e3),
)
def test_success_is_a_probability(gamma_r, omega, n, eps, Delta_r):
    res = zeno_success(GateEnvironment(gamma_r, omega, n), ZenoTuning(eps, Delta_r))
    assert 0.0 <= res.success <= 1.0
    assert abs(res.amp_11) <= 1.0
