import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gatecmp.errors import DegenerateTuning, PerturbativityWarning
from gatecmp.params import BASELINE, DimensionalParams, GateEnvironment, PhaseTuning, to_dimensional
from gatecmp.phase import (
    fourth_order_shift,
    phase_gate_time,
    phase_loss_terms,
    phase_populations,
    phase_success,
    phase_success_dimensional,
    phase_success_value,
    real_shift_expanded,
)

BEST = PhaseTuning(delta_r=14.9, Delta_r=6.4)

envs = st.builds(
    GateEnvironment,
    gamma_r=st.floats(1e-2, 10.0),
    omega=st.floats(1.0, 500.0),
    n_atoms=st.integers(1, 1000),
)
tunings = st.builds(PhaseTuning, delta_r=st.floats(-100, 100), Delta_r=st.floats(-100, 100))


def _success_or_none(env, t):
    try:
        return phase_success(env, t)
    except DegenerateTuning:
        return None


# values recomputed independently (mpmath, 30 digits) before being frozen here
def test_baseline_success_and_terms():
    res = phase_success(BASELINE, BEST)
    assert res.success == pytest.approx(0.5693101862629308, rel=1e-12)
    assert res.loss_atomic_upper == pytest.approx(0.2145666873630594, rel=1e-12)
    assert res.loss_cavity_two_photon == pytest.approx(0.00628892186742993, rel=1e-12)
    assert res.loss_cavity_virtual + res.loss_atomic_intermediate == pytest.approx(
        0.2098342045065798, rel=1e-12
    )
    # the combined term splits 1 : N*gamma_r between cavity and atom
    assert res.loss_atomic_intermediate / res.loss_cavity_virtual == pytest.approx(0.1, rel=1e-13)
    assert res.gate_time == pytest.approx(0.0003144460933714964, rel=1e-12)
    assert res.energy_shift_re == pytest.approx(9990.878308919606, rel=1e-12)
    assert res.valid


def test_baseline_near_reported_optimum():
    assert phase_success(BASELINE, BEST).success == pytest.approx(0.57, abs=0.005)


def test_degenerate_tuning_raises():
    with pytest.raises(DegenerateTuning):
        phase_success(BASELINE, PhaseTuning(delta_r=2 / 3, Delta_r=1.0))
    assert phase_success_value(0.1, 50.0, 1, 2 / 3, 1.0) == -np.inf


def test_bad_tuning_gives_raw_negative_success():
    res = phase_success(BASELINE, PhaseTuning(delta_r=1.0, Delta_r=1.0))
    assert res.success < 0
    assert not res.valid


def test_lossless_shift_and_gate_time():
    p = DimensionalParams(g1=1, g2=1, gamma2=0, gamma3=0, kappa=1, Delta=1, delta=2)
    assert fourth_order_shift(p) == pytest.approx(0.5 + 0j, abs=1e-15)
    assert phase_gate_time(p) == pytest.approx(2 * math.pi, rel=1e-15)


def test_shift_resonant_is_imaginary():
    p = DimensionalParams(g1=1, g2=1, gamma2=2, gamma3=2, kappa=1, Delta=0, delta=0)
    shift = fourth_order_shift(p)
    assert shift.real == pytest.approx(0.0, abs=1e-15)
    assert real_shift_expanded(p) == 0.0
    # 1 / (i^2 * i) = i
    assert shift.imag == pytest.approx(1.0, rel=1e-15)


def test_more_atoms_shorten_gate():
    p1 = DimensionalParams(g1=5, g2=5, gamma2=0.1, gamma3=0.1, kappa=1, Delta=0.64, delta=1.49)
    p2 = DimensionalParams(g1=5, g2=5, gamma2=0.1, gamma3=0.1, kappa=1, Delta=0.64, delta=1.49,
                           n_atoms=2)
    assert phase_gate_time(p2) == pytest.approx(phase_gate_time(p1) / 2, rel=1e-15)


def test_dimensional_gate_time_matches_dimensionless():
    p = DimensionalParams(g1=5, g2=5, gamma2=0.1, gamma3=0.1, kappa=1, Delta=0.64, delta=1.49)
    # dimensionless gate time is in units of 1/Gamma
    assert phase_gate_time(p) == pytest.approx(phase_success(BASELINE, BEST).gate_time / 0.1,
                                               rel=1e-12)


def test_populations():
    with pytest.warns(PerturbativityWarning):
        pops = phase_populations(BASELINE, BEST)
    assert pops.rho22 == pytest.approx(10000 / 164.84, rel=1e-14)
    assert pops.rho11 == 1.0
    with pytest.warns(PerturbativityWarning):
        pops = phase_populations(GateEnvironment(0.1, 1.0), PhaseTuning(0.0, 0.0))
    assert (pops.rho22, pops.rho33) == (4.0, 16.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        weak = phase_populations(GateEnvironment(0.1, 1e-6), BEST)
    assert weak.rho22 < 1e-12 and weak.rho33 < 1e-20 and weak.perturbative


def test_many_atom_limit():
    t = BEST
    lower, upper = 4 * t.Delta_r**2 + 1, 4 * t.delta_r**2 + 1
    den = abs(4 * t.delta_r * t.Delta_r**2 - 2 * t.Delta_r - t.delta_r)
    limit = 1 - math.pi * lower / den - math.pi * lower * upper / (4 * 50.0**2 * den)
    res = phase_success(GateEnvironment(0.1, 50.0, 10**9), t)
    assert res.success == pytest.approx(limit, abs=1e-8)


def test_single_atom_expression():
    # the N-atom expression at N = 1 against the single-atom layout
    g, om, t = 0.1, 50.0, BEST
    lower, upper = 4 * t.Delta_r**2 + 1, 4 * t.delta_r**2 + 1
    den = abs(4 * t.delta_r * t.Delta_r**2 - 2 * t.Delta_r - t.delta_r)
    single = (1 - math.pi * lower / den - math.pi * lower**2 * upper / (8 * g * om**4 * den)
              - math.pi * (1 + g) * lower * upper / (4 * g * om**2 * den))
    assert phase_success(BASELINE, t).success == pytest.approx(single, rel=1e-14)


def test_vectorized_matches_scalar():
    d = np.array([5.0, 14.9, 30.0])
    D = np.array([2.0, 6.4, 10.0])
    vec = phase_success_value(0.1, 50.0, 1, d, D)
    for i in range(3):
        assert vec[i] == phase_success(BASELINE, PhaseTuning(d[i], D[i])).success


@settings(max_examples=300, deadline=None)
@given(env=envs, t=tunings)
def test_loss_accounting(env, t):
    res = _success_or_none(env, t)
    assume(res is not None)
    _, upper, two, virtual, inter = phase_loss_terms(
        env.gamma_r, env.omega, env.n_atoms, t.delta_r, t.Delta_r
    )
    assert res.success == 1 - (upper + two + (virtual + inter))
    assert all(v >= 0 for v in res.losses.values())
    total = sum(res.losses.values())
    assert abs(res.success + total - 1) <= 1e-14 * max(1.0, total)


@settings(max_examples=200, deadline=None)
@given(env=envs, t=tunings, factor=st.integers(2, 50))
def test_success_nondecreasing_in_atom_number(env, t, factor):
    res = _success_or_none(env, t)
    assume(res is not None and 0 < res.success < 1)
    more = phase_success(env.with_(n_atoms=env.n_atoms * factor), t)
    assert more.success >= res.success


@settings(max_examples=300, deadline=None)
@given(
    g1=st.floats(1e-3, 1e3), g2=st.floats(1e-3, 1e3), gamma2=st.floats(1e-3, 1e2),
    gamma3=st.floats(1e-3, 1e2), Delta=st.floats(-1e3, 1e3), delta=st.floats(-1e3, 1e3),
)
def test_real_shift_two_forms(g1, g2, gamma2, gamma3, Delta, delta):
    p = DimensionalParams(g1=g1, g2=g2, gamma2=gamma2, gamma3=gamma3, kappa=1,
                          Delta=Delta, delta=delta)
    shift = fourth_order_shift(p)
    # rounding is relative to the size of the complex shift, not of its real part
    assert abs(shift.real - real_shift_expanded(p)) <= 1e-13 * abs(shift)


@settings(max_examples=300, deadline=None)
@given(env=envs, t=tunings)
def test_dimensional_path_agrees(env, t):
    res = _success_or_none(env, t)
    assume(res is not None and abs(res.success) > 0.05)
    full = phase_success_dimensional(to_dimensional(env, t))
    assert full.success == pytest.approx(res.success, rel=1e-12)
