"""Population relaxation, decoherence factor and the saturation exponent."""
from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import make_collective, make_local
from dimerdyn.dynamics import (GammaInfinityDiverges, coherence_trajectory,
                               decoherence_factor, equilibrium_population,
                               gamma_infinity, gamma_of_tau,
                               population_trajectory)
from dimerdyn.kernels import KernelSet


def test_equilibrium_population_values():
    assert equilibrium_population(0.0) == 0.5
    assert equilibrium_population(0.1) == pytest.approx(0.47502, abs=1e-5)
    # sign content: positive bias depletes the upper level
    assert equilibrium_population(1.0) < 0.5 < equilibrium_population(-1.0)
    # overflow-safe extremes
    assert equilibrium_population(1000.0) == pytest.approx(0.0, abs=1e-300)
    assert equilibrium_population(-1000.0) == pytest.approx(1.0, abs=1e-15)


def test_population_trajectory_relaxation():
    gamma, p0 = 0.8, 1.0
    p_inf = equilibrium_population(2.0)
    t = np.linspace(0.0, 20.0, 201)
    p = population_trajectory(gamma, p0, p_inf, t).p
    assert p[0] == pytest.approx(p0, rel=1e-14)
    assert p[-1] == pytest.approx(p_inf, rel=1e-6)
    # exponential half-life of the deviation from equilibrium
    t_half = math.log(2.0) / gamma
    idx = np.argmin(np.abs(t - t_half))
    dev = (p - p_inf) / (p0 - p_inf)
    assert dev[idx] == pytest.approx(2.0 ** (-t[idx] / t_half), rel=1e-10)
    # probability conservation: populations stay in [0, 1]
    assert np.all(p >= 0.0) and np.all(p <= 1.0)


def test_decoherence_factor_initial_value_and_decay():
    tau = np.linspace(0.0, 60.0, 400)
    for dp in (make_collective(), make_local()):
        d = decoherence_factor(dp, tau)
        assert d[0] == pytest.approx(1.0 + 0.0j, abs=1e-12)
        mod = np.abs(d)
        assert np.all(np.diff(mod) <= 1e-12)
        assert np.all(mod <= 1.0 + 1e-12)


def test_gamma_of_tau_matches_decoherence_modulus():
    dp = make_collective(e1=1.4, e2=0.6)
    tau = np.linspace(0.0, 30.0, 50)
    np.testing.assert_allclose(np.abs(decoherence_factor(dp, tau)),
                               np.exp(-gamma_of_tau(dp, tau)),
                               rtol=1e-12)


def test_gamma_infinity_finite_for_positive_p():
    dp = make_collective(e1=2.0, e2=1.0, p=0.5, eta=0.1)
    ginf = gamma_infinity(dp)
    assert ginf.finite
    want = 0.5 * (2.0 + 1.0) * KernelSet(p=0.5, eta=0.1).q0()
    assert ginf.value == pytest.approx(want, rel=1e-10)


def test_gamma_infinity_divergence_signal():
    ginf = gamma_infinity(make_collective(p=-0.25))
    assert not ginf.finite
    assert math.isinf(ginf.value)
    assert "p=-0.25" in ginf.detail


def test_gamma_infinity_local_mixed():
    # only reservoirs with nonzero coupling matter
    dp = make_local(e1=0.0, e2=1.0, p1=-0.25, p2=0.5)
    ginf = gamma_infinity(dp)
    assert ginf.finite
    assert ginf.value == pytest.approx(
        0.5 * KernelSet(p=0.5, eta=0.1).q0(), rel=1e-10)


def test_coherence_main_term_envelope_slope():
    dp = make_collective()
    gamma_beta, x_ls = 0.31, 0.02
    tau = np.linspace(0.0, 10.0, 101)
    traj = coherence_trajectory(dp, gamma_beta, x_ls, 0.5 + 0.1j, tau)
    log_abs = np.log(traj.rho12_abs)
    slopes = np.diff(log_abs) / np.diff(tau)
    np.testing.assert_allclose(slopes, -0.5 * gamma_beta, rtol=1e-10)
    # phase advances at the shifted frequency
    dphase = np.diff(traj.rho12_phase) / np.diff(tau)
    np.testing.assert_allclose(dphase, -(dp.eps_eff + x_ls), rtol=1e-10)


def test_coherence_main_term_requires_finite_saturation():
    dp = make_collective(p=-0.25)
    with pytest.raises(GammaInfinityDiverges):
        coherence_trajectory(dp, 0.3, 0.0, 1.0, np.linspace(0.0, 5.0, 10))


def test_coherence_v_zero_exact_law():
    dp = make_collective(p=-0.25)  # divergent saturation is fine at V = 0
    tau = np.linspace(0.0, 8.0, 60)
    traj = coherence_trajectory(dp, 0.0, 0.0, 1.0 + 0.0j, tau, v_zero=True)
    d = decoherence_factor(dp, tau)
    np.testing.assert_allclose(traj.rho12_abs, np.abs(d), rtol=1e-12)
    want_phase = np.unwrap(np.angle(np.exp(-1j * dp.eps_eff * tau) * d))
    np.testing.assert_allclose(traj.rho12_phase, want_phase, rtol=1e-10,
                               atol=1e-12)
    assert traj.meta["mode"] == "v_zero_exact"
