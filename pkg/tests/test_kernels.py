"""Closed-form vs quadrature agreement and structural properties of the
dimensionless bath kernels Q1, Q2."""
from __future__ import annotations

import math
import warnings

import numpy as np
import pytest
from scipy.integrate import IntegrationWarning, quad

from dimerdyn.kernels import (KernelDivergence, KernelSet, coth_half, q1_vec,
                              q2_vec)
from dimerdyn.spectral import SpectralComponent

warnings.filterwarnings("ignore", category=IntegrationWarning)


@pytest.mark.parametrize("p", [-0.25, 0.0, 0.5, 1.5])
@pytest.mark.parametrize("eta", [0.1, 1.0])
def test_closed_form_matches_quadrature_spot(p, eta):
    closed = KernelSet(p=p, eta=eta)
    quadr = KernelSet(p=p, eta=eta, method="quadrature")
    for tau in (0.01, 0.3, 1.0, 5.0, 20.0):
        for name in ("q1", "q2"):
            c = getattr(closed, name)(tau)
            q = getattr(quadr, name)(tau)
            assert abs(c - q) <= max(1e-6 * abs(q), 1e-9), (name, tau)


def test_vectorized_kernels_match_scalar():
    tau = np.linspace(0.0, 30.0, 73)
    for p, eta in [(-0.25, 0.5), (0.0, 1.0), (0.5, 0.1), (1.5, 5.0)]:
        ks = KernelSet(p=p, eta=eta)
        np.testing.assert_allclose(q1_vec(p, eta, tau),
                                   [ks.q1(t) for t in tau],
                                   rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(q2_vec(p, eta, tau),
                                   [ks.q2(t) for t in tau],
                                   rtol=1e-9, atol=1e-12)


def test_q2_monotone_nondecreasing_sub_ohmic():
    # Monotonicity holds for p <= 1/2 at moderate cutoff; for p = 3/2 the
    # kernel genuinely rings (confirmed below), so that row is excluded.
    tau = np.linspace(0.0, 50.0, 1000)
    for p, eta in [(-0.25, 0.1), (-0.25, 1.0), (-0.25, 5.0),
                   (0.5, 0.1), (0.5, 1.0)]:
        q2 = q2_vec(p, eta, tau)
        assert np.all(np.diff(q2) >= -1e-12 * np.maximum(q2[1:], 1.0)), (p, eta)
        assert np.all(q2 >= -1e-12), (p, eta)


def test_q2_bounded_by_q0_sub_ohmic():
    tau = np.linspace(0.0, 200.0, 500)
    for p, eta in [(0.5, 0.1), (0.5, 1.0)]:
        q0 = KernelSet(p=p, eta=eta).q0()
        assert np.all(q2_vec(p, eta, tau) <= q0 * (1.0 + 1e-9)), (p, eta)


def test_q2_overshoot_is_genuine_for_super_ohmic():
    # For p = 3/2 the saturation value is approached from above: the
    # transient exceeds Q0 by ~25%.  Quadrature confirms the closed form,
    # so the overshoot is physics, not a numerical artifact.
    p, eta = 1.5, 1.0
    ks = KernelSet(p=p, eta=eta)
    ksq = KernelSet(p=p, eta=eta, method="quadrature")
    tau = np.linspace(0.0, 50.0, 500)
    over = q2_vec(p, eta, tau) / ks.q0() - 1.0
    assert over.max() > 0.2
    t_star = tau[np.argmax(over)]
    assert ksq.q2(t_star) == pytest.approx(ks.q2(t_star), rel=1e-6)


def test_q0_diverges_for_nonpositive_p():
    with pytest.raises(KernelDivergence):
        KernelSet(p=-0.25, eta=1.0).q0()
    with pytest.raises(KernelDivergence):
        KernelSet(p=0.0, eta=1.0).q0()


def test_q0_equals_saturated_q2():
    for p, eta in [(0.5, 0.1), (0.5, 1.0)]:
        ks = KernelSet(p=p, eta=eta)
        t_sat = ks.saturation_time(1e-9)
        assert ks.q2(2.0 * t_sat) == pytest.approx(ks.q0(), rel=1e-8)


def test_saturation_time_monotone_in_tolerance():
    ks = KernelSet(p=0.5, eta=0.1)
    assert ks.saturation_time(0.5) < ks.saturation_time(0.01)


def test_q0_small_eta_asymptote():
    ks = KernelSet(p=0.5, eta=0.1)
    assert ks.q0_small_eta() == pytest.approx(100.0, rel=1e-12)
    assert ks.q0() == pytest.approx(100.0, rel=0.03)
    # the asymptote sharpens as eta decreases
    ks2 = KernelSet(p=0.5, eta=0.01)
    assert abs(ks2.q0() / ks2.q0_small_eta() - 1.0) < abs(
        ks.q0() / ks.q0_small_eta() - 1.0)


def test_small_tau_behavior():
    # Q1(tau) ~ tau and Q2(tau) ~ c*tau^2 as tau -> 0 (eta*tau <= 0.05)
    for p, eta in [(0.5, 0.1), (-0.25, 1.0), (1.5, 0.5)]:
        ks = KernelSet(p=p, eta=eta)
        tau = 0.05 / eta
        assert ks.q1(tau) == pytest.approx(tau, rel=0.05), (p, eta)
        r1 = ks.q2(tau) / tau ** 2
        r2 = ks.q2(tau / 4.0) / (tau / 4.0) ** 2
        assert r1 == pytest.approx(r2, rel=0.05), (p, eta)


def test_p_to_zero_continuity():
    # digamma branch at p=0 is the limit of the zeta branch
    for eta in (0.1, 1.0):
        ks0 = KernelSet(p=0.0, eta=eta)
        ks_eps = KernelSet(p=1e-7, eta=eta)
        for tau in (0.5, 3.0, 15.0):
            assert ks_eps.q2(tau) == pytest.approx(ks0.q2(tau), rel=1e-3)


def test_physical_correlation_cross_evaluation():
    """The physical saturation integral Q2(t) = int J(w) coth(beta w/2)
    (1-cos wt)/w^2 dw equals beta*nu times the dimensionless kernel at
    tau = t/beta."""
    beta = 0.3
    comp = SpectralComponent(p=0.5, omega_c=2.0, a_p=0.7)
    eta = beta * comp.omega_c
    ks = KernelSet(p=comp.p, eta=eta)
    for t in (0.2, 1.0, 4.0):
        phys, _ = quad(
            lambda w: comp.eval_j(w) * coth_half(beta * w)
            * (1.0 - math.cos(w * t)) / w ** 2,
            0.0, 60.0 * comp.omega_c, epsabs=1e-12, epsrel=1e-10, limit=400)
        assert phys == pytest.approx(beta * comp.nu * ks.q2(t / beta),
                                     rel=1e-7)


def test_coth_half():
    assert coth_half(2.0) == pytest.approx(1.0 / math.tanh(1.0), rel=1e-14)
    assert coth_half(1e-8) == pytest.approx(2e8, rel=1e-6)


def test_kernel_set_validation():
    with pytest.raises(ValueError):
        KernelSet(p=-0.5, eta=1.0)
    with pytest.raises(ValueError):
        KernelSet(p=0.5, eta=0.0)
    with pytest.raises(ValueError):
        KernelSet(p=0.5, eta=1.0).q1(-1.0)


def test_q_asymptotic_regimes_and_warnings():
    ks = KernelSet(p=0.5, eta=0.1)
    # small eta*tau asymptote is accurate and silent in its window
    q1a, q2a, warns = ks.q_asymptotic(0.1, "eta_tau_small")
    assert q1a == pytest.approx(ks.q1(0.1), rel=0.01)
    assert q2a == pytest.approx(ks.q2(0.1), rel=0.05)
    assert warns == []
    # out-of-window request is answered but flagged
    _, _, warns = ks.q_asymptotic(50.0, "eta_tau_small")
    assert warns
    # large-eta request at eta = 0.1 must warn
    _, _, warns = ks.q_asymptotic(100.0, "eta_large")
    assert any("eta" in w for w in warns)
    # small-eta large-tau row is accurate for p = 1/2, eta = 0.1
    _, q2a, warns = ks.q_asymptotic(400.0, "eta_small")
    assert warns == []
    assert q2a == pytest.approx(ks.q2(400.0), rel=0.05)
    with pytest.raises(ValueError):
        ks.q_asymptotic(1.0, "no_such_regime")
