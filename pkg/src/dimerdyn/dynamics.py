"""Time-domain observables: populations, coherences, decoherence factors.

Main-term expressions only: the remainder R(t) and the O(V) offset of the
underlying resonance expansion are not modeled.  All trajectory routines
work on dimensionless time tau = t/beta; physical wrappers convert at the
boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kernels import KernelSet, q1_vec, q2_vec
from .spectral import (DimensionlessParams, DimerParams, SpectralModel,
                       to_dimensionless)

__all__ = [
    "Trajectory",
    "GammaInfinity",
    "equilibrium_population",
    "equilibrium_population_physical",
    "population_trajectory",
    "decoherence_factor",
    "gamma_of_tau",
    "gamma_infinity",
    "coherence_trajectory",
    "GammaInfinityDiverges",
]


class GammaInfinityDiverges(ValueError):
    """Raised when a V != 0 main term is requested but Gamma_inf = inf.

    Use the V = 0 exact mode (coherence_trajectory with v_zero=True) or
    report the modulus through decoherence_factor instead.
    """


@dataclass(frozen=True)
class GammaInfinity:
    """Saturation exponent of the V=0 coherence decay.

    finite is False iff some active reservoir has p <= 0 (full
    decoherence); then value is math.inf and the divergence is an in-band
    signal, never an exception.
    """

    finite: bool
    value: float
    detail: str = ""


@dataclass(frozen=True)
class Trajectory:
    """Sampled main-term evolution on a common time grid."""

    times: np.ndarray
    p: np.ndarray | None = None
    rho12_abs: np.ndarray | None = None
    rho12_phase: np.ndarray | None = None
    d_factor: np.ndarray | None = None
    gamma_of_tau: np.ndarray | None = None
    initial_state: tuple = ()
    meta: dict = field(default_factory=dict)


def equilibrium_population(eps_hat: float) -> float:
    """p_inf = 1/(1 + e^{eps_hat}) with eps_hat = beta*(renormalized bias).

    Exact logistic form; the high-temperature linearization
    1/2 - eps_hat/4 is documented but never substituted.
    """
    if eps_hat > 0:
        z = math.exp(-eps_hat)
        return z / (1.0 + z)
    return 1.0 / (1.0 + math.exp(eps_hat))


def equilibrium_population_physical(dimer: DimerParams,
                                    model: SpectralModel) -> float:
    dp = to_dimensionless(dimer, model)
    return equilibrium_population(dp.eps_eff)


def population_trajectory(gamma: float, p0: float, p_inf: float,
                          times) -> Trajectory:
    """p(t) = p_inf + e^{-gamma t}(p0 - p_inf) on the given grid.

    gamma and times must share units (ps^-1 with ps, or gamma*beta with
    tau); the complementary population q = 1 - p follows the same law with
    q_inf = 1 - p_inf.
    """
    if gamma < 0.0:
        raise ValueError("requires gamma >= 0")
    if not 0.0 <= p0 <= 1.0:
        raise ValueError("requires p0 in [0, 1]")
    t = np.asarray(times, dtype=float)
    p = p_inf + np.exp(-gamma * t) * (p0 - p_inf)
    return Trajectory(times=t, p=p, initial_state=(p0,))


def _phase_and_exponent(dp: DimensionlessParams,
                        tau: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(arg, exponent) of D = e^{-i*arg} e^{-exponent} at dimensionless tau."""
    if dp.is_collective:
        p, eta = dp.p[0], dp.eta[0]
        arg = 0.5 * (dp.eps_rec1 - dp.eps_rec2) * q1_vec(p, eta, tau)
        expo = 0.5 * (dp.eps_rec1 + dp.eps_rec2) * q2_vec(p, eta, tau)
        return arg, expo
    arg = (0.5 * dp.eps_rec1 * q1_vec(dp.p[0], dp.eta[0], tau)
           - 0.5 * dp.eps_rec2 * q1_vec(dp.p[1], dp.eta[1], tau))
    expo = (0.5 * dp.eps_rec1 * q2_vec(dp.p[0], dp.eta[0], tau)
            + 0.5 * dp.eps_rec2 * q2_vec(dp.p[1], dp.eta[1], tau))
    return arg, expo


def decoherence_factor(dp: DimensionlessParams, tau) -> np.ndarray:
    """Exact V=0 decoherence factor D(tau), complex, |D(0)| = 1.

    Collective: D = e^{-i (e1-e2)/2 Q1} e^{-(e1+e2)/2 Q2}; local product
    form with per-reservoir kernels and weights e_j/2.
    """
    tau = np.asarray(tau, dtype=float)
    arg, expo = _phase_and_exponent(dp, tau)
    return np.exp(-1j * arg - expo)


def gamma_of_tau(dp: DimensionlessParams, tau) -> np.ndarray:
    """Decoherence exponent Gamma(tau) = sum_j w_j Q2_j(tau), so that
    |D(tau)| = e^{-Gamma(tau)}."""
    tau = np.asarray(tau, dtype=float)
    _, expo = _phase_and_exponent(dp, tau)
    return expo


def gamma_infinity(dp: DimensionlessParams) -> GammaInfinity:
    """lim Gamma(tau): finite iff every active reservoir has p > 0."""
    if dp.is_collective:
        weights = [(0.5 * (dp.eps_rec1 + dp.eps_rec2), dp.p[0], dp.eta[0])]
    else:
        weights = [(0.5 * dp.eps_rec1, dp.p[0], dp.eta[0]),
                   (0.5 * dp.eps_rec2, dp.p[1], dp.eta[1])]
    total = 0.0
    for w, p, eta in weights:
        if w == 0.0:
            continue
        if p <= 0.0:
            return GammaInfinity(
                finite=False, value=math.inf,
                detail=f"reservoir with p={p} <= 0 and nonzero coupling: "
                       "full decoherence, Gamma(tau) grows without bound")
        total += w * KernelSet(p, eta).q0()
    return GammaInfinity(finite=True, value=total)


def coherence_trajectory(dp: DimensionlessParams, gamma_beta: float,
                         lamb_shift_beta: float, rho12_0: complex,
                         tau_grid, v_zero: bool = False) -> Trajectory:
    """Off-diagonal element rho_12(tau), phase convention <1|rho|2>.

    v_zero=True: the exact V=0 law rho12 = e^{-i eps_eff tau} D(tau) rho12_0.
    Otherwise the V^2 main term
        rho12 = e^{-gamma tau / 2} e^{-i tau (eps_eff + x_LS)}
                e^{-Gamma_inf} rho12_0,
    which requires a finite Gamma_inf (p > 0 path).  All rates/energies are
    the dimensionless beta-scaled quantities.
    """
    tau = np.asarray(tau_grid, dtype=float)
    if v_zero:
        d = decoherence_factor(dp, tau)
        rho = np.exp(-1j * dp.eps_eff * tau) * d * rho12_0
        gamma_tau = gamma_of_tau(dp, tau)
        return Trajectory(times=tau, rho12_abs=np.abs(rho),
                          rho12_phase=np.unwrap(np.angle(rho)),
                          d_factor=np.abs(d), gamma_of_tau=gamma_tau,
                          initial_state=(rho12_0,),
                          meta={"mode": "v_zero_exact"})
    ginf = gamma_infinity(dp)
    if not ginf.finite:
        raise GammaInfinityDiverges(ginf.detail)
    rho = (np.exp(-0.5 * gamma_beta * tau)
           * np.exp(-1j * tau * (dp.eps_eff + lamb_shift_beta))
           * math.exp(-ginf.value) * rho12_0)
    return Trajectory(times=tau, rho12_abs=np.abs(rho),
                      rho12_phase=np.unwrap(np.angle(rho)),
                      initial_state=(rho12_0,),
                      meta={"mode": "main_term",
                            "gamma_infinity": ginf.value,
                            "deco_rate": 0.5 * gamma_beta})
