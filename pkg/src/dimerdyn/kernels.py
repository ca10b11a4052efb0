"""Bath kernels Q1, Q2 in dimensionless form, closed-form and quadrature.

Dimensionless kernels (tau = t/beta, eta = beta*omega_c, z = omega/omega_c):

    Q1(tau) = 1/(eta G(2p+2)) int z^{2p} e^{-z} sin(eta tau z) dz
    Q2(tau) = 1/(eta G(2p+2)) int z^{2p} e^{-z} (1-cos(eta tau z)) coth(eta z/2) dz

Closed forms:

    Q1(tau) = Im[(1 - i eta tau)^{-(2p+1)}] / ((2p+1) eta)
    Q2(tau) = Re[f(0) - f(tau)] / ((2p+1) eta),  p != 0
    f(tau)  = eta^{-(2p+1)} [zeta(2p+1, 1/eta + i tau)
                             + zeta(2p+1, 1/eta + 1 + i tau)]

At p = 0 the zeta order hits its pole; the difference f(0) - f(tau) stays
finite and is evaluated through digamma.  Physical kernels relate to the
dimensionless ones by Q_{1,2}(t) = beta*nu * Q_{1,2}(t/beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.integrate import quad

from .specfun import digamma, _digamma_vec, _hurwitz_zeta_continued, _zeta_vec

__all__ = ["KernelSet", "KernelDivergence", "coth_half", "q1_vec", "q2_vec"]

_ZMAX = 70.0  # e^{-z} z^{2p} is < 1e-24 here for all supported p


class KernelDivergence(ValueError):
    """Raised when a saturation quantity is requested for p <= 0."""


def coth_half(x: float) -> float:
    """coth(x/2) for x > 0, cancellation-safe for small x."""
    if x > 1e-3:
        return 1.0 + 2.0 / math.expm1(x)
    y = 0.5 * x
    return 1.0 / y + y / 3.0 - y ** 3 / 45.0


def _q1_closed(p: float, eta: float, tau: float) -> float:
    s = 2.0 * p + 1.0
    return (complex(1.0, -eta * tau) ** (-s)).imag / (s * eta)


def _f_zeta(p: float, eta: float, tau: float) -> complex:
    s = 2.0 * p + 1.0
    q = complex(1.0 / eta, tau)
    return (_hurwitz_zeta_continued(s, q)
            + _hurwitz_zeta_continued(s, q + 1.0)) / eta ** s


def _q2_closed(p: float, eta: float, tau: float) -> float:
    if tau == 0.0:
        return 0.0
    if p == 0.0:
        # lim_{s->1} [zeta(s,a) - zeta(s,b)] = psi(b) - psi(a): the pole of
        # zeta(2p+1, .) cancels in f(0) - f(tau).
        x = 1.0 / eta
        d = (digamma(complex(x, tau)) + digamma(complex(x + 1.0, tau))
             - digamma(x) - digamma(x + 1.0))
        return d.real / (eta * eta)
    s = 2.0 * p + 1.0
    return (_f_zeta(p, eta, 0.0) - _f_zeta(p, eta, tau)).real / (s * eta)


def q1_vec(p: float, eta: float, tau) -> "np.ndarray":
    """Closed-form Q1 over an array of tau >= 0."""
    tau = np.asarray(tau, dtype=float)
    s = 2.0 * p + 1.0
    return ((1.0 - 1j * eta * tau) ** (-s)).imag / (s * eta)


def q2_vec(p: float, eta: float, tau) -> "np.ndarray":
    """Closed-form Q2 over an array of tau >= 0 (vectorized zeta/digamma)."""
    tau = np.asarray(tau, dtype=float)
    x = 1.0 / eta
    q = x + 1j * tau
    if p == 0.0:
        d = (_digamma_vec(q) + _digamma_vec(q + 1.0)
             - digamma(x) - digamma(x + 1.0))
        return d.real / (eta * eta)
    s = 2.0 * p + 1.0
    f0 = (_hurwitz_zeta_continued(s, x)
          + _hurwitz_zeta_continued(s, x + 1.0))
    f = _zeta_vec(s, q) + _zeta_vec(s, q + 1.0)
    return (f0 - f).real / (s * eta ** (s + 1.0))


def _q1_quadrature(p: float, eta: float, tau: float) -> float:
    if tau == 0.0:
        return 0.0
    w = eta * tau
    tp = 2.0 * p
    pref = 1.0 / (eta * math.gamma(tp + 2.0))
    z0 = min(1.0, math.pi / (2.0 * w))
    head, _ = quad(lambda z: z ** tp * math.exp(-z) * math.sin(w * z),
                   0.0, z0, epsabs=1e-13, epsrel=1e-11, limit=200)
    osc, _ = quad(lambda z: z ** tp * math.exp(-z), z0, _ZMAX,
                  weight="sin", wvar=w, epsabs=1e-13, epsrel=1e-11, limit=400)
    return pref * (head + osc)


def _q2_quadrature(p: float, eta: float, tau: float) -> float:
    if tau == 0.0:
        return 0.0
    w = eta * tau
    tp = 2.0 * p
    pref = 1.0 / (eta * math.gamma(tp + 2.0))

    def weighted(z: float) -> float:
        return z ** tp * math.exp(-z) * coth_half(eta * z)

    # near z=0 the combination (1-cos) * coth tames the z^{2p-1} growth;
    # split there so the oscillatory pieces can use QAWO separately.
    z0 = min(1.0, math.pi / (2.0 * w))
    head, _ = quad(lambda z: weighted(z) * (1.0 - math.cos(w * z)),
                   0.0, z0, epsabs=1e-13, epsrel=1e-11, limit=200)
    flat, _ = quad(weighted, z0, _ZMAX, epsabs=1e-13, epsrel=1e-11, limit=200)
    osc, _ = quad(weighted, z0, _ZMAX, weight="cos", wvar=w,
                  epsabs=1e-13, epsrel=1e-11, limit=400)
    return pref * (head + flat - osc)


@dataclass
class KernelSet:
    """Evaluator for the dimensionless kernels of one reservoir (p, eta).

    method selects the evaluation route; both must agree to 1e-6 relative
    wherever defined.  Results are memoized per tau (pure functions, so the
    cache is safe under concurrent readers).
    """

    p: float
    eta: float
    method: Literal["closed_form", "quadrature"] = "closed_form"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.p > -0.5:
            raise ValueError(f"requires p > -1/2, got {self.p}")
        if not self.eta > 0.0:
            raise ValueError(f"requires eta > 0, got {self.eta}")

    def q1(self, tau: float) -> float:
        if tau < 0.0:
            raise ValueError(f"tau must be >= 0, got {tau}")
        key = ("q1", tau)
        try:
            return self._cache[key]
        except KeyError:
            pass
        if self.method == "closed_form":
            val = _q1_closed(self.p, self.eta, tau)
        else:
            val = _q1_quadrature(self.p, self.eta, tau)
        self._cache[key] = val
        return val

    def q2(self, tau: float) -> float:
        if tau < 0.0:
            raise ValueError(f"tau must be >= 0, got {tau}")
        key = ("q2", tau)
        try:
            return self._cache[key]
        except KeyError:
            pass
        if self.method == "closed_form":
            val = _q2_closed(self.p, self.eta, tau)
        else:
            val = _q2_quadrature(self.p, self.eta, tau)
        self._cache[key] = val
        return val

    def q0(self) -> float:
        """Saturation value lim_{tau->inf} Q2(tau); finite only for p > 0."""
        if self.p <= 0.0:
            raise KernelDivergence(
                f"Q2 is unbounded for p <= 0 (p={self.p}); full decoherence")
        return (_f_zeta(self.p, self.eta, 0.0)).real / ((2.0 * self.p + 1.0) * self.eta)

    def q0_small_eta(self) -> float:
        """Leading eta << 1 asymptote of q0: 1/((2p+1) p eta^2)."""
        if self.p <= 0.0:
            raise KernelDivergence("q0 asymptote defined for p > 0 only")
        return 1.0 / ((2.0 * self.p + 1.0) * self.p * self.eta ** 2)

    def saturation_time(self, tol: float = 1e-2) -> float:
        """Smallest tau with |Q2(tau) - Q0| <= tol * Q0 (doubling + bisection)."""
        if self.p <= 0.0:
            raise KernelDivergence("no saturation for p <= 0")
        q0 = self.q0()
        target = tol * q0

        def gap(tau):
            return q0 - self.q2(tau)

        lo, hi = 0.0, 1.0 / self.eta
        for _ in range(200):
            if gap(hi) <= target:
                break
            lo, hi = hi, 2.0 * hi
        else:
            raise RuntimeError("saturation search did not converge")
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if gap(mid) <= target:
                hi = mid
            else:
                lo = mid
            if hi - lo <= 1e-9 * max(1.0, hi):
                break
        return hi

    # -- asymptotic approximations ------------------------------------------

    def q_asymptotic(self, tau: float, regime: str) -> tuple[float, float, list[str]]:
        """Tabulated asymptotic (Q1, Q2) for a named regime.

        Regimes: 'eta_tau_small', 'eta_large', 'neg_p_large_tau',
        'eta_small'.  Precondition violations are returned as warnings,
        never raised.
        """
        p, eta = self.p, self.eta
        s = 2.0 * p + 1.0
        w = eta * tau
        warnings: list[str] = []
        if regime == "eta_tau_small":
            if w >= 0.1:
                warnings.append(f"eta*tau = {w:.3g} is not << 1")
            q1 = tau
            if eta < 0.1:
                q2 = tau * tau
            else:
                z = _hurwitz_zeta_continued(s + 2.0, 1.0 / eta).real
                q2 = (p + 1.0) * (2.0 * z - eta ** (s + 2.0)) * tau * tau / eta ** (s + 1.0)
            return q1, q2, warnings
        if regime == "eta_large":
            if eta <= 1.0:
                warnings.append(f"eta = {eta:.3g} is not >> 1")
            if w <= 1.0:
                warnings.append(f"eta*tau = {w:.3g} is not >> 1")
            if p <= 0.0:
                warnings.append(f"p = {p} is not > 0")
            q1 = self._q1_large_tau(tau, warnings)
            q2 = (1.0 - complex(1.0, w) ** (-s)).real / (s * eta)
            return q1, q2, warnings
        if regime in ("neg_p_large_tau", "eta_small"):
            # the table repeats the same expression for these two rows;
            # implemented as written (see module docs).
            if regime == "neg_p_large_tau":
                if not (-0.5 < p < 0.0):
                    warnings.append(f"p = {p} is not in (-1/2, 0)")
                if w <= 1.0:
                    warnings.append(f"eta*tau = {w:.3g} is not >> 1")
            else:
                if eta > 0.1:
                    warnings.append(f"eta = {eta:.3g} is not << 1")
                if tau <= 0.0:
                    warnings.append("tau must be > 0")
            q1 = self._q1_large_tau(tau, warnings)
            q2 = (1.0 - complex(1.0, w) ** (-2.0 * p)).real / (s * p * eta * eta)
            return q1, q2, warnings
        raise ValueError(f"unknown regime {regime!r}")

    def _q1_large_tau(self, tau: float, warnings: list[str]) -> float:
        p, eta = self.p, self.eta
        w = eta * tau
        if w <= 1.0:
            warnings.append(f"eta*tau = {w:.3g} is not >> 1 for the Q1 asymptote")
            return tau
        s = 2.0 * p + 1.0
        return (tau * math.cos(math.pi * p) / (s * w ** (s + 1.0))
                + tau * math.sin(math.pi * p) / w ** (s + 2.0))
