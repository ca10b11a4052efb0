"""Bath spectral-density models, derived scalars, units, dimensionless mapping.

Internal unit system: hbar = kB = 1, energies in 1/ps, times in ps.
meV is accepted at the boundary only; 1 meV = 1.519267 ps^-1
(CODATA hbar = 0.6582120 meV*ps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

__all__ = [
    "MEV_TO_PS_INV",
    "DimerParams",
    "SpectralComponent",
    "SpectralModel",
    "DerivedScalars",
    "DimensionlessParams",
    "derive_scalars",
    "to_dimensionless",
    "from_dimensionless",
    "j_from_frequency_density",
    "j_from_isotropic_form_factor_3d",
]

# 1 meV in ps^-1.  (Literature sometimes uses 25 meV ~ 37.88 ps^-1, i.e. a
# factor 1.5152; we keep the CODATA value and document the ~0.3% difference.)
MEV_TO_PS_INV = 1.0 / 0.6582120


@dataclass(frozen=True)
class DimerParams:
    """Two-level dimer parameters.

    epsilon, v in ps^-1; lambda1/lambda2 carry units energy^{1/2} so that
    lambda^2 is an energy; beta in ps.  v = 0 selects the exact V=0
    decoherence mode downstream.
    """

    epsilon: float
    v: float
    lambda1: float
    lambda2: float
    beta: float

    def __post_init__(self):
        if not self.beta > 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")

    @property
    def temperature(self) -> float:
        return 1.0 / self.beta


@dataclass(frozen=True)
class SpectralComponent:
    """One reservoir's spectral density J(w) = a_p * w^{2p+2} * exp(-w/omega_c)."""

    p: float
    omega_c: float
    a_p: float = 1.0

    def __post_init__(self):
        if not self.p > -0.5:
            raise ValueError(f"infrared exponent must satisfy p > -1/2, got {self.p}")
        if not self.omega_c > 0.0:
            raise ValueError(f"omega_c must be positive, got {self.omega_c}")
        if not self.a_p > 0.0:
            raise ValueError(f"a_p must be positive, got {self.a_p}")

    def eval_j(self, omega: float) -> float:
        """Spectral density at frequency omega >= 0."""
        if omega < 0.0:
            raise ValueError(f"omega must be nonnegative, got {omega}")
        if omega == 0.0:
            return 0.0
        return self.a_p * omega ** (2.0 * self.p + 2.0) * math.exp(-omega / self.omega_c)

    @property
    def nu(self) -> float:
        """Bath strength nu = int J(w)/w dw = a_p * omega_c^{2p+2} * Gamma(2p+2)."""
        return self.a_p * self.omega_c ** (2.0 * self.p + 2.0) * math.gamma(2.0 * self.p + 2.0)

    def b_coef(self) -> Optional[float]:
        """B = int J(w)/w^3 dw = a_p * omega_c^{2p} * Gamma(2p); None if p <= 0.

        The integral diverges at w = 0 for p <= 0.
        """
        if self.p <= 0.0:
            return None
        return self.a_p * self.omega_c ** (2.0 * self.p) * math.gamma(2.0 * self.p)


@dataclass(frozen=True)
class SpectralModel:
    """Reservoir topology: one collective bath or a pair of local baths."""

    collective: Optional[SpectralComponent] = None
    local: Optional[tuple[SpectralComponent, SpectralComponent]] = None

    def __post_init__(self):
        if (self.collective is None) == (self.local is None):
            raise ValueError("specify exactly one of collective= or local=")

    @property
    def is_collective(self) -> bool:
        return self.collective is not None

    @property
    def components(self) -> tuple[SpectralComponent, ...]:
        if self.collective is not None:
            return (self.collective,)
        return self.local


@dataclass(frozen=True)
class DerivedScalars:
    """Scalar quantities derived from dimer + bath parameters (all in ps units)."""

    nu: tuple[float, ...]            # per component
    alpha1: float
    alpha2: float
    epsilon_hat: float               # epsilon - (alpha1 - alpha2) / 2
    eps_rec1: float                  # reconstruction energies (collective: may be < 0)
    eps_rec2: float
    b_coef: tuple[Optional[float], ...]
    is_collective: bool


@dataclass(frozen=True)
class DimensionlessParams:
    """The dimensionless reparameterization: eps = beta*epsilon, etc."""

    eps: float                       # beta*epsilon
    eps_rec1: float                  # beta*eps_rec1
    eps_rec2: float
    eta: tuple[float, ...]           # beta*omega_c per component
    p: tuple[float, ...]
    beta_v: float                    # beta*V
    is_collective: bool

    @property
    def eps_eff(self) -> float:
        """Renormalized bias beta*epsilon_hat = eps - (eps_rec1 - eps_rec2)/2."""
        return self.eps - 0.5 * (self.eps_rec1 - self.eps_rec2)


def derive_scalars(dimer: DimerParams, model: SpectralModel) -> DerivedScalars:
    """Bath strength nu, renormalizations alpha_j, epsilon_hat, reconstruction
    energies and the high-temperature B coefficient."""
    l1, l2 = dimer.lambda1, dimer.lambda2
    if model.is_collective:
        comp = model.collective
        nu = comp.nu
        alpha1 = 2.0 * l1 * l1 * nu / math.pi
        alpha2 = 2.0 * l2 * l2 * nu / math.pi
        eps_rec1 = 2.0 * nu / math.pi * (l1 * l1 - l1 * l2)
        eps_rec2 = 2.0 * nu / math.pi * (l2 * l2 - l1 * l2)
        nus = (nu,)
        bs = (comp.b_coef(),)
    else:
        c1, c2 = model.local
        nu1, nu2 = c1.nu, c2.nu
        alpha1 = 2.0 * l1 * l1 * nu1 / math.pi
        alpha2 = 2.0 * l2 * l2 * nu2 / math.pi
        eps_rec1 = 2.0 * nu1 / math.pi * l1 * l1
        eps_rec2 = 2.0 * nu2 / math.pi * l2 * l2
        nus = (nu1, nu2)
        bs = (c1.b_coef(), c2.b_coef())
    epsilon_hat = dimer.epsilon - 0.5 * (alpha1 - alpha2)
    return DerivedScalars(
        nu=nus, alpha1=alpha1, alpha2=alpha2, epsilon_hat=epsilon_hat,
        eps_rec1=eps_rec1, eps_rec2=eps_rec2, b_coef=bs,
        is_collective=model.is_collective,
    )


def to_dimensionless(dimer: DimerParams, model: SpectralModel) -> DimensionlessParams:
    """Map physical parameters to the dimensionless set (eps, eps^c/l_i, eta)."""
    sc = derive_scalars(dimer, model)
    beta = dimer.beta
    return DimensionlessParams(
        eps=beta * dimer.epsilon,
        eps_rec1=beta * sc.eps_rec1,
        eps_rec2=beta * sc.eps_rec2,
        eta=tuple(beta * c.omega_c for c in model.components),
        p=tuple(c.p for c in model.components),
        beta_v=beta * dimer.v,
        is_collective=model.is_collective,
    )


def from_dimensionless(dp: DimensionlessParams, beta: float,
                       lambda_sign: float = 1.0) -> tuple[DimerParams, SpectralModel]:
    """Invert :func:`to_dimensionless` at a given beta.

    The amplitude a_p is fixed so that nu reproduces the requested
    reconstruction energies (rates do not depend on a_p once those are
    fixed).  For the collective topology the couplings are recovered from
    eps_rec1 + eps_rec2 = (2 nu/pi)(l1-l2)^2 and
    eps_rec1 - eps_rec2 = (2 nu/pi)(l1^2 - l2^2) with l1 - l2 > 0 chosen by
    ``lambda_sign``; for local topologies l_j = sqrt(pi*eps_rec_j/(2 nu_j)).
    """
    epsilon = dp.eps / beta
    v = dp.beta_v / beta
    comps = []
    for p, eta in zip(dp.p, dp.eta):
        omega_c = eta / beta
        # a_p chosen to make nu = 1 (in ps^-1); couplings absorb the rest
        a_p = 1.0 / (omega_c ** (2.0 * p + 2.0) * math.gamma(2.0 * p + 2.0))
        comps.append(SpectralComponent(p=p, omega_c=omega_c, a_p=a_p))
    if dp.is_collective:
        model = SpectralModel(collective=comps[0])
        nu = comps[0].nu
        s = (dp.eps_rec1 + dp.eps_rec2) / beta   # (2 nu/pi)(l1-l2)^2
        d = (dp.eps_rec1 - dp.eps_rec2) / beta   # (2 nu/pi)(l1^2-l2^2)
        if s < 0.0:
            raise ValueError("eps_rec1 + eps_rec2 must be >= 0 for a collective bath")
        diff = lambda_sign * math.sqrt(math.pi * s / (2.0 * nu))  # l1 - l2
        if diff == 0.0:
            if d != 0.0:
                raise ValueError("eps_rec1 != eps_rec2 requires lambda1 != lambda2")
            l1 = l2 = 0.0
        else:
            tot = math.pi * d / (2.0 * nu * diff)                 # l1 + l2
            l1 = 0.5 * (tot + diff)
            l2 = 0.5 * (tot - diff)
    else:
        model = SpectralModel(local=(comps[0], comps[1]))
        if dp.eps_rec1 < 0.0 or dp.eps_rec2 < 0.0:
            raise ValueError("local reconstruction energies must be >= 0")
        l1 = math.sqrt(math.pi * dp.eps_rec1 / (2.0 * beta * comps[0].nu))
        l2 = math.sqrt(math.pi * dp.eps_rec2 / (2.0 * beta * comps[1].nu))
    dimer = DimerParams(epsilon=epsilon, v=v, lambda1=l1, lambda2=l2, beta=beta)
    return dimer, model


def j_from_frequency_density(rho: Callable[[float], float],
                             g: Callable[[float], float],
                             omega: float) -> float:
    """Molecular-reservoir mapping J(w) = pi * rho(w) * |g(w)|^2."""
    return math.pi * rho(omega) * abs(g(omega)) ** 2


def j_from_isotropic_form_factor_3d(g: Callable[[float], float], omega: float) -> float:
    """Dispersive 3d mapping J(w) = (pi/2) w^2 * int_{S^2} |g|^2 dSigma for
    direction-independent g, i.e. 2 pi^2 w^2 |g(w)|^2."""
    return 2.0 * math.pi ** 2 * omega ** 2 * abs(g(omega)) ** 2
