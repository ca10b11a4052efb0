"""Validity diagnostics: regime inequalities, coupling bounds, windows.

Every "<<" check is reported as an auditable Flag carrying both sides of
the inequality and the margin ratio small/large.  Because the source
analysis never quantifies "much less than", the status is three-valued:
ratio <= 0.1 "satisfied", 0.1 < ratio < 1 "marginal", ratio >= 1
"violated".  The undetermined constants of the coupling bounds default to
1 and are exposed as parameters (order-of-magnitude conventions, not
derived values).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .spectral import DimensionlessParams, DimerParams, SpectralModel, \
    derive_scalars, to_dimensionless

__all__ = [
    "Flag",
    "RegimeReport",
    "check_marcus_regime",
    "check_high_temp_partial_regime",
    "coupling_constraints",
    "usefulness_window",
]

SATISFIED = "satisfied"
MARGINAL = "marginal"
VIOLATED = "violated"


@dataclass(frozen=True)
class Flag:
    """One 'small << large' inequality with its audit trail."""

    name: str
    small: float
    large: float

    @property
    def ratio(self) -> float:
        if self.large == 0.0:
            return math.inf
        return abs(self.small) / abs(self.large)

    @property
    def status(self) -> str:
        r = self.ratio
        if r <= 0.1:
            return SATISFIED
        if r < 1.0:
            return MARGINAL
        return VIOLATED

    @property
    def ok(self) -> bool:
        return self.status == SATISFIED


@dataclass(frozen=True)
class RegimeReport:
    """Bundle of named flags plus derived bound quantities."""

    flags: tuple[Flag, ...]
    xi: float | tuple[float, ...] | None = None
    theta: float | None = None
    v0_bound: float | None = None
    usefulness_window: tuple[float, float] | None = None
    notes: tuple[str, ...] = ()
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        worst = SATISFIED
        for f in self.flags:
            if f.status == VIOLATED:
                return VIOLATED
            if f.status == MARGINAL:
                worst = MARGINAL
        return worst

    @property
    def ok(self) -> bool:
        return self.status == SATISFIED


def _etas(dp: DimensionlessParams) -> tuple[float, ...]:
    return dp.eta if not dp.is_collective else (dp.eta[0],)


def check_marcus_regime(dp: DimensionlessParams) -> RegimeReport:
    """Generalized-Marcus validity: omega_c << T for every reservoir and
    omega_c^2 << T * (sum of reorganization energies), in dimensionless
    form eta << 1 and eta^2 << eps_rec1 + eps_rec2."""
    flags = []
    for i, eta in enumerate(_etas(dp), start=1):
        flags.append(Flag(f"omega_c{i}_much_less_than_T", eta, 1.0))
    rec_sum = dp.eps_rec1 + dp.eps_rec2
    eta2 = max(eta * eta for eta in _etas(dp))
    flags.append(Flag("omega_c_sq_much_less_than_T_times_rec_sum",
                      eta2, rec_sum))
    notes = ()
    if rec_sum == 0.0:
        notes = ("reorganization sum is 0 (symmetric coupling): "
                 "Marcus rate undefined",)
    return RegimeReport(flags=tuple(flags), notes=notes)


def check_high_temp_partial_regime(dp: DimensionlessParams) -> RegimeReport:
    """Near-resonance high-temperature regime for the partial-saturation
    closed form: eta << 1, coupling scale << omega_c^2/T, |eps_eff| <<
    omega_c; dimensionless: pi*(rec sum)/2 << eta^2 and |eps_eff| << eta."""
    flags = []
    etas = _etas(dp)
    for i, eta in enumerate(etas, start=1):
        flags.append(Flag(f"omega_c{i}_much_less_than_T", eta, 1.0))
    eta2 = min(eta * eta for eta in etas)
    rec_sum = dp.eps_rec1 + dp.eps_rec2
    flags.append(Flag("coupling_sq_much_less_than_omega_c_sq_over_T",
                      0.5 * math.pi * rec_sum, eta2))
    flags.append(Flag("eps_eff_much_less_than_omega_c",
                      abs(dp.eps_eff), min(etas)))
    return RegimeReport(flags=tuple(flags))


def coupling_constraints(dimer: DimerParams, model: SpectralModel,
                         gamma_tilde: float,
                         c_const: float = 1.0) -> tuple[float, dict]:
    """Maximum admissible |V| from the three perturbative-coupling bounds:

        |V| <= C (1 + xi^2)^{-1}
        |V| <= C min{ gamma_tilde (1+xi^6)^{-1}, sqrt(gamma_tilde) xi^{-5} }
        |V| <= C min{ theta, sqrt(theta) (1+xi^6)^{-1} }

    with xi = |lambda1 - lambda2| (collective) or max |lambda_j| (local),
    theta = min{|eps_hat|, gamma_tilde}, gamma_tilde = gamma / V^2.  The
    constant C is an order-of-magnitude convention (default 1).
    """
    if gamma_tilde < 0.0:
        raise ValueError("requires gamma_tilde >= 0")
    scal = derive_scalars(dimer, model)
    if model.is_collective:
        xi = abs(dimer.lambda1 - dimer.lambda2)
    else:
        xi = max(abs(dimer.lambda1), abs(dimer.lambda2))
    theta = min(abs(scal.epsilon_hat), gamma_tilde)
    b1 = c_const / (1.0 + xi * xi)
    xi6 = 1.0 + xi ** 6
    b2a = c_const * gamma_tilde / xi6
    b2b = (c_const * math.sqrt(gamma_tilde) / xi ** 5 if xi > 0.0
           else math.inf)
    b2 = min(b2a, b2b)
    b3 = c_const * min(theta, math.sqrt(theta) / xi6)
    details = {"xi": xi, "theta": theta, "gamma_tilde": gamma_tilde,
               "bound_xi": b1, "bound_gamma": b2, "bound_theta": b3,
               "c_const": c_const}
    return min(b1, b2, b3), details


def usefulness_window(p0: float, gamma: float,
                      c_const: float = 1.0) -> tuple[float, float, dict]:
    """Time window (t_min, t_max) = (C/p0, 1/gamma) on which the
    population main term dominates its remainder.

    gamma = 0 gives t_max = inf (no relaxation).  When p0 is extreme the
    complementary-population variant C/q0 and the equilibrium variants
    C/p_inf, C/q_inf discussed alongside the bound are reported in the
    details.  A degenerate window (t_min >= t_max) is flagged, not raised.
    """
    if not 0.0 < p0 <= 1.0:
        raise ValueError("requires p0 in (0, 1]")
    if gamma < 0.0:
        raise ValueError("requires gamma >= 0")
    t_min = c_const / p0
    t_max = math.inf if gamma == 0.0 else 1.0 / gamma
    details: dict = {"degenerate": t_min >= t_max}
    if p0 < 0.1 or p0 > 0.9:
        q0 = 1.0 - p0
        details["extreme_initial_condition"] = True
        details["t_min_complementary"] = (math.inf if q0 == 0.0
                                          else c_const / q0)
    return t_min, t_max, details
