"""Numerical engine for exciton-transfer rates and decoherence of a bath-coupled dimer.

Library layout:

- ``specfun``   Hurwitz/Riemann zeta, digamma (complex shift arguments)
- ``spectral``  spectral-density models, derived scalars, unit handling
- ``kernels``   bath kernels Q1/Q2 (closed form and quadrature), saturation
- ``rates``     relaxation rates (exact regularized integrals, Marcus forms)
- ``dynamics``  population and coherence trajectories
- ``regimes``   validity-regime diagnostics
- ``noise``     Monte-Carlo classical-dephasing oracle
- ``cli``       the ``dimerdyn`` command-line front end
"""

from .spectral import (
    DimerParams,
    SpectralComponent,
    SpectralModel,
    DerivedScalars,
    DimensionlessParams,
    derive_scalars,
    to_dimensionless,
)
from .kernels import KernelSet
from .rates import (
    RateReport,
    gamma_exact,
    gamma_exact_dimensionless,
    gamma_from_level_shift,
    gamma_high_temp_partial,
    gamma_marcus_generalized,
    gamma_marcus_standard,
    lamb_shift,
    lamb_shift_dimensionless,
)
from .dynamics import (
    Trajectory,
    coherence_trajectory,
    decoherence_factor,
    equilibrium_population,
    gamma_infinity,
    population_trajectory,
)

__all__ = [
    "DimerParams",
    "SpectralComponent",
    "SpectralModel",
    "DerivedScalars",
    "DimensionlessParams",
    "derive_scalars",
    "to_dimensionless",
    "KernelSet",
    "RateReport",
    "gamma_exact",
    "gamma_exact_dimensionless",
    "gamma_from_level_shift",
    "gamma_high_temp_partial",
    "gamma_marcus_generalized",
    "gamma_marcus_standard",
    "lamb_shift",
    "lamb_shift_dimensionless",
    "Trajectory",
    "coherence_trajectory",
    "decoherence_factor",
    "equilibrium_population",
    "gamma_infinity",
    "population_trajectory",
]

__version__ = "0.1.0"
