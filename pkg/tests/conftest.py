"""Shared fixtures and helpers for the dimerdyn test suite."""
from __future__ import annotations

import numpy as np
import pytest

from dimerdyn.spectral import DimensionlessParams


def make_collective(eps=3.0, e1=2.0, e2=1.0, p=0.5, eta=0.1,
                    beta_v=0.6) -> DimensionlessParams:
    return DimensionlessParams(eps=eps, eps_rec1=e1, eps_rec2=e2,
                               eta=(eta,), p=(p,), beta_v=beta_v,
                               is_collective=True)


def make_local(eps=3.0, e1=2.0, e2=1.0, p1=0.5, p2=0.5, eta1=0.1,
               eta2=0.1, beta_v=0.6) -> DimensionlessParams:
    return DimensionlessParams(eps=eps, eps_rec1=e1, eps_rec2=e2,
                               eta=(eta1, eta2), p=(p1, p2), beta_v=beta_v,
                               is_collective=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)
