"""Fixtures: real datasets are produced through the dimerdyn CLI, the
only interface figplots depends on."""
from __future__ import annotations

import subprocess
import sys

import pytest

RENDER_PRESETS = ("fig2", "fig1a", "fig3a", "fig4", "fig5")


@pytest.fixture(scope="session")
def data_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("dimerdyn-data")
    for preset in RENDER_PRESETS:
        subprocess.run(
            [sys.executable, "-m", "dimerdyn.cli", "figures",
             "--preset", preset, "--out", str(root / preset)],
            check=True)
    return root
