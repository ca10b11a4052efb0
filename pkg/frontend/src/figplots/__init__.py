"""Figure rendering for dimerdyn CSV datasets.

Read-only over the CSVs and manifest written by the `dimerdyn` CLI; no
physics is re-derived here, only interpolation and display.
"""
from .io import Dataset, SchemaError, load_dataset
from .render import FIGURE_SPECS, render_preset

__all__ = ["Dataset", "SchemaError", "load_dataset", "FIGURE_SPECS",
           "render_preset"]
__version__ = "0.1.0"
