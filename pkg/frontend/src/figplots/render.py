"""Renderers for the dimerdyn figure presets.

Each renderer is read-only over one loaded Dataset and produces a
deterministic PNG: fixed figure size and dpi, fixed fonts, no timestamps,
and the SHA-256 of the source CSV embedded as a footer annotation.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .io import Dataset  # noqa: E402

_KERNEL_PS = ("-0.25", "-0.499", "0.5", "1.5")
_KERNEL_ETAS = ("0.1", "1.0")
_PNG_META = {"Software": "figplots"}
_DPI = 150


def _tag(p: str, eta: str) -> str:
    def fmt(v: str) -> str:
        return v.replace("-", "m").replace(".", "p")
    return f"p{fmt(p)}_eta{fmt(eta)}"


def _kernel_columns() -> list[str]:
    cols = ["tau_dimensionless"]
    for eta in _KERNEL_ETAS:
        for p in _KERNEL_PS:
            tag = _tag(p, eta)
            cols += [f"q1_{tag}_dimensionless", f"q2_{tag}_dimensionless"]
    return cols


_SURFACE_COLS_TAIL = [
    "gamma_exact_ps_inv", "gamma_marcus_gen_ps_inv",
    "gamma_marcus_std_ps_inv", "gamma_high_temp_ps_inv",
    "lamb_shift_ps_inv", "marcus_regime", "high_temp_regime",
]

_COLLECTIVE_COLS = (["x_dimensionless", "y_dimensionless",
                     "eps_rec1_dimensionless", "eps_rec2_dimensionless"]
                    + _SURFACE_COLS_TAIL)
_LOCAL_COLS = (["eps_rec1_dimensionless", "eps_rec2_dimensionless"]
               + _SURFACE_COLS_TAIL)
_Q2_SURFACE_COLS = ["tau_dimensionless", "eta_dimensionless",
                    "q2_dimensionless"]
_DECO_COLS = ["tau_dimensionless", "eta_dimensionless",
              "gamma_of_tau_dimensionless",
              "decoherence_factor_dimensionless"]


def _stamp_and_save(fig, ds: Dataset, out_path: Path) -> None:
    fig.text(0.01, 0.005, f"data sha256 {ds.digest}", fontsize=4,
             family="monospace", color="0.4")
    fig.savefig(out_path, dpi=_DPI, metadata=_PNG_META)
    plt.close(fig)


def _grid(ds: Dataset, xcol: str, ycol: str, zcol: str):
    x = ds.col(xcol)
    y = ds.col(ycol)
    z = ds.col(zcol)
    xs = np.unique(x)
    ys = np.unique(y)
    zz = np.full((len(ys), len(xs)), np.nan)
    xi = np.searchsorted(xs, x)
    yi = np.searchsorted(ys, y)
    zz[yi, xi] = z
    return xs, ys, zz


def _render_rate_surface(ds: Dataset, out_path: Path, xcol: str, ycol: str,
                         xlabel: str, ylabel: str,
                         red_line_mask: Callable[[Dataset], np.ndarray]) -> None:
    xs, ys, zz = _grid(ds, xcol, ycol, "gamma_exact_ps_inv")
    fig = plt.figure(figsize=(7.0, 5.5))
    ax = fig.add_subplot(projection="3d")
    xx, yy = np.meshgrid(xs, ys)
    ax.plot_surface(xx, yy, zz, cmap="viridis", alpha=0.85,
                    linewidth=0.1, edgecolor="0.3", zorder=1)
    mask = red_line_mask(ds)
    std = ds.col("gamma_marcus_std_ps_inv")
    order = np.argsort(ds.col(ycol)[mask])
    ax.plot(ds.col(xcol)[mask][order], ds.col(ycol)[mask][order],
            std[mask][order], color="red", linewidth=2.5, zorder=10)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_zlabel(r"$\gamma$ (ps$^{-1}$)")
    eta = ds.params.get("eta")
    title = "Exact transfer rate with standard-Marcus red curve"
    if eta is not None:
        title += rf" ($\eta$ = {eta})"
    ax.set_title(title, fontsize=10)
    _stamp_and_save(fig, ds, out_path)


def render_collective_surface(ds: Dataset, out_path: Path) -> None:
    _render_rate_surface(
        ds, out_path, "x_dimensionless", "y_dimensionless",
        r"$x=\beta(\epsilon_{c,1}-\epsilon_{c,2})/2$",
        r"$y=\beta(\epsilon_{c,1}+\epsilon_{c,2})/2$",
        lambda d: ~np.isnan(d.col("gamma_marcus_std_ps_inv")))


def render_local_surface(ds: Dataset, out_path: Path) -> None:
    _render_rate_surface(
        ds, out_path, "eps_rec1_dimensionless", "eps_rec2_dimensionless",
        r"$\beta\epsilon_{l,1}$", r"$\beta\epsilon_{l,2}$",
        lambda d: ~np.isnan(d.col("gamma_marcus_std_ps_inv")))


def render_kernel_curves(ds: Dataset, out_path: Path) -> None:
    tau = ds.col("tau_dimensionless")
    labels = {"-0.25": r"$p=-1/4$", "-0.499": r"$p=-1/2+0$",
              "0.5": r"$p=1/2$", "1.5": r"$p=3/2$"}
    colors = {"-0.25": "tab:orange", "-0.499": "tab:red",
              "0.5": "tab:blue", "1.5": "tab:green"}
    fig, axes = plt.subplots(2, 2, figsize=(9.0, 6.5), sharex=True)
    for row, kernel in enumerate(("q1", "q2")):
        for col, eta in enumerate(_KERNEL_ETAS):
            ax = axes[row][col]
            for p in _KERNEL_PS:
                name = f"{kernel}_{_tag(p, eta)}_dimensionless"
                ax.plot(tau, ds.col(name), color=colors[p],
                        label=labels[p], linewidth=1.2)
            ax.set_title(rf"$\mathcal{{Q}}_{row + 1}$, $\eta$ = {eta}",
                         fontsize=10)
            if row == 1:
                ax.set_xlabel(r"$\tau$")
            if kernel == "q2":
                ax.set_yscale("symlog", linthresh=1.0)
    axes[0][0].legend(fontsize=8)
    fig.tight_layout(rect=(0.0, 0.02, 1.0, 1.0))
    _stamp_and_save(fig, ds, out_path)


def _render_tau_eta_surface(ds: Dataset, out_path: Path, zcol: str,
                            zlabel: str, title: str) -> None:
    xs, ys, zz = _grid(ds, "tau_dimensionless", "eta_dimensionless", zcol)
    fig = plt.figure(figsize=(7.0, 5.5))
    ax = fig.add_subplot(projection="3d")
    xx, yy = np.meshgrid(xs, ys)
    ax.plot_surface(xx, yy, zz, cmap="viridis", linewidth=0.1,
                    edgecolor="0.3")
    ax.set_xlabel(r"$\tau$")
    ax.set_ylabel(r"$\eta$")
    ax.set_zlabel(zlabel)
    ax.set_title(title, fontsize=10)
    _stamp_and_save(fig, ds, out_path)


def render_q2_surface(ds: Dataset, out_path: Path) -> None:
    _render_tau_eta_surface(ds, out_path, "q2_dimensionless",
                            r"$\mathcal{Q}_2$",
                            r"Saturation kernel $\mathcal{Q}_2(\tau,\eta)$,"
                            r" $p=1/2$")


def render_deco_surface(ds: Dataset, out_path: Path) -> None:
    model = ds.params.get("model", "")
    _render_tau_eta_surface(
        ds, out_path, "decoherence_factor_dimensionless", r"$e^{-\Gamma}$",
        rf"Decoherence factor $e^{{-\Gamma(\tau,\eta)}}$ ({model} bath)"
        if model else r"Decoherence factor $e^{-\Gamma(\tau,\eta)}$")


@dataclass(frozen=True)
class FigureSpec:
    preset: str
    expected_columns: list[str]
    renderer: Callable[[Dataset, Path], None]


FIGURE_SPECS = {
    "fig1a": FigureSpec("fig1a", _COLLECTIVE_COLS, render_collective_surface),
    "fig1b": FigureSpec("fig1b", _COLLECTIVE_COLS, render_collective_surface),
    "fig2": FigureSpec("fig2", _kernel_columns(), render_kernel_curves),
    "fig3a": FigureSpec("fig3a", _LOCAL_COLS, render_local_surface),
    "fig4": FigureSpec("fig4", _Q2_SURFACE_COLS, render_q2_surface),
    "fig5": FigureSpec("fig5", _DECO_COLS, render_deco_surface),
    "fig6": FigureSpec("fig6", _DECO_COLS, render_deco_surface),
}


def render_preset(preset: str, data_dir: str | Path,
                  out_dir: str | Path) -> Path:
    """Load `<preset>.csv` from data_dir and write `<preset>.png`."""
    from .io import load_dataset
    spec = FIGURE_SPECS[preset]
    ds = load_dataset(data_dir, preset, spec.expected_columns)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / f"{preset}.png"
    spec.renderer(ds, out_path)
    return out_path
