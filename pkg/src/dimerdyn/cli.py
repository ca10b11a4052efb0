"""Command-line front end: presets, sweeps, CSV emission, validation.

Commands:

    rates        rate sweep over reorganization-energy grids
    dynamics     population/coherence trajectories
    decoherence  V=0 decoherence factor curves
    figures      regenerate a named figure preset (fig1a..fig6)
    validate     regime report for a configuration
    oracle       Monte-Carlo dephasing check

Configs are flat ``section.key = value`` text files.  Every run writes a
``manifest.json`` next to its CSVs recording the resolved parameters,
package version, and tolerances.  Exit codes: 0 success, 2 config error,
3 numerical non-convergence, 4 regime-degenerate request.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, dynamics, rates
from .noise import NoiseSimConfig, simulate_dephasing
from .presets import PRESET_NAMES, generate_preset
from .regimes import (check_high_temp_partial_regime, check_marcus_regime,
                      usefulness_window)
from .spectral import MEV_TO_PS_INV, DimensionlessParams

__all__ = ["main", "ConfigError", "parse_config"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGENCE = 3
EXIT_DEGENERATE = 4

HEAD_TOL = 1e-8  # absolute tolerance on the head integral of gamma/V^2


class ConfigError(ValueError):
    """Configuration file or flag error (exit code 2)."""


class NonConvergenceError(RuntimeError):
    """Quadrature failed its tolerance (exit code 3)."""


class DegenerateRequestError(ValueError):
    """Request hit a regime-degenerate parameter point (exit code 4)."""


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

def parse_config(path: str | Path) -> dict:
    """Flat ``section.key = value`` parser with line diagnostics."""
    cfg: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', "
                              f"got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if not key or not val:
            raise ConfigError(f"{path}:{lineno}: empty key or value")
        if key in cfg:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        cfg[key] = val
    return cfg


def _get(cfg: dict, key: str, conv=float, default=None, required=False):
    if key not in cfg:
        if required:
            raise ConfigError(f"missing required config key {key!r}")
        return default
    try:
        return conv(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"config key {key!r}: {exc}") from exc


def _energy(cfg: dict, base: str, beta_ps: float,
            required=False) -> float | None:
    """Energy in dimensionless beta units; accepts exactly one of
    <base>_mev / <base>_ps_inv / <base>_dimensionless."""
    keys = [k for k in (f"{base}_mev", f"{base}_ps_inv",
                        f"{base}_dimensionless") if k in cfg]
    if not keys:
        if required:
            raise ConfigError(f"missing energy {base!r} "
                              f"(one of _mev/_ps_inv/_dimensionless)")
        return None
    if len(keys) > 1:
        raise ConfigError(f"energy {base!r} given in multiple units: {keys}")
    val = _get(cfg, keys[0], float)
    if keys[0].endswith("_mev"):
        return val * MEV_TO_PS_INV * beta_ps
    if keys[0].endswith("_ps_inv"):
        return val * beta_ps
    return val


def _beta_ps(cfg: dict) -> float:
    t_mev = _get(cfg, "dimer.temperature_mev")
    beta = _get(cfg, "dimer.beta_ps")
    if (t_mev is None) == (beta is None):
        raise ConfigError("specify exactly one of dimer.temperature_mev "
                          "or dimer.beta_ps")
    if beta is not None:
        return beta
    return 1.0 / (t_mev * MEV_TO_PS_INV)


def _dimensionless_from_config(cfg: dict) -> tuple[DimensionlessParams, float]:
    """(DimensionlessParams, beta_ps) from a flat config."""
    kind = _get(cfg, "model.kind", str, required=True)
    if kind not in ("collective", "local"):
        raise ConfigError("model.kind must be 'collective' or 'local'")
    beta = _beta_ps(cfg)
    eps = _energy(cfg, "dimer.epsilon", beta, required=True)
    v = _energy(cfg, "dimer.v", beta, required=True)
    e1 = _energy(cfg, "bath.eps_rec1", beta, required=True)
    e2 = _energy(cfg, "bath.eps_rec2", beta, required=True)
    p1 = _get(cfg, "bath.p", required=True)
    eta1 = _get(cfg, "bath.eta", required=True)
    if kind == "collective":
        dp = DimensionlessParams(eps=eps, eps_rec1=e1, eps_rec2=e2,
                                 eta=(eta1,), p=(p1,), beta_v=v,
                                 is_collective=True)
    else:
        p2 = _get(cfg, "bath2.p", default=p1)
        eta2 = _get(cfg, "bath2.eta", default=eta1)
        dp = DimensionlessParams(eps=eps, eps_rec1=e1, eps_rec2=e2,
                                 eta=(eta1, eta2), p=(p1, p2), beta_v=v,
                                 is_collective=False)
    return dp, beta


def _sweep(cfg: dict, name: str) -> np.ndarray | None:
    if f"sweep.{name}.min" not in cfg:
        return None
    lo = _get(cfg, f"sweep.{name}.min", required=True)
    hi = _get(cfg, f"sweep.{name}.max", required=True)
    count = _get(cfg, f"sweep.{name}.count", int, required=True)
    scale = _get(cfg, f"sweep.{name}.scale", str, default="linear")
    if count < 1:
        raise ConfigError(f"sweep.{name}.count must be >= 1")
    if scale == "linear":
        return np.linspace(lo, hi, count)
    if scale == "log":
        if lo <= 0.0:
            raise ConfigError(f"sweep.{name}: log scale needs min > 0")
        return np.geomspace(lo, hi, count)
    raise ConfigError(f"sweep.{name}.scale must be 'linear' or 'log'")


# ---------------------------------------------------------------------------
# deterministic CSV / manifest output
# ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return "NA"
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    f = float(v)
    if math.isnan(f):
        return "NA"
    return repr(f)


def write_csv(path: Path, columns: list, rows: list) -> str:
    """UTF-8, LF, '.'-decimal CSV; returns the file's sha256 hex digest."""
    lines = [",".join(columns)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    data = ("\n".join(lines) + "\n").encode("utf-8")
    path.write_bytes(data)
    return hashlib.sha256(data).hexdigest()


def write_manifest(out_dir: Path, payload: dict) -> Path:
    path = out_dir / "manifest.json"
    data = json.dumps(payload, indent=2, sort_keys=True,
                      ensure_ascii=False) + "\n"
    path.write_text(data, encoding="utf-8")
    return path


def _manifest_base(args, command: str) -> dict:
    return {"command": command, "version": __version__,
            "seed": getattr(args, "seed", None),
            "threads": getattr(args, "threads", 1),
            "tolerances": {"head_abs": HEAD_TOL},
            "preset": getattr(args, "preset", None)}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _check_converged(report) -> None:
    d = report.diagnostics
    if d.get("head_refinement_delta", 0.0) > HEAD_TOL * 10:
        raise NonConvergenceError(
            f"head integral refinement delta {d['head_refinement_delta']:.3e}"
            f" exceeds tolerance")


def _rate_row(dp: DimensionlessParams, beta: float) -> list:
    rep = rates.gamma_exact_dimensionless(dp)
    _check_converged(rep)
    g_exact = rep.gamma / beta
    try:
        g_marc = rates.gamma_marcus_generalized(dp).gamma / beta
    except ValueError:
        g_marc = None
    try:
        g_ht = rates.gamma_high_temp_partial(dp).gamma / beta
    except ValueError:
        g_ht = None
    ls = rates.lamb_shift_dimensionless(dp).lamb_shift / beta
    return [g_exact, g_marc, g_ht, ls,
            check_marcus_regime(dp).status,
            check_high_temp_partial_regime(dp).status,
            "degenerate" if rep.diagnostics.get("degenerate_tail") else "ok"]


_RATE_COLS = ["gamma_exact_ps_inv", "gamma_marcus_gen_ps_inv",
              "gamma_high_temp_ps_inv", "lamb_shift_ps_inv",
              "marcus_regime", "high_temp_regime", "tail_status"]


def cmd_rates(args) -> int:
    cfg = parse_config(args.config)
    dp0, beta = _dimensionless_from_config(cfg)
    a_name, b_name = (("x", "y") if dp0.is_collective
                      else ("eps_rec1", "eps_rec2"))
    avals = _sweep(cfg, a_name)
    bvals = _sweep(cfg, b_name)
    if avals is None and bvals is None:
        points = [(None, None, dp0)]
        grid_cols = []
    else:
        if avals is None or bvals is None or not len(avals) or not len(bvals):
            raise ConfigError(f"rates sweep needs both sweep.{a_name} and "
                              f"sweep.{b_name} with count >= 1")
        grid_cols = [f"{a_name}_dimensionless", f"{b_name}_dimensionless"]
        points = []
        for b in bvals:
            for a in avals:
                if dp0.is_collective:
                    e1, e2 = b + a, b - a
                else:
                    e1, e2 = a, b
                points.append((a, b, DimensionlessParams(
                    eps=dp0.eps, eps_rec1=e1, eps_rec2=e2, eta=dp0.eta,
                    p=dp0.p, beta_v=dp0.beta_v,
                    is_collective=dp0.is_collective)))
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        results = list(pool.map(lambda pt: _rate_row(pt[2], beta), points))
    rows = []
    for (a, b, dp), res in zip(points, results):
        prefix = [a, b] if grid_cols else []
        rows.append(prefix + [dp.eps_rec1, dp.eps_rec2] + res)
    cols = grid_cols + ["eps_rec1_dimensionless",
                        "eps_rec2_dimensionless"] + _RATE_COLS
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    digest = write_csv(out / "rates.csv", cols, rows)
    man = _manifest_base(args, "rates")
    man.update({"config": dict(cfg), "beta_ps": beta,
                "files": {"rates.csv": digest}})
    write_manifest(out, man)
    return EXIT_OK


def cmd_dynamics(args) -> int:
    cfg = parse_config(args.config)
    dp, beta = _dimensionless_from_config(cfg)
    p0 = _get(cfg, "dynamics.p0", required=True)
    rho_re = _get(cfg, "dynamics.rho12_re", default=0.5)
    rho_im = _get(cfg, "dynamics.rho12_im", default=0.0)
    rho0 = complex(rho_re, rho_im)
    t_max = _get(cfg, "dynamics.tau_max", default=50.0)
    n_t = _get(cfg, "dynamics.n_tau", int, default=501)
    tau = np.linspace(0.0, t_max, n_t)
    v_zero = _get(cfg, "dynamics.v_zero", str, default="false") == "true"

    if dp.is_collective and dp.eps_rec1 == dp.eps_rec2 and not v_zero:
        raise DegenerateRequestError(
            "symmetric collective coupling: relaxation rate is 0, no "
            "population dynamics at this order (use v_zero mode)")
    rep = rates.gamma_exact_dimensionless(dp)
    if rep.diagnostics.get("degenerate_tail"):
        raise DegenerateRequestError(
            "eps_eff = 0 with saturating integrand: rate undefined "
            "(Abel limit diverges)")
    _check_converged(rep)
    gamma_b = rep.gamma
    ls_b = rates.lamb_shift_dimensionless(dp).lamb_shift
    p_inf = dynamics.equilibrium_population(dp.eps_eff)
    ptraj = dynamics.population_trajectory(gamma_b, p0, p_inf, tau)
    if v_zero:
        ctraj = dynamics.coherence_trajectory(dp, 0.0, 0.0, rho0, tau,
                                              v_zero=True)
    else:
        try:
            ctraj = dynamics.coherence_trajectory(dp, gamma_b, ls_b, rho0,
                                                  tau)
        except dynamics.GammaInfinityDiverges as exc:
            raise DegenerateRequestError(str(exc)) from exc
    envelope = np.exp(-0.5 * gamma_b * tau) * abs(rho0)
    cols = ["tau_dimensionless", "t_ps", "p_population",
            "rho12_abs_dimensionless", "rho12_phase_rad",
            "envelope_dimensionless"]
    rows = [[float(tv), float(tv * beta), float(pv), float(rv), float(phv),
             float(ev)]
            for tv, pv, rv, phv, ev in zip(tau, ptraj.p, ctraj.rho12_abs,
                                           ctraj.rho12_phase, envelope)]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    digest = write_csv(out / "dynamics.csv", cols, rows)
    man = _manifest_base(args, "dynamics")
    man.update({"config": dict(cfg), "beta_ps": beta,
                "gamma_beta": gamma_b, "lamb_shift_beta": ls_b,
                "p_infinity": p_inf,
                "files": {"dynamics.csv": digest}})
    write_manifest(out, man)
    return EXIT_OK


def cmd_decoherence(args) -> int:
    cfg = parse_config(args.config)
    dp, beta = _dimensionless_from_config(cfg)
    t_max = _get(cfg, "decoherence.tau_max", default=50.0)
    n_t = _get(cfg, "decoherence.n_tau", int, default=501)
    tau = np.linspace(0.0, t_max, n_t)
    d = dynamics.decoherence_factor(dp, tau)
    gt = dynamics.gamma_of_tau(dp, tau)
    ginf = dynamics.gamma_infinity(dp)
    cols = ["tau_dimensionless", "d_abs_dimensionless", "d_phase_rad",
            "gamma_of_tau_dimensionless"]
    rows = [[float(tv), float(abs(dv)), float(ph), float(gv)]
            for tv, dv, ph, gv in zip(tau, d, np.unwrap(np.angle(d)), gt)]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    digest = write_csv(out / "decoherence.csv", cols, rows)
    man = _manifest_base(args, "decoherence")
    man.update({"config": dict(cfg), "beta_ps": beta,
                "gamma_infinity": (ginf.value if ginf.finite else "inf"),
                "gamma_infinity_finite": ginf.finite,
                "gamma_infinity_detail": ginf.detail,
                "files": {"decoherence.csv": digest}})
    write_manifest(out, man)
    return EXIT_OK


def cmd_figures(args) -> int:
    if args.preset is None:
        raise ConfigError("figures requires --preset (one of "
                          + ", ".join(PRESET_NAMES) + ")")
    if args.preset not in PRESET_NAMES:
        raise ConfigError(f"unknown preset {args.preset!r}; valid: "
                          + ", ".join(PRESET_NAMES))
    cols, rows, params = generate_preset(args.preset)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fname = f"{args.preset}.csv"
    digest = write_csv(out / fname, cols, rows)
    man = _manifest_base(args, "figures")
    man.update({"params": params, "files": {fname: digest}})
    write_manifest(out, man)
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = parse_config(args.config)
    dp, beta = _dimensionless_from_config(cfg)
    marcus = check_marcus_regime(dp)
    high_t = check_high_temp_partial_regime(dp)
    rep = rates.gamma_exact_dimensionless(dp)
    gamma_ps = rep.gamma / beta
    p0 = _get(cfg, "dynamics.p0", default=1.0)
    c_const = _get(cfg, "validate.c_const", default=1.0)
    degenerate = (dp.is_collective and dp.eps_rec1 == dp.eps_rec2)
    if gamma_ps > 0.0:
        t_min, t_max, win = usefulness_window(p0, gamma_ps, c_const)
    else:
        t_min, t_max, win = c_const / p0, math.inf, {"degenerate": False}
    cols = ["check", "small_side", "large_side", "margin_ratio", "status"]
    rows = []
    for name, reg in (("marcus", marcus), ("high_temp_partial", high_t)):
        for f in reg.flags:
            rows.append([f"{name}.{f.name}", f.small, f.large,
                         f.ratio if math.isfinite(f.ratio) else None,
                         f.status])
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    digest = write_csv(out / "validate.csv", cols, rows)
    lines = [f"marcus regime: {marcus.status}",
             f"high-temperature partial regime: {high_t.status}",
             f"gamma_exact: {gamma_ps!r} ps^-1",
             f"usefulness window: ({t_min!r}, {t_max!r}) ps"]
    if degenerate:
        lines.append("advisory: symmetric collective coupling, "
                     "relaxation rate degenerates to 0")
    report = "\n".join(lines) + "\n"
    (out / "validate.txt").write_text(report, encoding="utf-8")
    sys.stdout.write(report)
    man = _manifest_base(args, "validate")
    man.update({"config": dict(cfg), "beta_ps": beta,
                "files": {"validate.csv": digest}})
    write_manifest(out, man)
    return EXIT_OK


def cmd_oracle(args) -> int:
    cfg = parse_config(args.config) if args.config else {}
    sim = NoiseSimConfig(
        n_paths=_get(cfg, "oracle.n_paths", int, default=10_000),
        dt=_get(cfg, "oracle.dt", default=0.1),
        t_max=_get(cfg, "oracle.tau_max", default=50.0),
        seed=(args.seed if args.seed is not None
              else _get(cfg, "oracle.seed", int, default=1234)),
        lam=_get(cfg, "oracle.lambda", default=0.2),
        p=_get(cfg, "oracle.p", default=0.5),
        eta=_get(cfg, "oracle.eta", default=0.1))
    res = simulate_dephasing(sim)
    cols = ["tau_dimensionless", "estimate_re", "estimate_im",
            "std_err", "target_dimensionless"]
    rows = [[float(t), float(e.real), float(e.imag), float(se), float(tg)]
            for t, e, se, tg in zip(res.times, res.estimate, res.std_err,
                                    res.target)]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    digest = write_csv(out / "oracle.csv", cols, rows)
    within = np.abs(res.estimate.real - res.target) <= 3.0 * res.std_err
    man = _manifest_base(args, "oracle")
    man.update({"config": dict(cfg),
                "sim": {"n_paths": sim.n_paths, "dt": sim.dt,
                        "t_max": sim.t_max, "seed": sim.seed,
                        "lambda": sim.lam, "p": sim.p, "eta": sim.eta,
                        "n_freq": sim.n_freq},
                "fraction_within_3se": float(within.mean()),
                "files": {"oracle.csv": digest}})
    write_manifest(out, man)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dimerdyn",
        description="Exciton-dimer relaxation, Marcus limits, and "
                    "decoherence dynamics")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn, needs_config in (
            ("rates", cmd_rates, True),
            ("dynamics", cmd_dynamics, True),
            ("decoherence", cmd_decoherence, True),
            ("figures", cmd_figures, False),
            ("validate", cmd_validate, True),
            ("oracle", cmd_oracle, False)):
        p = sub.add_parser(name)
        p.add_argument("--config", required=needs_config,
                       help="flat key=value configuration file")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--preset", default=None,
                       help="named figure preset (figures command)")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--threads", type=int, default=1)
        p.set_defaults(fn=fn)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FileNotFoundError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonConvergenceError as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (DegenerateRequestError, rates.DegenerateTailError) as exc:
        print(f"regime-degenerate request: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
