"""Command-line front end: flag/config parsing, dispatch, CSV/JSON emission.

Commands
--------
geometry    sample metric, connection and curvature data over a grid
potential   sample every potential plus the mass profile for one (R, ell)
solve       lowest-k spectrum for one configuration, with eigenfunctions
sweep       spectra along an axis (R or ell) of parameter values
validate    run the validation suite; nonzero exit when any check fails
reproduce   emit the data behind one of the five figure reproductions

All numeric CSV fields use 17 significant digits; every output embeds the
effective configuration (CSV ``# key = value`` comment lines, JSON
``parameters`` object); identical invocations write byte-identical files.
Exit codes: 0 success, 1 usage or I/O error, 2 failed validation.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .geometry import (
    SurfaceParams,
    christoffel,
    gaussian_curvature,
    mean_curvature,
    metric,
    sqrt_metric_det,
)
from .model import (
    dacosta_potential,
    effective_potential,
    lambda_coefficients,
    mass_profile,
    pdm_effective_potential,
    reconstruct_wavefunction,
)
from .scenarios import (
    ScenarioResult,
    dacosta_profiles,
    effective_profiles_by_ell,
    effective_profiles_by_radius,
    mass_profiles,
    profile_grid,
    r_sweep_ladder,
    run_l_sweep,
    run_r_sweep,
    run_validation,
    solve_scenario,
    well_width,
)

_MODES = ("staggered-full", "split-half")
_FORMATS = ("csv", "json")
_FIGS = ("fig2", "fig3", "fig4", "fig5", "fig6")

_DEFAULTS = {
    "R": 1.0,
    "ell": 0,
    "hbar": 1.0,
    "mass": 1.0,
    "umax": None,
    "n": 4000,
    "mode": "staggered-full",
    "k": 8,
    "tol": 1e-10,
    "out": ".",
    "format": "csv",
}

_CASTERS = {
    "R": float,
    "ell": int,
    "hbar": float,
    "mass": float,
    "umax": float,
    "n": int,
    "mode": str,
    "k": int,
    "tol": float,
    "out": str,
    "format": str,
}


class UsageError(Exception):
    """Bad flags, config keys, or values; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration after merging flags, config file, defaults."""

    command: str
    fig: str | None
    R: float
    ell: int
    hbar: float
    mass: float
    umax: float | None
    n: int
    mode: str
    k: int
    tol: float
    out: str
    format: str
    config: str | None
    axis: str | None = None
    values: str | None = None


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--R", type=float, default=None, help="pseudoradius of the surface")
    common.add_argument("--ell", type=int, default=None, help="azimuthal orbital number")
    common.add_argument("--hbar", type=float, default=None, help="reduced Planck constant")
    common.add_argument("--mass", type=float, default=None, help="effective mass m*")
    common.add_argument("--umax", type=float, default=None, help="half-width of the meridian window")
    common.add_argument("--n", type=int, default=None, help="grid node count")
    common.add_argument("--mode", default=None, help="grid mode: staggered-full or split-half")
    common.add_argument("--k", type=int, default=None, help="number of eigenvalues")
    common.add_argument("--tol", type=float, default=None, help="eigenvalue bisection tolerance")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--format", default=None, help="output format: csv or json")
    common.add_argument("--config", default=None, help="flat key = value config file")

    p = _Parser(prog="pseudosphere", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command", required=True)
    sub.add_parser("geometry", parents=[common], help="tabulate surface geometry")
    sub.add_parser("potential", parents=[common], help="tabulate potentials and mass")
    sub.add_parser("solve", parents=[common], help="solve one spectrum")
    sweep = sub.add_parser("sweep", parents=[common], help="solve spectra along an axis")
    sweep.add_argument("--axis", choices=("R", "ell"), default="R", help="sweep axis")
    sweep.add_argument("--values", default=None, help="comma-separated axis values")
    sub.add_parser("validate", parents=[common], help="run the validation suite")
    rep = sub.add_parser("reproduce", parents=[common], help="emit figure data")
    rep.add_argument("fig", choices=_FIGS, help="which figure's data to emit")
    return p


def _parse_config_file(path: str) -> dict:
    cfg = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read config file {path}: {e}") from e
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CASTERS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            cfg[key] = _CASTERS[key](value)
        except ValueError as e:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from e
    return cfg


def _merge(args: argparse.Namespace) -> RunConfig:
    file_cfg = _parse_config_file(args.config) if args.config else {}

    def pick(key):
        flag = getattr(args, key)
        if flag is not None:
            return flag
        return file_cfg.get(key, _DEFAULTS[key])

    cfg = RunConfig(
        command=args.command,
        fig=getattr(args, "fig", None),
        R=pick("R"),
        ell=pick("ell"),
        hbar=pick("hbar"),
        mass=pick("mass"),
        umax=pick("umax"),
        n=pick("n"),
        mode=pick("mode"),
        k=pick("k"),
        tol=pick("tol"),
        out=pick("out"),
        format=pick("format"),
        config=args.config,
        axis=getattr(args, "axis", None),
        values=getattr(args, "values", None),
    )
    for key in ("R", "hbar", "mass", "tol"):
        v = getattr(cfg, key)
        if not (np.isfinite(v) and v > 0.0):
            raise UsageError(f"{key} must be positive and finite, got {v!r}")
    if cfg.umax is not None and not (np.isfinite(cfg.umax) and cfg.umax > 0.0):
        raise UsageError(f"umax must be positive and finite, got {cfg.umax!r}")
    if cfg.n < 64:
        raise UsageError(f"n must be at least 64, got {cfg.n}")
    if cfg.k < 0:
        raise UsageError(f"k must be nonnegative, got {cfg.k}")
    if cfg.mode not in _MODES:
        raise UsageError(f"mode must be one of {_MODES}, got {cfg.mode!r}")
    if cfg.format not in _FORMATS:
        raise UsageError(f"format must be one of {_FORMATS}, got {cfg.format!r}")
    return cfg


# ---------------------------------------------------------------------------
# Emission helpers.
# ---------------------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


def _effective_params(cfg: RunConfig, **overrides) -> list[tuple[str, object]]:
    pairs = [("command", cfg.command)]
    if cfg.fig is not None:
        pairs.append(("fig", cfg.fig))
    if cfg.axis is not None:
        pairs.append(("axis", cfg.axis))
    pairs += [
        ("R", cfg.R),
        ("ell", cfg.ell),
        ("hbar", cfg.hbar),
        ("mass", cfg.mass),
        ("umax", cfg.umax),
        ("n", cfg.n),
        ("mode", cfg.mode),
        ("k", cfg.k),
        ("tol", cfg.tol),
        ("out", cfg.out),
        ("format", cfg.format),
        ("config", cfg.config),
    ]
    merged = dict(pairs)
    merged.update(overrides)
    return list(merged.items())


def _outdir(cfg: RunConfig) -> Path:
    d = Path(cfg.out)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _write_csv_table(path: Path, params, columns: dict) -> None:
    with open(path, "w", newline="") as f:
        for key, value in params:
            f.write(f"# {key} = {_fmt(value)}\n")
        w = csv.writer(f, lineterminator="\n")
        w.writerow(list(columns))
        for row in zip(*columns.values()):
            w.writerow([_fmt(v) for v in row])


def _write_json(path: Path, doc: dict) -> None:
    with open(path, "w") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def _emit_table(path_base: Path, cfg: RunConfig, params, columns: dict) -> Path:
    """Write one columnar table in the configured format, return the path."""
    if cfg.format == "csv":
        path = path_base.with_suffix(".csv")
        _write_csv_table(path, params, columns)
    else:
        path = path_base.with_suffix(".json")
        _write_json(
            path,
            {
                "parameters": {k: v for k, v in params},
                "data": {name: [_jsonable(v) for v in vals] for name, vals in columns.items()},
            },
        )
    return path


def _emit_keyvalues(path_base: Path, cfg: RunConfig, params, stats: dict) -> Path:
    if cfg.format == "csv":
        path = path_base.with_suffix(".csv")
        _write_csv_table(
            path, params, {"key": list(stats.keys()), "value": list(stats.values())}
        )
    else:
        path = path_base.with_suffix(".json")
        _write_json(
            path,
            {
                "parameters": {k: v for k, v in params},
                "statistics": {k: _jsonable(v) for k, v in stats.items()},
            },
        )
    return path


def _jsonable(v):
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    return v


# ---------------------------------------------------------------------------
# Command implementations.
# ---------------------------------------------------------------------------


def _cmd_geometry(cfg: RunConfig) -> int:
    p = SurfaceParams(R=cfg.R, hbar=cfg.hbar, mass_star=cfg.mass)
    u_max = cfg.umax if cfg.umax is not None else 10.0 * cfg.R
    u = profile_grid(u_max, points_per_side=max(cfg.n // 2, 32))
    g_uu, g_pp = metric(u, p)
    gamma_uuu, gamma_upp, gamma_pup = christoffel(u, p)
    columns = {
        "u": u,
        "g_uu": g_uu,
        "g_phiphi": g_pp,
        "gamma_u_uu": gamma_uuu,
        "gamma_u_phiphi": gamma_upp,
        "gamma_phi_uphi": gamma_pup,
        "gaussian_curvature": gaussian_curvature(u, p),
        "mean_curvature": mean_curvature(u, p),
        "sqrt_g": sqrt_metric_det(u, p),
    }
    params = _effective_params(cfg, umax=u_max)
    path = _emit_table(_outdir(cfg) / f"geometry_R{cfg.R:g}", cfg, params, columns)
    print(f"wrote {path}")
    return 0


def _cmd_potential(cfg: RunConfig) -> int:
    p = SurfaceParams(R=cfg.R, hbar=cfg.hbar, mass_star=cfg.mass)
    u_max = cfg.umax if cfg.umax is not None else 10.0 * cfg.R
    u = profile_grid(u_max, points_per_side=max(cfg.n // 2, 32))
    _, _, l3 = lambda_coefficients(u, cfg.ell, p)
    columns = {
        "u": u,
        "dacosta": dacosta_potential(u, p),
        "lambda3": l3,
        "effective": effective_potential(u, cfg.ell, p),
        "pdm_effective": pdm_effective_potential(u, cfg.ell, p),
        "mass": mass_profile(u, p),
    }
    params = _effective_params(cfg, umax=u_max)
    path = _emit_table(
        _outdir(cfg) / f"potential_R{cfg.R:g}_ell{cfg.ell}", cfg, params, columns
    )
    print(f"wrote {path}")
    return 0


def _spectrum_columns(result: ScenarioResult) -> dict:
    k = len(result.eigenvalues)
    splittings = []
    for j in range(k):
        pair = j // 2
        if 2 * pair + 1 < k:
            splittings.append(result.doublet_splittings[pair])
        else:
            splittings.append(None)
    return {
        "index": list(range(k)),
        "energy": result.eigenvalues,
        "class": list(result.classifications),
        "doublet_splitting": splittings,
    }


def _emit_scenario(result: ScenarioResult, cfg: RunConfig, with_states: bool) -> list[Path]:
    """Write one solved scenario; returns the paths written."""
    outdir = _outdir(cfg)
    sp = result.parameters
    params = _effective_params(
        cfg,
        R=sp["R"],
        ell=sp["ell"],
        hbar=sp["hbar"],
        mass=sp["mass_star"],
        umax=sp["u_max"],
        n=sp["n"],
        mode=sp["mode"],
        k=sp["k"],
        tol=sp["tol"],
    )
    written = []
    if cfg.format == "csv":
        spath = outdir / f"{result.scenario}_spectrum.csv"
        _write_csv_table(spath, params, _spectrum_columns(result))
        written.append(spath)
        result.profile_files["spectrum"] = spath.name
        if with_states and result.spectrum is not None:
            p = SurfaceParams(R=sp["R"], hbar=sp["hbar"], mass_star=sp["mass_star"])
            nodes = result.spectrum.grid.nodes
            for j in range(len(result.spectrum)):
                rec = reconstruct_wavefunction(result.spectrum.eigenvectors[j], nodes, p)
                cpath = outdir / f"{result.scenario}_state{j}.csv"
                _write_csv_table(
                    cpath,
                    params + [("state_index", j), ("energy", result.eigenvalues[j])],
                    {
                        "u": nodes,
                        "X": result.spectrum.eigenvectors[j],
                        "psi_logmag": rec.log_abs_psi,
                        "psi_sign": rec.psi_sign,
                        "surface_density": rec.surface_density,
                    },
                )
                written.append(cpath)
                result.profile_files[f"state_{j}"] = cpath.name
    else:
        jpath = outdir / f"{result.scenario}.json"
        doc = result.to_dict()
        # "parameters" holds the effective physical configuration and stays
        # exactly round-trippable through ScenarioResult.from_dict; the
        # run-level invocation context is recorded alongside it.
        doc["invocation"] = {k: v for k, v in params}
        _write_json(jpath, doc)
        written.append(jpath)
    return written


def _cmd_solve(cfg: RunConfig) -> int:
    result = solve_scenario(
        f"solve_R{cfg.R:g}_ell{cfg.ell}",
        cfg.R,
        cfg.ell,
        n=cfg.n,
        k=cfg.k,
        tol=cfg.tol,
        u_max=cfg.umax,
        mode=cfg.mode,
        hbar=cfg.hbar,
        mass_star=cfg.mass,
    )
    for path in _emit_scenario(result, cfg, with_states=True):
        print(f"wrote {path}")
    for j, (e, c) in enumerate(zip(result.eigenvalues, result.classifications)):
        print(f"state {j}: energy {_fmt(e)} [{c}]")
    return 0


def _parse_values(raw: str | None, axis: str):
    if raw is None:
        return (1.0, 10.0, 20.0) if axis == "R" else (0, 5, 10)
    cast = float if axis == "R" else int
    try:
        values = tuple(cast(tok) for tok in raw.split(",") if tok.strip())
    except ValueError as e:
        raise UsageError(f"bad --values entry for axis {axis}: {raw!r}") from e
    if not values:
        raise UsageError("--values must name at least one value")
    return values


def _sweep_summary_stats(results: list[ScenarioResult]) -> dict:
    rows = {}
    for r in results:
        rows[r.scenario] = {
            "R": r.parameters["R"],
            "ell": r.parameters["ell"],
            "bound_count": r.statistics["bound_count"],
            "artifact_count": r.statistics["artifact_count"],
            "splitting01": r.statistics["splitting01"],
            "splitting23": r.statistics["splitting23"],
            "delta1": r.statistics["delta1"],
            "delta2": r.statistics["delta2"],
            "anharmonicity": r.statistics["anharmonicity"],
            "confinement": r.statistics["confinement"],
            "min_bound_energy": r.statistics["min_bound_energy"],
        }
    return rows


def _emit_sweep(results, cfg: RunConfig, summary_name: str, extra: dict | None = None) -> int:
    for result in results:
        for path in _emit_scenario(result, cfg, with_states=False):
            print(f"wrote {path}")
    rows = _sweep_summary_stats(results)
    params = _effective_params(cfg)
    outdir = _outdir(cfg)
    if cfg.format == "csv":
        field_names = list(next(iter(rows.values())).keys())
        columns = {"scenario": list(rows.keys())}
        for name in field_names:
            columns[name] = [rows[s][name] for s in rows]
        spath = outdir / f"{summary_name}.csv"
        _write_csv_table(spath, params, columns)
    else:
        spath = outdir / f"{summary_name}.json"
        _write_json(spath, {"parameters": {k: v for k, v in params}, "scenarios": rows})
    print(f"wrote {spath}")
    if extra:
        for name, stats in extra.items():
            path = _emit_keyvalues(outdir / name, cfg, params, stats)
            print(f"wrote {path}")
    for r in results:
        s = r.statistics
        print(
            f"{r.scenario}: bound {s['bound_count']}, artifacts {s['artifact_count']},"
            f" splitting01 {_fmt(s['splitting01'])}"
        )
    return 0


def _cmd_sweep(cfg: RunConfig) -> int:
    values = _parse_values(cfg.values, cfg.axis)
    if cfg.axis == "R":
        results = run_r_sweep(
            radii=values, ell=cfg.ell, n=cfg.n, k=cfg.k, tol=cfg.tol,
            hbar=cfg.hbar, mass_star=cfg.mass,
        )
        extra = {"r_ladder": r_sweep_ladder(results)} if len(values) >= 3 else None
    else:
        results = run_l_sweep(
            ells=values, R=cfg.R, n=cfg.n, k=cfg.k, tol=cfg.tol,
            hbar=cfg.hbar, mass_star=cfg.mass,
        )
        extra = None
    return _emit_sweep(results, cfg, f"sweep_{cfg.axis}_summary", extra)


def _cmd_validate(cfg: RunConfig) -> int:
    if cfg.n % 4 or cfg.n < 256:
        raise UsageError("validate needs n divisible by 4 and at least 256")
    report = run_validation(n=cfg.n)
    for line in report.lines():
        print(line)
    rows = {
        "name": [c.name for c in report.checks],
        "passed": [c.passed for c in report.checks],
        "measured": [c.measured for c in report.checks],
        "threshold": [c.threshold for c in report.checks],
        "detail": [c.detail for c in report.checks],
    }
    path = _emit_table(
        _outdir(cfg) / "validation_report", cfg, _effective_params(cfg), rows
    )
    print(f"wrote {path}")
    return 0 if report.all_passed else 2


def _cmd_reproduce(cfg: RunConfig) -> int:
    outdir = _outdir(cfg)
    if cfg.fig == "fig2":
        tables = [(R, cfg.ell, t) for R in (1.0, 10.0, 100.0)
                  for t in dacosta_profiles((R,), cfg.hbar, cfg.mass).items()]
    elif cfg.fig == "fig3":
        tables = [(R, cfg.ell, t) for R in (1.0, 5.0, 10.0)
                  for t in mass_profiles((R,), cfg.hbar, cfg.mass).items()]
    elif cfg.fig == "fig4":
        tables = [(R, 0, t) for R in (1.0, 5.0, 10.0)
                  for t in effective_profiles_by_radius((R,), 0, cfg.hbar, cfg.mass).items()]
        for ell in (5, 10):
            by_ell = effective_profiles_by_ell((ell,), 1.0, cfg.hbar, cfg.mass)
            tables += [(1.0, ell, t) for t in by_ell.items()]
    elif cfg.fig == "fig5":
        results = run_r_sweep(n=cfg.n, k=cfg.k, tol=cfg.tol, hbar=cfg.hbar, mass_star=cfg.mass)
        return _emit_sweep(results, cfg, "fig5_summary", {"r_ladder": r_sweep_ladder(results)})
    else:
        results = run_l_sweep(n=cfg.n, k=max(cfg.k, 12), tol=cfg.tol, hbar=cfg.hbar, mass_star=cfg.mass)
        return _emit_sweep(results, cfg, "fig6_summary")

    for R, ell, (name, profile) in tables:
        u = profile.u_values
        if hasattr(profile, "v_values"):
            label, values = profile.label, profile.v_values
        else:
            label, values = "mass", profile.m_values
        params = _effective_params(cfg, R=R, ell=ell, umax=float(u[-1]), n=int(u.size))
        path = _emit_table(outdir / name, cfg, params, {"u": u, label: values})
        print(f"wrote {path}")

    if cfg.fig == "fig4":
        widths = {f"well_width_R{R:g}": well_width(R, cfg.hbar, cfg.mass) for R in (1.0, 5.0, 10.0)}
        path = _emit_keyvalues(outdir / "well_widths", cfg, _effective_params(cfg), widths)
        print(f"wrote {path}")
    return 0


_COMMANDS = {
    "geometry": _cmd_geometry,
    "potential": _cmd_potential,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
    "reproduce": _cmd_reproduce,
}


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _merge(args)
        return _COMMANDS[cfg.command](cfg)
    except UsageError as e:
        print(f"pseudosphere: error: {e}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as e:
        print(f"pseudosphere: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
