"""Command-line front end.

Subcommands write CSV (default) or JSON data files and print a short summary.
Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
import scipy

from . import __version__, continuum, discrete, verification
from .errors import ConvergenceError, DomainError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

COLUMNS = {
    "curve": ["xi", "concurrence"],
    "saturation": ["sigma_over_m", "saturation_level"],
    "critical": ["bracket_low", "bracket_high", "critical_ratio"],
    "perp": ["p", "xi", "c_pipeline", "c_closed_form"],
    "verify": ["property", "max_deviation", "tolerance", "passed"],
}


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"invalid {field_name}: {message}")
        self.field_name = field_name


@dataclass
class RunConfig:
    command: str
    sigma_over_m: list[float] = field(default_factory=lambda: [1.0])
    xi_min: float = 0.0
    xi_max: float = 10.0
    xi_steps: int = 50
    p: float = 1.0
    n_radial: int = 128
    n_polar: int = 64
    p_max: float | None = None
    bracket: tuple[float, float] = (3.0, 3.8)
    seed: int = 0
    samples: int = 2000
    tolerance_scale: float = 1.0
    output_path: str | None = None
    format: str = "csv"

    def validate(self) -> None:
        if any(not (s > 0 and math.isfinite(s)) for s in self.sigma_over_m):
            raise ConfigError("sigma_over_m", "ratios must be positive")
        if self.xi_min < 0:
            raise ConfigError("xi_min", "must be >= 0")
        if self.xi_min > self.xi_max:
            raise ConfigError("xi_max", "must be >= xi_min")
        if self.xi_max > 50:
            raise ConfigError("xi_max", "supported range is xi <= 50")
        if self.xi_steps < 2:
            raise ConfigError("xi_steps", "must be >= 2")
        if not self.p > 0:
            raise ConfigError("p", "must be positive")
        if self.n_radial < 8:
            raise ConfigError("n_radial", "must be >= 8")
        if self.n_polar < 8:
            raise ConfigError("n_polar", "must be >= 8")
        if self.p_max is not None and self.p_max < 6 * max(self.sigma_over_m):
            raise ConfigError("p_max", "must be >= 6 * sigma_over_m")
        if not 0 < self.bracket[0] < self.bracket[1]:
            raise ConfigError("bracket", "must satisfy 0 < low < high")
        if self.samples < 1:
            raise ConfigError("samples", "must be >= 1")
        if self.tolerance_scale < 0:
            raise ConfigError("tolerance_scale", "must be >= 0")

    @property
    def quadrature(self) -> continuum.QuadratureSpec:
        return continuum.QuadratureSpec(self.n_radial, self.n_polar, self.p_max)

    def xi_grid(self) -> np.ndarray:
        return np.linspace(self.xi_min, self.xi_max, self.xi_steps)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, str):
        return v
    return f"{float(v):.9g}"


def _write(config: RunConfig, rows: list[dict], summary: dict) -> None:
    if config.output_path is None:
        return
    path = Path(config.output_path)
    if config.format == "json":
        doc = {
            "config": {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(config).items()},
            "rows": rows,
            "summary": summary,
            "versions": {"lorentz_entanglement": __version__, "numpy": np.__version__,
                         "scipy": scipy.__version__},
        }
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = COLUMNS[config.command]
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in cols])
    path.write_text(buf.getvalue())


def run_curve(config: RunConfig) -> int:
    sigma = config.sigma_over_m[0]
    curve = continuum.concurrence_curve(sigma, config.xi_grid(), config.quadrature,
                                        check_convergence=True)
    rows = [{"xi": xi, "concurrence": c} for xi, c in curve]
    summary = {"sigma_over_m": sigma, "initial": curve[0][1], "plateau": curve[-1][1]}
    _write(config, rows, summary)
    print(f"sigma_r/m={sigma:g}: C(xi={curve[0][0]:g})={curve[0][1]:.6f} "
          f"C(xi={curve[-1][0]:g})={curve[-1][1]:.6f}")
    return EXIT_OK


def run_saturation(config: RunConfig) -> int:
    rows = []
    for sigma in config.sigma_over_m:
        level = continuum.saturation_level(sigma, config.quadrature)
        fine = continuum.saturation_level(sigma, config.quadrature.refined())
        if abs(level - fine) > continuum.CONVERGENCE_RTOL:
            raise ConvergenceError(f"saturation level at sigma_r/m={sigma} did not converge")
        rows.append({"sigma_over_m": sigma, "saturation_level": level})
        print(f"sigma_r/m={sigma:g}: C_inf={level:.6f}")
    _write(config, rows, {"n": len(rows)})
    return EXIT_OK


def run_critical(config: RunConfig) -> int:
    try:
        root = continuum.critical_ratio(config.quadrature, config.bracket)
    except DomainError as exc:
        raise ConfigError("bracket", str(exc)) from None
    rows = [{"bracket_low": config.bracket[0], "bracket_high": config.bracket[1],
             "critical_ratio": root}]
    _write(config, rows, {"critical_ratio": root})
    print(f"critical sigma_r/m = {root:.3f}")
    return EXIT_OK


def run_perp(config: RunConfig) -> int:
    state = discrete.perpendicular_decay_state(config.p)
    rows = []
    for xi in config.xi_grid():
        c_pipe = discrete.spin_concurrence(discrete.apply_boost(state, float(xi)))
        c_closed = discrete.perp_concurrence_closed_form(config.p, float(xi))
        rows.append({"p": config.p, "xi": float(xi), "c_pipeline": c_pipe, "c_closed_form": c_closed})
    worst = max(abs(r["c_pipeline"] - r["c_closed_form"]) for r in rows)
    _write(config, rows, {"max_discrepancy": worst})
    print(f"p={config.p:g}: max |C_pipeline - C_closed_form| = {worst:.3e}")
    return EXIT_OK


def run_verify(config: RunConfig) -> int:
    results = verification.run_suite(config.seed, config.samples, config.tolerance_scale)
    rows = []
    for r in results:
        rows.append({"property": r.name, "max_deviation": r.max_deviation,
                     "tolerance": r.tolerance, "passed": r.passed})
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:34s} max_dev={r.max_deviation:.3e} "
              f"tol={r.tolerance:.1e}")
    ok = verification.all_passed(results)
    _write(config, rows, {"all_passed": ok})
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


COMMANDS = {
    "curve": run_curve,
    "saturation": run_saturation,
    "critical": run_critical,
    "perp": run_perp,
    "verify": run_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lorentz-entanglement",
        description="Spin entanglement of boosted spin-1/2 pairs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", dest="output_path", default=None, help="data file to write")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--n-radial", type=int, default=128)
        p.add_argument("--n-polar", type=int, default=64)
        p.add_argument("--p-max", type=float, default=None,
                       help="radial cutoff (default 8 * sigma_r)")

    def xi_grid(p):
        p.add_argument("--xi-min", type=float, default=0.0)
        p.add_argument("--xi-max", type=float, default=10.0)
        p.add_argument("--xi-steps", type=int, default=50)

    p = sub.add_parser("curve", help="concurrence vs rapidity for a Bell pair")
    common(p)
    xi_grid(p)
    p.add_argument("--sigma-over-m", type=float, default=1.0)

    p = sub.add_parser("saturation", help="infinite-boost concurrence")
    common(p)
    p.add_argument("--sigma-over-m", type=float, nargs="+", default=[1.0])

    p = sub.add_parser("critical", help="sigma_r/m where the saturation level vanishes")
    common(p)
    p.add_argument("--bracket", type=float, nargs=2, default=[3.0, 3.8], metavar=("LOW", "HIGH"))

    p = sub.add_parser("perp", help="perpendicular-decay state vs its closed form")
    common(p)
    xi_grid(p)
    p.add_argument("--p", type=float, default=1.0)

    p = sub.add_parser("verify", help="randomised invariant suite")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--tolerance-scale", type=float, default=1.0,
                   help="multiply every tolerance; 0 checks that the harness can fail")
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name, value in vars(args).items():
        if name == "command" or not hasattr(cfg, name):
            continue
        if name == "sigma_over_m" and not isinstance(value, list):
            value = [value]
        if name == "bracket":
            value = tuple(value)
        setattr(cfg, name, value)
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
