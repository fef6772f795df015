"""Command-line driver.

Subcommands:

* ``run``      simulate one scenario; writes trajectory/quarterly/plot-data
  CSVs and a trajectory figure into the output directory.
* ``sweep``    grid-search (theta0, mu) soft rules against the loss; writes
  the loss-surface CSV and figure.
* ``validate`` parse and validate a configuration, nothing else.

Exit codes: 0 success, 1 configuration error, 2 runtime model error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ConfigError, ModelError
from .evaluation import LossParams, policy_sweep
from .plots import render_run_figures, render_sweep_figure
from .reporting import export_loss_csv, write_outputs
from .scenario import load_scenario, quarterly_table, run_scenario


def _read_config(path: str | None):
    if path is None:
        text = ""
    else:
        text = Path(path).read_text()
    return load_scenario(text)


def _parse_grid(spec: str, what: str) -> list[float]:
    """Grid syntax: ``0.1,0.2,0.3`` or ``start:stop:step`` (inclusive)."""
    try:
        if ":" in spec:
            start_s, stop_s, step_s = spec.split(":")
            start, stop, step = float(start_s), float(stop_s), float(step_s)
            if step <= 0 or stop < start:
                raise ValueError
            count = int(round((stop - start) / step)) + 1
            return [round(start + k * step, 12) for k in range(count)]
        return [float(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(
            f"{what}: expected 'a,b,c' or 'start:stop:step', got {spec!r}")


def _apply_run_overrides(cfg, args) -> None:
    if args.days is not None:
        if args.days < 0:
            raise ConfigError("run_days: must be >= 0")
        cfg.run_days = args.days
    if args.regime is not None:
        cfg.policy.kind = args.regime
    if args.theta0 is not None:
        if not 0.0 < args.theta0 <= 1.0:
            raise ConfigError("policy.theta0: must be in (0, 1]")
        cfg.policy.theta0 = args.theta0
    if args.mu is not None:
        if args.mu < 0.0:
            raise ConfigError("policy.mu: must be >= 0")
        cfg.policy.mu = args.mu


def _cmd_run(args) -> int:
    cfg = _read_config(args.config)
    _apply_run_overrides(cfg, args)
    traj = run_scenario(cfg)
    quarters = quarterly_table(traj) if cfg.run_days >= 90 else []
    paths = write_outputs(traj, quarters, args.out_dir)
    if not args.no_plots:
        for p in render_run_figures(traj, args.out_dir):
            paths[f"figure {p.stem}"] = p

    last = traj.final
    n = traj.n_total
    resolved = last.d + last.clinical_recoveries
    fatality = 100.0 * last.d / resolved if resolved else 0.0
    print(f"regime={cfg.policy.kind} days={cfg.run_days}")
    print(f"deaths={last.d:,.0f} ({100.0 * last.d / n:.3f}% of population)")
    print(f"herd_immunity={100.0 * last.ever_asymptomatic / n:.2f}%  "
          f"case_fatality={fatality:.2f}%")
    print(f"min_output_ratio={min(r.output for r in traj.rows) / traj.y_bar:.4f}")
    for name, p in paths.items():
        print(f"wrote {name}: {p}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _read_config(args.config)
    if args.days is not None:
        if args.days < 0:
            raise ConfigError("run_days: must be >= 0")
        cfg.run_days = args.days
    lp = LossParams(
        m_power=args.m_power if args.m_power is not None else cfg.loss.m_power,
        chi=cfg.loss.chi,
        horizon_days=(args.horizon if args.horizon is not None
                      else cfg.loss.horizon_days),
        y_bar=cfg.economy.y_bar,
    )
    if lp.m_power <= 0:
        raise ConfigError("loss.m: must be > 0")
    if lp.horizon_days < 1:
        raise ConfigError("loss.horizon_days: must be >= 1")
    theta_grid = _parse_grid(args.theta0_grid, "theta0 grid")
    mu_grid = _parse_grid(args.mu_grid, "mu grid")
    for th in theta_grid:
        if not 0.0 < th <= 1.0:
            raise ConfigError(f"theta0 grid: value {th!r} outside (0, 1]")
    for mu in mu_grid:
        if mu < 0.0:
            raise ConfigError(f"mu grid: value {mu!r} must be >= 0")

    report = policy_sweep(cfg, theta_grid, mu_grid, lp)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / "loss_surface.csv"
    export_loss_csv(report, csv_path)
    paths = [csv_path]
    if not args.no_plots:
        paths += render_sweep_figure(report, outdir)

    failed = [c for c in report.cells if c.failed]
    if report.argmin is not None:
        best = report.cell(*report.argmin)
        print(f"argmin: theta0={best.theta0:g} mu={best.mu:g} "
              f"psi={best.psi:.6e} (m={lp.m_power:g}, horizon={lp.horizon_days})")
    else:
        print("argmin: none (every cell failed)")
    for c in failed:
        print(f"failed cell theta0={c.theta0:g} mu={c.mu:g}: {c.error}",
              file=sys.stderr)
    for p in paths:
        print(f"wrote {p}")
    return 0


def _cmd_validate(args) -> int:
    _read_config(args.config)
    print("configuration OK")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macrosird",
        description="Deterministic macro-SIRD epidemic and lockdown-policy "
                    "simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate one scenario")
    run.add_argument("--config", help="scenario YAML (defaults when omitted)")
    run.add_argument("--out-dir", default="out", help="output directory")
    run.add_argument("--days", type=int, help="override run_days")
    run.add_argument("--regime", choices=("none", "hard", "soft"),
                     help="override policy.kind")
    run.add_argument("--theta0", type=float, help="override policy.theta0")
    run.add_argument("--mu", type=float, help="override policy.mu")
    run.add_argument("--no-plots", action="store_true",
                     help="skip figure rendering")
    run.set_defaults(func=_cmd_run)

    sweep = sub.add_parser("sweep", help="loss grid search over (theta0, mu)")
    sweep.add_argument("--config", help="scenario YAML (defaults when omitted)")
    sweep.add_argument("--out-dir", default="out", help="output directory")
    sweep.add_argument("--days", type=int, help="override run_days")
    sweep.add_argument("--theta0-grid", default="0.1:0.9:0.1",
                       help="comma list or start:stop:step (default 0.1:0.9:0.1)")
    sweep.add_argument("--mu-grid", default="0.01,0.5,1,2",
                       help="comma list or start:stop:step")
    sweep.add_argument("--m-power", type=float, help="loss power m")
    sweep.add_argument("--horizon", type=int, help="loss horizon in days")
    sweep.add_argument("--no-plots", action="store_true",
                       help="skip figure rendering")
    sweep.set_defaults(func=_cmd_sweep)

    val = sub.add_parser("validate", help="check a configuration and exit")
    val.add_argument("--config", help="scenario YAML (defaults when omitted)")
    val.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except (ModelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
