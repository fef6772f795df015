"""Format contracts for the delimited outputs."""

import csv

from macrosird import LossParams, Trajectory, default_scenario, policy_sweep, run_scenario
from macrosird.reporting import (export_loss_csv, export_plot_data,
                                 export_trajectory_csv)


def test_empty_trajectory_exports_header_only(tmp_path):
    empty = Trajectory(rows=[], n_total=1.0, y_bar=1.0, l_bar=1.0)
    path = tmp_path / "empty.csv"
    export_trajectory_csv(empty, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 1
    assert rows[0][:3] == ["day", "s_g", "s_h"]


def test_loss_csv_columns_and_argmin_flag(tmp_path):
    cfg = default_scenario()
    cfg.run_days = 120
    report = policy_sweep(cfg, [0.4, 0.8], [1.0], LossParams(horizon_days=120))
    path = tmp_path / "loss.csv"
    export_loss_csv(report, path)
    with open(path, newline="") as fh:
        records = list(csv.DictReader(fh))
    assert {"theta0", "mu", "psi", "terminal_deaths",
            "min_output_ratio"} <= set(records[0])
    assert sum(r["is_argmin"] == "1" for r in records) == 1
    flagged = next(r for r in records if r["is_argmin"] == "1")
    assert (float(flagged["theta0"]), float(flagged["mu"])) == report.argmin


def test_plot_data_long_format(tmp_path):
    cfg = default_scenario()
    cfg.run_days = 3
    traj = run_scenario(cfg)
    path = tmp_path / "plot.csv"
    export_plot_data(traj, path)
    with open(path, newline="") as fh:
        records = list(csv.DictReader(fh))
    assert set(records[0]) == {"day", "series", "value"}
    days = {r["day"] for r in records}
    assert days == {"0", "1", "2", "3"}
    series = {r["series"] for r in records}
    assert {"theta", "output", "d", "h_b"} <= series
    theta0 = next(r for r in records
                  if r["series"] == "theta" and r["day"] == "0")
    assert float(theta0["value"]) == 1.0
