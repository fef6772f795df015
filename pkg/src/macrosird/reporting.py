"""Delimited-text output: trajectory, quarterly, loss-surface, plot data.

Floats are written with ``repr`` so a re-parsed file reproduces every value
bit for bit; booleans travel as 0/1.
"""

from __future__ import annotations

import csv
from dataclasses import fields
from pathlib import Path

from .evaluation import LossReport
from .scenario import QuarterRow, Trajectory, TrajectoryRow

_ROW_FIELDS = [f.name for f in fields(TrajectoryRow)]
_INT_FIELDS = {"day"}
_BOOL_FIELDS = {"lockdown_active"}


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    return repr(value)


def export_trajectory_csv(traj: Trajectory, destination) -> None:
    """One row per day, header first; exact round-trip precision."""
    with open(destination, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_ROW_FIELDS)
        for row in traj.rows:
            writer.writerow(_fmt(getattr(row, name)) for name in _ROW_FIELDS)


def parse_trajectory_csv(source) -> list[TrajectoryRow]:
    """Inverse of :func:`export_trajectory_csv` (rows only)."""
    rows = []
    with open(source, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != _ROW_FIELDS:
            raise ValueError(f"{source}: unexpected trajectory header")
        for record in reader:
            kwargs = {}
            for name, cell in zip(_ROW_FIELDS, record):
                if name in _INT_FIELDS:
                    kwargs[name] = int(cell)
                elif name in _BOOL_FIELDS:
                    kwargs[name] = bool(int(cell))
                else:
                    kwargs[name] = float(cell)
            rows.append(TrajectoryRow(**kwargs))
    return rows


def export_quarterly_csv(rows: list[QuarterRow], destination) -> None:
    names = [f.name for f in fields(QuarterRow)]
    with open(destination, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names)
        for row in rows:
            writer.writerow(_fmt(getattr(row, name)) for name in names)


_LOSS_COLUMNS = ["theta0", "mu", "psi", "psi_normalized", "terminal_deaths",
                 "min_output_ratio", "is_argmin", "error"]


def export_loss_csv(report: LossReport, destination) -> None:
    """One row per grid cell; the argmin cell is flagged."""
    with open(destination, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_LOSS_COLUMNS)
        for cell in report.cells:
            is_argmin = (report.argmin is not None
                         and (cell.theta0, cell.mu) == report.argmin)
            writer.writerow([
                _fmt(cell.theta0), _fmt(cell.mu),
                "" if cell.psi is None else _fmt(cell.psi),
                "" if cell.psi_normalized is None else _fmt(cell.psi_normalized),
                "" if cell.terminal_deaths is None else _fmt(cell.terminal_deaths),
                "" if cell.min_output_ratio is None else _fmt(cell.min_output_ratio),
                _fmt(is_argmin),
                cell.error or "",
            ])


def export_plot_data(traj: Trajectory, destination) -> None:
    """Long-format (day, series, value) file for external plotting tools."""
    series = [name for name in _ROW_FIELDS if name != "day"]
    with open(destination, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["day", "series", "value"])
        for row in traj.rows:
            for name in series:
                value = getattr(row, name)
                if isinstance(value, bool):
                    value = int(value)
                writer.writerow([row.day, name, _fmt(value)])


def write_outputs(traj: Trajectory, quarterly: list[QuarterRow],
                  outdir) -> dict[str, Path]:
    """Write the standard run outputs into a directory; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {
        "trajectory": outdir / "trajectory.csv",
        "quarterly": outdir / "quarterly.csv",
        "plot_data": outdir / "plot_data.csv",
    }
    export_trajectory_csv(traj, paths["trajectory"])
    export_quarterly_csv(quarterly, paths["quarterly"])
    export_plot_data(traj, paths["plot_data"])
    return paths
