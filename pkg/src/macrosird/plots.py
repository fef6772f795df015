"""Matplotlib figures rendered to files alongside the delimited output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .evaluation import LossReport
from .scenario import Trajectory


def render_run_figures(traj: Trajectory, outdir) -> list[Path]:
    """Four-panel trajectory figure: compartments, policy and stress,
    treatment probabilities, and the output path."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    days = [r.day for r in traj.rows]

    fig, axes = plt.subplots(2, 2, figsize=(12, 8))

    ax = axes[0, 0]
    ax.plot(days, [r.a_g + r.a_h for r in traj.rows], label="asymptomatic")
    ax.plot(days, [r.im_g + r.im_h for r in traj.rows], label="mild")
    ax.plot(days, [r.ic_g + r.ic_h for r in traj.rows], label="severe")
    ax.plot(days, [r.d for r in traj.rows], label="deaths (cum.)", color="black")
    ax.set_xlabel("day")
    ax.set_ylabel("persons")
    ax.set_title("Infection stocks")
    ax.legend()

    ax = axes[0, 1]
    ax.plot(days, [r.theta for r in traj.rows], label=r"activity factor $\theta$")
    ax.plot(days, [min(max(r.band_stress, 0.0), 1.5) for r in traj.rows],
            label="band stress (clipped)", alpha=0.7)
    ax.plot(days, [r.h_b for r in traj.rows], label="bed stress", alpha=0.7)
    ax.axhline(1.0, color="gray", lw=0.8, ls="--")
    ax.set_xlabel("day")
    ax.set_title("Policy and health-system stress")
    ax.legend()

    ax = axes[1, 0]
    ax.plot(days, [r.alpha_m for r in traj.rows], label=r"$\alpha_m$ (mild untreated)")
    ax.plot(days, [r.alpha_c for r in traj.rows], label=r"$\alpha_c$ (severe untreated)")
    ax.set_xlabel("day")
    ax.set_ylabel("probability")
    ax.set_ylim(-0.02, 1.05)
    ax.set_title("No-treatment probabilities")
    ax.legend()

    ax = axes[1, 1]
    ax.plot(days, [r.output / traj.y_bar for r in traj.rows], color="darkgreen")
    ax.axhline(1.0, color="gray", lw=0.8, ls="--")
    ax.set_xlabel("day")
    ax.set_ylabel("output / benchmark")
    ax.set_title("Aggregate output")

    fig.tight_layout()
    path = outdir / "trajectory.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return [path]


def render_sweep_figure(report: LossReport, outdir) -> list[Path]:
    """Loss versus theta0, one curve per mu, argmin marked."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    by_mu: dict[float, list] = {}
    for cell in report.cells:
        by_mu.setdefault(cell.mu, []).append(cell)

    fig, ax = plt.subplots(figsize=(8, 5))
    for mu, cells in sorted(by_mu.items()):
        ok = sorted((c for c in cells if not c.failed), key=lambda c: c.theta0)
        ax.plot([c.theta0 for c in ok], [c.psi for c in ok],
                marker="o", ms=3, label=rf"$\mu$ = {mu:g}")
    if report.argmin is not None:
        best = report.cell(*report.argmin)
        ax.plot([best.theta0], [best.psi], marker="*", ms=15,
                color="red", zorder=5, label="argmin")
    ax.set_xlabel(r"activity floor $\theta_0$")
    ax.set_ylabel(rf"loss $\Psi$ (m = {report.m_power:g})")
    ax.set_title("Policy loss surface")
    ax.legend()
    fig.tight_layout()
    path = outdir / "loss_surface.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return [path]
