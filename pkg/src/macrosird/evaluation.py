"""Policy loss and the grid search over lockdown rules.

The loss accumulates, undiscounted over a fixed horizon, the powered
monetary output shortfall plus the powered cumulative death stock weighted
by the statistical value of life. Using the death *stock* each day means an
early death is charged on every subsequent day of the horizon, which is
what makes late-but-equal death counts cheaper; this is deliberate and the
summaries report it as such.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ModelError
from .policy import PolicyRegime
from .scenario import ScenarioConfig, Trajectory, run_scenario


@dataclass
class LossParams:
    """Loss shape: power ``m`` (1 linear, 2 quadratic), death weight
    ``chi`` (currency per death), evaluation horizon, and the benchmark
    output the gap is measured against."""

    m_power: float = 1.0
    chi: float = 0.64e6
    horizon_days: int = 810
    y_bar: float = 2.7e12


@dataclass
class CellResult:
    """One (theta0, mu) cell of the loss surface."""

    theta0: float
    mu: float
    psi: float | None
    psi_normalized: float | None
    terminal_deaths: float | None
    min_output_ratio: float | None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass
class LossReport:
    """Loss surface over the policy grid plus its minimizer."""

    cells: list[CellResult]
    argmin: tuple[float, float] | None
    m_power: float
    horizon_days: int

    def cell(self, theta0: float, mu: float) -> CellResult:
        for c in self.cells:
            if c.theta0 == theta0 and c.mu == mu:
                return c
        raise KeyError((theta0, mu))


def loss_psi(traj: Trajectory, lp: LossParams) -> float:
    """Accumulated policy loss over days 0..horizon_days inclusive.

    Each day contributes ``((1 - Y/y_bar) * y_bar)**m + chi * D**m`` with D
    the cumulative death stock. Raises :class:`ModelError` if the
    trajectory is shorter than the horizon, or on a negative gap term with
    a non-integer power (which the labor cap rules out in-model but a
    hand-built trajectory could produce).
    """
    m = lp.m_power
    if traj.rows[-1].day < lp.horizon_days:
        raise ModelError(
            f"trajectory covers {traj.rows[-1].day} days but the loss "
            f"horizon is {lp.horizon_days}")
    total = 0.0
    integral_power = m == int(m)
    for row in traj.rows[:lp.horizon_days + 1]:
        shortfall = (1.0 - row.output / lp.y_bar) * lp.y_bar
        if shortfall < 0.0 and not integral_power:
            raise ModelError(
                f"day {row.day}: negative output shortfall {shortfall!r} "
                f"with non-integer loss power {m!r} is undefined")
        total += shortfall ** m + lp.chi * row.d ** m
    return total


def _evaluate_cell(cfg: ScenarioConfig, theta0: float, mu: float,
                   lp: LossParams) -> CellResult:
    regime = replace(cfg.policy, kind="soft", theta0=theta0, mu=mu)
    run_days = max(cfg.run_days, lp.horizon_days)
    cell_cfg = replace(cfg, policy=regime, run_days=run_days)
    traj = run_scenario(cell_cfg)
    psi = loss_psi(traj, lp)
    horizon_rows = traj.rows[:lp.horizon_days + 1]
    return CellResult(
        theta0=theta0,
        mu=mu,
        psi=psi,
        psi_normalized=psi / lp.y_bar ** lp.m_power,
        terminal_deaths=horizon_rows[-1].d,
        min_output_ratio=min(r.output for r in horizon_rows) / lp.y_bar,
    )


def policy_sweep(cfg: ScenarioConfig, theta_grid: list[float],
                 mu_grid: list[float], lp: LossParams) -> LossReport:
    """Evaluate the loss for every (theta0, mu) soft-rule cell.

    Each cell simulates the same scenario from the same initial state with
    only the policy swapped (run length is extended to the loss horizon if
    needed), so cells are independent and the report does not depend on
    evaluation order. A cell whose simulation raises a model error is kept
    in the report with its diagnostic and excluded from the argmin.
    """
    if not theta_grid or not mu_grid:
        raise ValueError("theta_grid and mu_grid must be non-empty")
    cells = []
    for mu in mu_grid:
        for theta0 in theta_grid:
            try:
                cells.append(_evaluate_cell(cfg, theta0, mu, lp))
            except ModelError as exc:
                cells.append(CellResult(theta0=theta0, mu=mu, psi=None,
                                        psi_normalized=None,
                                        terminal_deaths=None,
                                        min_output_ratio=None,
                                        error=str(exc)))
    # tie-break on (theta0, mu) so the argmin is independent of grid order
    viable = [c for c in cells if not c.failed]
    best = min(viable, key=lambda c: (c.psi, c.theta0, c.mu), default=None)
    argmin = (best.theta0, best.mu) if best is not None else None
    return LossReport(cells=cells, argmin=argmin, m_power=lp.m_power,
                      horizon_days=lp.horizon_days)
