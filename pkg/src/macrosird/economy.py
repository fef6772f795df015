"""Labor supply and aggregate output.

The general workforce (susceptible, asymptomatic, and recovered returnees)
is scaled by the lockdown factor ``theta``; health workers are exempt from
lockdown and enter at a fixed output-conversion multiplier. Output follows
a Cobb-Douglas technology normalized so the benchmark labor force produces
exactly the benchmark output.
"""

from __future__ import annotations

from dataclasses import dataclass

from .epidemic import CompartmentState, work_returned


@dataclass
class EconomyParams:
    """Labor share, health-worker multiplier, and benchmarks.

    ``l_bar`` defaults to the labor force of the initial state at theta = 1
    (resolved when a scenario is built), which pins the day-zero output gap
    to exactly zero.
    """

    alpha_share: float = 0.35
    a_multiplier: float = 3.0
    y_bar: float = 2.7e12
    l_bar: float | None = None
    delta_g: int = 14
    delta_h: int = 14


def labor_force(state: CompartmentState, theta: float, ep: EconomyParams) -> float:
    """Effective labor on one day.

    ``theta * (S_g + A_g + returned_g) + a * (S_h + A_h + returned_h)``;
    the sick (mild or severe) and the convalescing are out of work, the
    health-worker term is not throttled by lockdown.
    """
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"theta={theta!r} outside (0, 1]")
    general = state.s_g + state.a_g + work_returned(state, "g", ep.delta_g)
    health = state.s_h + state.a_h + work_returned(state, "h", ep.delta_h)
    return theta * general + ep.a_multiplier * health


def output(labor: float, ep: EconomyParams) -> float:
    """Cobb-Douglas output ``y_bar * (L / l_bar)**alpha_share``."""
    if labor < 0.0:
        raise ValueError("labor must be >= 0")
    if ep.l_bar is None:
        raise ValueError("economy.l_bar is unresolved; build params via a scenario")
    return ep.y_bar * (labor / ep.l_bar) ** ep.alpha_share


def output_gap(y: float, ep: EconomyParams) -> float:
    """Fractional shortfall from benchmark output (negative if above it)."""
    return 1.0 - y / ep.y_bar
