"""Lockdown controllers and the transmission-rate mapping.

Three regimes produce the daily activity factor ``theta`` (the share of the
general workforce allowed to work, also the transmission throttle):

* ``none``   - theta is 1 forever.
* ``hard``   - theta switches between a floor ``theta0`` and 1 with
  hysteresis: it drops when the binding resource demand reaches its maximum
  level (band stress >= 1) and lifts only once demand falls back below the
  normal level (band stress < 0). Inside the band the previous value holds.
* ``soft``   - theta tracks the band position continuously through a power
  rule once the band stress first reaches an activation level, and lets go
  when stress returns to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .capacity import StressSnapshot
from .epidemic import DiseaseParams
from .errors import ConfigError

REGIME_KINDS = ("none", "hard", "soft")


@dataclass
class PolicyRegime:
    """Controller configuration.

    ``theta0`` is the activity floor in (0, 1]; a value of exactly 1 makes
    every regime equivalent to no lockdown. ``mu`` shapes the soft rule
    (below 1 concave and stricter, 1 linear, above 1 convex and looser;
    0 degenerates to a hard floor). ``activation_stress`` is the band
    position at which a soft controller first engages.
    """

    kind: str = "none"
    theta0: float = 0.5
    mu: float = 1.0
    activation_stress: float = 0.75


@dataclass
class ControllerState:
    """Per-run controller memory; never share one across runs."""

    in_lockdown: bool = False
    engaged: bool = False
    theta_prev: float = 1.0


def theta_hard(snap: StressSnapshot, regime: PolicyRegime,
               ctrl: ControllerState) -> tuple[float, ControllerState]:
    """Two-level rule with a hysteresis band.

    Triggers at ``band_stress >= 1`` (demand at the maximum level), releases
    strictly below the normal level (``band_stress < 0``), and holds the
    previous regime value anywhere inside the band.
    """
    in_lockdown = ctrl.in_lockdown
    if snap.band_stress >= 1.0:
        in_lockdown = True
    elif snap.band_stress < 0.0:
        in_lockdown = False
    theta = regime.theta0 if in_lockdown else 1.0
    return theta, ControllerState(in_lockdown=in_lockdown, engaged=ctrl.engaged,
                                  theta_prev=theta)


def theta_soft(snap: StressSnapshot, regime: PolicyRegime,
               ctrl: ControllerState) -> tuple[float, ControllerState]:
    """Power-rule controller on the clamped band position Z.

    Idle until Z first reaches ``activation_stress``; while engaged,
    ``theta = (theta0 - 1) * Z**mu + 1``, so theta spans [theta0, 1].
    Disengages when Z returns to zero and may re-engage in later episodes.
    ``mu = 0`` uses the convention ``Z**0 := 0 at Z = 0, else 1``, which
    recovers a hard floor while engaged.
    """
    if snap.h_max <= snap.l_norm:
        raise ConfigError(
            "capacity: maximum stress level must exceed the normal level "
            f"(h_max={snap.h_max!r}, l_norm={snap.l_norm!r})")
    z = min(max(snap.band_stress, 0.0), 1.0)
    engaged = ctrl.engaged
    if not engaged and z >= regime.activation_stress:
        engaged = True
    elif engaged and z == 0.0:
        engaged = False
    if engaged:
        if regime.mu == 0.0:
            z_pow = 0.0 if z == 0.0 else 1.0
        else:
            z_pow = z ** regime.mu
        theta = (regime.theta0 - 1.0) * z_pow + 1.0
    else:
        theta = 1.0
    return theta, ControllerState(in_lockdown=ctrl.in_lockdown, engaged=engaged,
                                  theta_prev=theta)


def step_policy(snap: StressSnapshot, regime: PolicyRegime,
                ctrl: ControllerState) -> tuple[float, ControllerState]:
    """Dispatch one controller update for the configured regime."""
    if regime.kind == "none":
        return 1.0, replace(ctrl, theta_prev=1.0)
    if regime.kind == "hard":
        return theta_hard(snap, regime, ctrl)
    if regime.kind == "soft":
        return theta_soft(snap, regime, ctrl)
    raise ConfigError(f"policy.kind: unknown regime {regime.kind!r}")


def effective_lambdas(p: DiseaseParams, theta: float, day: int) -> tuple[float, float]:
    """Transmission rates for the day, throttled by ``theta**(1 + nu)``.

    The bases jump to their post-variant values strictly after
    ``mutation_day``.
    """
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"theta={theta!r} outside (0, 1]")
    if day > p.mutation_day:
        base_g, base_h = p.lambda_g_post, p.lambda_h_post
    else:
        base_g, base_h = p.lambda_g_base, p.lambda_h_base
    scale = theta ** (1.0 + p.nu)
    return base_g * scale, base_h * scale


def contact_mix(p: DiseaseParams, lockdown_active: bool) -> tuple[float, float]:
    """Contact proportions (lambda0, lambda1) keyed on lockdown state."""
    idx = 1 if lockdown_active else 0
    return p.lambda0_pair[idx], p.lambda1_pair[idx]
