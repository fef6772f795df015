"""Scenario configuration, the daily simulation loop, and summary tables.

A scenario document is YAML (plain JSON also parses) with up to six nested
sections -- ``disease``, ``capacity``, ``economy``, ``policy``, ``loss``,
``initial`` -- plus a top-level ``run_days``. Every key has a default, so
the empty document is a complete benchmark scenario; unknown keys are
rejected with their full path.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

import yaml

from .capacity import CapacityParams, alpha_c, alpha_m, stress
from .economy import EconomyParams, labor_force, output, output_gap
from .epidemic import (CompartmentState, DiseaseParams, initial_state,
                       step_disease)
from .errors import ConfigError, ModelError
from .policy import (REGIME_KINDS, ControllerState, PolicyRegime, contact_mix,
                     effective_lambdas, step_policy)


@dataclass
class InitialSeeds:
    """Day-zero stocks; everything else starts at zero."""

    s_g: float = 884.0e6
    s_h: float = 0.76e6
    a_g: float = 1000.0


@dataclass
class ScenarioConfig:
    disease: DiseaseParams = field(default_factory=DiseaseParams)
    capacity: CapacityParams = field(default_factory=CapacityParams)
    economy: EconomyParams = field(default_factory=EconomyParams)
    policy: PolicyRegime = field(default_factory=PolicyRegime)
    loss: "LossSettings" = field(default_factory=lambda: LossSettings())
    initial: InitialSeeds = field(default_factory=InitialSeeds)
    run_days: int = 810


@dataclass
class LossSettings:
    """Loss-function knobs carried by the scenario (benchmark output is
    taken from the economy section)."""

    m_power: float = 1.0
    chi: float = 0.64e6
    horizon_days: int = 810


@dataclass
class TrajectoryRow:
    """One simulated day: stocks, controls, stress, and the economy."""

    day: int
    s_g: float
    s_h: float
    a_g: float
    a_h: float
    im_g: float
    im_h: float
    ic_g: float
    ic_h: float
    r_g: float
    r_h: float
    d: float
    theta: float
    lambda_g: float
    lambda_h: float
    h_g: float
    h_b: float
    alpha_m: float
    alpha_c: float
    kappa: float
    band_stress: float
    labor: float
    output: float
    output_gap: float
    lockdown_active: bool
    ever_asymptomatic: float
    ever_mild: float
    ever_severe: float
    clinical_recoveries: float


@dataclass
class Trajectory:
    """Per-day rows (one per day, day 0 included) plus run-level constants."""

    rows: list[TrajectoryRow]
    n_total: float
    y_bar: float
    l_bar: float

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def final(self) -> TrajectoryRow:
        return self.rows[-1]


@dataclass
class QuarterRow:
    """Cumulative tallies at the end of one 90-day quarter."""

    quarter: int
    day: int
    mild_infections: float
    severe_infections: float
    recoveries: float
    deaths: float
    fatality_pct: float
    herd_immunity_pct: float


# --------------------------------------------------------------------------
# Configuration schema
#
# Each entry maps a config key to (dataclass attribute, parser). Aliases map
# alternate spellings onto the same attribute.

def _as_float(path, raw):
    # YAML 1.1 reads exponents without a sign ("0.49e6") as strings; accept
    # any string that parses as a float so table-style notation works.
    if isinstance(raw, str):
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"{path}: expected a number, got {raw!r}") from None
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {raw!r}")
    return float(raw)


def _as_int(path, raw):
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ConfigError(f"{path}: expected an integer, got {raw!r}")
    return raw


def _as_pair(path, raw):
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise ConfigError(f"{path}: expected a [no-lockdown, lockdown] pair of numbers")
    return (_as_float(path, raw[0]), _as_float(path, raw[1]))


def _as_str(path, raw):
    if not isinstance(raw, str):
        raise ConfigError(f"{path}: expected a string, got {raw!r}")
    return raw


_DISEASE_KEYS = {
    "beta0": ("beta0", _as_float),
    "beta1": ("beta1", _as_float),
    "gamma1": ("gamma1", _as_float),
    "alpha0": ("alpha0", _as_float),
    "alpha1": ("alpha1", _as_float),
    "alpha22": ("alpha22", _as_float),
    "alpha3": ("alpha3", _as_float),
    "alpha42": ("alpha42", _as_float),
    "c_m": ("c_m", _as_float),
    "c_i": ("c_i", _as_float),
    "lambda_h": ("lambda_h_base", _as_float),
    "nu": ("nu", _as_float),
    "lambda0": ("lambda0_pair", _as_pair),
    "lambda1": ("lambda1_pair", _as_pair),
    "delta_g": ("delta_g", _as_int),
    "delta_h": ("delta_h", _as_int),
    "mutation_day": ("mutation_day", _as_int),
    "lambda_g_post": ("lambda_g_post", _as_float),
    "lambda_h_post": ("lambda_h_post", _as_float),
    "delta_a": ("delta_a", _as_int),
    "delta_m": ("delta_m", _as_int),
    "delta_i": ("delta_i", _as_int),
}

_CAPACITY_KEYS = {
    "beds": ("beds", _as_float),
    "phi_m": ("phi_m_pair", _as_pair),
    "phi_c": ("phi_c_pair", _as_pair),
    "lambda_m": ("lambda_m", _as_float),
    "lambda_c": ("lambda_c", _as_float),
    "lambda_b": ("lambda_b", _as_float),
    "epsilon_sat": ("epsilon_sat", _as_float),
}

_ECONOMY_KEYS = {
    "alpha": ("alpha_share", _as_float),
    "a": ("a_multiplier", _as_float),
    "alpha_h": ("a_multiplier", _as_float),  # parameter-table spelling
    "y_bar": ("y_bar", _as_float),
    "l_bar": ("l_bar", _as_float),
}

_POLICY_KEYS = {
    "kind": ("kind", _as_str),
    "theta0": ("theta0", _as_float),
    "mu": ("mu", _as_float),
    "activation_stress": ("activation_stress", _as_float),
}

_LOSS_KEYS = {
    "m": ("m_power", _as_float),
    "chi": ("chi", _as_float),
    "horizon_days": ("horizon_days", _as_int),
}

_INITIAL_KEYS = {
    "s_g": ("s_g", _as_float),
    "s_h": ("s_h", _as_float),
    "a_g": ("a_g", _as_float),
}

_SECTIONS = {
    "disease": (_DISEASE_KEYS, DiseaseParams),
    "capacity": (_CAPACITY_KEYS, CapacityParams),
    "economy": (_ECONOMY_KEYS, EconomyParams),
    "policy": (_POLICY_KEYS, PolicyRegime),
    "loss": (_LOSS_KEYS, LossSettings),
    "initial": (_INITIAL_KEYS, InitialSeeds),
}


def _parse_section(name, mapping, factory, raw):
    obj = factory()
    if raw is None:
        return obj
    if not isinstance(raw, dict):
        raise ConfigError(f"{name}: expected a mapping of keys")
    for key, value in raw.items():
        if key not in mapping:
            raise ConfigError(f"{name}.{key}: unknown key")
        attr, parse = mapping[key]
        setattr(obj, attr, parse(f"{name}.{key}", value))
    return obj


def load_scenario(text: str) -> ScenarioConfig:
    """Parse and fully validate a scenario document.

    Omitted keys fall back to the benchmark defaults; the empty string is a
    valid document. Raises :class:`ConfigError` naming the offending key
    path on any unknown key, wrong type, or out-of-range value.
    """
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"document: not valid YAML ({exc})") from exc
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError("document: top level must be a mapping")

    cfg = ScenarioConfig()
    for key, value in raw.items():
        if key == "run_days":
            cfg.run_days = _as_int("run_days", value)
        elif key in _SECTIONS:
            mapping, factory = _SECTIONS[key]
            setattr(cfg, key, _parse_section(key, mapping, factory, value))
        else:
            raise ConfigError(f"{key}: unknown key")

    resolve_scenario(cfg)
    validate_scenario(cfg)
    return cfg


def resolve_scenario(cfg: ScenarioConfig) -> None:
    """Fill the derived fields: total population and benchmark labor."""
    cfg.disease.n_total = cfg.initial.s_g + cfg.initial.s_h + cfg.initial.a_g
    if cfg.economy.l_bar is None:
        seed = initial_state(cfg.initial.s_g, cfg.initial.s_h, cfg.initial.a_g)
        probe = replace(cfg.economy, l_bar=1.0)
        cfg.economy.l_bar = labor_force(seed, 1.0, probe)


def _require(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ConfigError(f"{path}: {message}")


def validate_scenario(cfg: ScenarioConfig) -> None:
    d, cp, ep, pol, lp, seeds = (cfg.disease, cfg.capacity, cfg.economy,
                                 cfg.policy, cfg.loss, cfg.initial)
    for name in ("alpha0", "alpha1", "alpha22", "alpha3", "alpha42"):
        _require(0.0 <= getattr(d, name) <= 1.0, f"disease.{name}", "must be in [0, 1]")
    for name in ("beta0", "beta1", "gamma1"):
        _require(0.0 < getattr(d, name) <= 1.0, f"disease.{name}", "must be in (0, 1]")
    _require(0.0 < d.lambda_g_base <= 1.0, "disease.c_m",
             "c_m * c_i (the base transmission rate) must be in (0, 1]")
    for name in ("lambda_h_base", "lambda_g_post", "lambda_h_post"):
        _require(0.0 < getattr(d, name) <= 1.0,
                 f"disease.{'lambda_h' if name == 'lambda_h_base' else name}",
                 "must be in (0, 1]")
    for name in ("lambda0_pair", "lambda1_pair"):
        pair = getattr(d, name)
        _require(all(0.0 <= v <= 1.0 for v in pair),
                 f"disease.{name.removesuffix('_pair')}",
                 "both members must be in [0, 1]")
    _require(d.nu >= 0.0, "disease.nu", "must be >= 0")
    for name in ("delta_g", "delta_h", "delta_a", "delta_m", "delta_i"):
        _require(getattr(d, name) >= 0, f"disease.{name}", "must be >= 0")
    _require(d.mutation_day >= 0, "disease.mutation_day", "must be >= 0")

    _require(cp.beds > 0.0, "capacity.beds", "must be > 0")
    for name in ("phi_m_pair", "phi_c_pair"):
        pair = getattr(cp, name)
        _require(all(0.0 < v <= 1.0 for v in pair),
                 f"capacity.{name.removesuffix('_pair')}",
                 "both members must be in (0, 1]")
    for name in ("lambda_m", "lambda_c", "lambda_b"):
        _require(getattr(cp, name) > 0.0, f"capacity.{name}", "must be > 0")
    _require(0.0 < cp.epsilon_sat < 0.1, "capacity.epsilon_sat",
             "must be in (0, 0.1)")

    _require(0.0 < ep.alpha_share < 1.0, "economy.alpha", "must be in (0, 1)")
    _require(ep.a_multiplier > 0.0, "economy.a", "must be > 0")
    _require(ep.y_bar > 0.0, "economy.y_bar", "must be > 0")
    _require(ep.l_bar is not None and ep.l_bar > 0.0, "economy.l_bar", "must be > 0")
    _require(ep.delta_g >= 0 and ep.delta_h >= 0, "economy.delta_g", "must be >= 0")

    _require(pol.kind in REGIME_KINDS, "policy.kind",
             f"must be one of {', '.join(REGIME_KINDS)}")
    _require(0.0 < pol.theta0 <= 1.0, "policy.theta0", "must be in (0, 1]")
    _require(pol.mu >= 0.0, "policy.mu", "must be >= 0")
    _require(0.0 <= pol.activation_stress <= 1.0, "policy.activation_stress",
             "must be in [0, 1]")

    _require(lp.m_power > 0.0, "loss.m", "must be > 0")
    _require(lp.chi >= 0.0, "loss.chi", "must be >= 0")
    _require(lp.horizon_days >= 1, "loss.horizon_days", "must be >= 1")

    for name in ("s_g", "s_h", "a_g"):
        _require(getattr(seeds, name) >= 0.0, f"initial.{name}", "must be >= 0")
    _require(cfg.disease.n_total > 0.0, "initial.s_g", "population must be > 0")
    _require(cfg.run_days >= 0, "run_days", "must be >= 0")


def dump_scenario(cfg: ScenarioConfig) -> str:
    """Serialize a configuration back to YAML (canonical keys only)."""
    doc: dict[str, Any] = {"run_days": cfg.run_days}
    for section, (mapping, _) in _SECTIONS.items():
        obj = getattr(cfg, section)
        out = {}
        for key, (attr, _parse) in mapping.items():
            if key == "alpha_h":  # alias, not a canonical key
                continue
            value = getattr(obj, attr)
            if isinstance(value, tuple):
                value = list(value)
            out[key] = value
        doc[section] = out
    return yaml.safe_dump(doc, sort_keys=False)


def default_scenario() -> ScenarioConfig:
    """The benchmark configuration (equivalent to loading an empty document)."""
    return load_scenario("")


# --------------------------------------------------------------------------
# Simulation loop


def run_scenario(cfg: ScenarioConfig) -> Trajectory:
    """Simulate the configured scenario day by day.

    The per-day cycle: measure health-system stress from the current state,
    update the controller to get theta, re-measure doctor stress if the
    lockdown flag flipped (the phi ratios switch with it), derive the day's
    transmission rates, contact mix, and treatment probabilities, score the
    economy, record the row, then advance the disease one day.

    The result always contains ``run_days + 1`` rows (day 0 included) and
    is a pure function of the configuration.
    """
    p, cp, ep = cfg.disease, cfg.capacity, cfg.economy
    state = initial_state(cfg.initial.s_g, cfg.initial.s_h, cfg.initial.a_g)
    ctrl = ControllerState()
    rows: list[TrajectoryRow] = []

    for day in range(cfg.run_days + 1):
        prev_active = ctrl.theta_prev < 1.0
        snap = stress(state, cp, prev_active, p.delta_h)
        theta, ctrl = step_policy(snap, cfg.policy, ctrl)
        active = theta < 1.0
        if active != prev_active:
            snap = stress(state, cp, active, p.delta_h)

        a_m = alpha_m(snap.h_g, cp.lambda_m, cp.epsilon_sat)
        a_c = alpha_c(snap.h_g, snap.h_b, cp.lambda_c, cp.lambda_b, cp.epsilon_sat)
        lam_g, lam_h = effective_lambdas(p, theta, day)
        lam0, lam1 = contact_mix(p, active)
        labor = labor_force(state, theta, ep)
        y = output(labor, ep)

        rows.append(TrajectoryRow(
            day=day,
            s_g=state.s_g, s_h=state.s_h,
            a_g=state.a_g, a_h=state.a_h,
            im_g=state.im_g, im_h=state.im_h,
            ic_g=state.ic_g, ic_h=state.ic_h,
            r_g=state.r_g, r_h=state.r_h,
            d=state.d,
            theta=theta, lambda_g=lam_g, lambda_h=lam_h,
            h_g=snap.h_g, h_b=snap.h_b,
            alpha_m=a_m, alpha_c=a_c,
            kappa=snap.kappa, band_stress=snap.band_stress,
            labor=labor, output=y, output_gap=output_gap(y, ep),
            lockdown_active=active,
            ever_asymptomatic=state.ever_asymptomatic,
            ever_mild=state.ever_mild,
            ever_severe=state.ever_severe,
            clinical_recoveries=(state.clinical_recovered_by_day_g[state.day]
                                 + state.clinical_recovered_by_day_h[state.day]),
        ))

        if day < cfg.run_days:
            try:
                state = step_disease(state, p, lam_g, lam_h, lam0, lam1, a_m, a_c)
            except ModelError as exc:
                raise ModelError(f"day {day}: {exc}") from exc

    return Trajectory(rows=rows, n_total=p.n_total, y_bar=ep.y_bar,
                      l_bar=ep.l_bar)


def quarterly_table(traj: Trajectory) -> list[QuarterRow]:
    """Cumulative infection, recovery, and fatality tallies per 90-day
    quarter.

    Case fatality is deaths over resolved observed cases (deaths plus
    recoveries from the mild/severe pools; asymptomatic recoveries are
    never observed). Herd immunity is cumulative asymptomatic entries as a
    share of the starting population. Requires at least 90 simulated days.
    """
    last_day = traj.rows[-1].day
    if last_day < 90:
        raise ValueError(f"trajectory covers only {last_day} days; need >= 90")
    out = []
    for quarter in range(1, last_day // 90 + 1):
        row = traj.rows[quarter * 90]
        resolved = row.d + row.clinical_recoveries
        fatality = 100.0 * row.d / resolved if resolved > 0.0 else 0.0
        out.append(QuarterRow(
            quarter=quarter,
            day=row.day,
            mild_infections=row.ever_mild,
            severe_infections=row.ever_severe,
            recoveries=row.clinical_recoveries,
            deaths=row.d,
            fatality_pct=fatality,
            herd_immunity_pct=100.0 * row.ever_asymptomatic / traj.n_total,
        ))
    return out
