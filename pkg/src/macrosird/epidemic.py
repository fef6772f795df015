"""Compartment state and the one-day disease transition.

The population is split into a general pool and a health-worker pool; both
run through identical infection stages (susceptible, asymptomatic, mild,
severe) with shared transition coefficients, so every compartment carries a
``_g`` / ``_h`` tag marking the population of origin. Deaths are pooled.

All stocks are continuous-valued person counts; the dynamics are fully
deterministic difference equations advanced one day at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ModelError, StepSizeViolation

TAG_GENERAL = "g"
TAG_HEALTH = "h"


@dataclass
class DiseaseParams:
    """Transition rates, branch probabilities, and transmission inputs.

    ``beta0``, ``beta1`` and ``gamma1`` are the per-day depletion rates of
    the asymptomatic, mild, and severe pools. The ``alpha`` probabilities
    steer each pool's outflow split; see :func:`mild_branch_coefficients`
    and :func:`severe_branch_coefficients`.

    Transmission for the general pool is the product ``c_m * c_i`` (mixing
    rate times infectiousness) before the variant emerges; the health-worker
    pool uses ``lambda_h_base`` directly since only the product is
    calibrated. After ``mutation_day`` both bases switch to their ``_post``
    values.

    ``delta_a``, ``delta_m`` and ``delta_i`` (stage durations in days) are
    accepted for completeness but unused: the stage depletion rates above
    are specified directly and take precedence.

    Note on ``beta0``: the conventional parameter-table value 0.01 implies a
    ~100-day infectious residence and an uncontrolled reproduction number
    near 12, which contradicts every benchmark trajectory this model family
    targets (epidemic peaking around day 500, bed demand crossing capacity
    near day 326 under a half-workforce lockdown). The shipped default
    0.0915 reproduces those benchmarks; see README for the calibration
    notes.
    """

    beta0: float = 0.0915
    beta1: float = 0.13
    gamma1: float = 0.06
    alpha0: float = 0.4
    alpha1: float = 0.1
    alpha22: float = 0.3
    alpha3: float = 0.01
    alpha42: float = 0.1
    c_m: float = 0.02
    c_i: float = 6.0
    lambda_h_base: float = 0.08
    nu: float = 0.2
    lambda0_pair: tuple[float, float] = (0.7, 0.2)  # (open, lockdown)
    lambda1_pair: tuple[float, float] = (0.6, 0.5)
    delta_g: int = 14
    delta_h: int = 14
    mutation_day: int = 450
    lambda_g_post: float = 0.168
    lambda_h_post: float = 0.1
    delta_a: int = 3  # accepted but unused, see class docstring
    delta_m: int = 5
    delta_i: int = 14
    n_total: float = 884_761_000.0

    @property
    def lambda_g_base(self) -> float:
        return self.c_m * self.c_i


@dataclass
class CompartmentState:
    """Every epidemic stock on one day, plus the bookkeeping ledgers.

    The ``recovered_by_day_*`` tuples hold the cumulative recovered stock of
    each tag through every past day (index = day), so lagged lookups are
    O(1). ``clinical_recovered_by_day_*`` track only recoveries out of the
    mild/severe pools; the difference is people who recovered straight from
    the asymptomatic stage and never left the workforce.

    ``ever_*`` counters accumulate entries into each stage (the asymptomatic
    counter includes the initial seed) and feed the summary tables.
    """

    s_g: float
    s_h: float
    a_g: float
    a_h: float = 0.0
    im_g: float = 0.0
    im_h: float = 0.0
    ic_g: float = 0.0
    ic_h: float = 0.0
    r_g: float = 0.0
    r_h: float = 0.0
    d: float = 0.0
    day: int = 0
    recovered_by_day_g: tuple[float, ...] = (0.0,)
    recovered_by_day_h: tuple[float, ...] = (0.0,)
    clinical_recovered_by_day_g: tuple[float, ...] = (0.0,)
    clinical_recovered_by_day_h: tuple[float, ...] = (0.0,)
    ever_asymptomatic: float = 0.0
    ever_mild: float = 0.0
    ever_severe: float = 0.0

    @property
    def asymptomatic(self) -> float:
        return self.a_g + self.a_h

    @property
    def mild(self) -> float:
        return self.im_g + self.im_h

    @property
    def severe(self) -> float:
        return self.ic_g + self.ic_h

    @property
    def recovered(self) -> float:
        return self.r_g + self.r_h

    def stock_sum(self) -> float:
        return (self.s_g + self.s_h + self.a_g + self.a_h
                + self.im_g + self.im_h + self.ic_g + self.ic_h
                + self.r_g + self.r_h + self.d)


def initial_state(s_g: float, s_h: float, a_g: float) -> CompartmentState:
    """Day-zero state: susceptibles plus an asymptomatic seed."""
    return CompartmentState(s_g=s_g, s_h=s_h, a_g=a_g, ever_asymptomatic=a_g)


def mild_branch_coefficients(alpha_m_t: float, p: DiseaseParams) -> tuple[float, float]:
    """Split of the mild pool's outflow into (recovery, progression).

    Treated patients (probability ``1 - alpha_m_t``) progress to severe
    with probability ``alpha1``, untreated ones with ``alpha22``. The two
    coefficients sum to one exactly by construction.
    """
    recover = alpha_m_t * (1.0 - p.alpha22) + (1.0 - alpha_m_t) * (1.0 - p.alpha1)
    return recover, 1.0 - recover


def severe_branch_coefficients(alpha_c_t: float, p: DiseaseParams) -> tuple[float, float]:
    """Split of the severe pool's outflow into (recovery, death)."""
    recover = alpha_c_t * (1.0 - p.alpha42) + (1.0 - alpha_c_t) * (1.0 - p.alpha3)
    return recover, 1.0 - recover


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ModelError(f"{name}={value!r} outside [0, 1]")


def step_disease(state: CompartmentState, p: DiseaseParams,
                 lambda_g: float, lambda_h: float,
                 lambda0: float, lambda1: float,
                 alpha_m_t: float, alpha_c_t: float) -> CompartmentState:
    """Advance the state one day.

    New general infections are seeded by contact with the asymptomatic pool
    only; health workers are additionally exposed to the patients they
    treat (all severe, a ``lambda1`` share of mild, a ``lambda0`` share of
    asymptomatic contacts). Each stage's outflow is a fixed fraction of its
    stock, split by the branch coefficients; every outflow is credited to
    exactly one destination, so the population total is conserved to
    floating-point accuracy.

    Raises :class:`StepSizeViolation` if any stock would go negative, which
    only happens when a per-day outflow fraction exceeds one.
    """
    for name, value in (("lambda0", lambda0), ("lambda1", lambda1),
                        ("alpha_m_t", alpha_m_t), ("alpha_c_t", alpha_c_t)):
        _check_probability(name, value)
    if lambda_g < 0.0 or lambda_h < 0.0:
        raise ModelError("transmission rates must be non-negative")

    a_total = state.a_g + state.a_h
    new_g = lambda_g * state.s_g * a_total / p.n_total
    new_h = (lambda_h * state.s_h
             * (lambda0 * a_total + state.severe + lambda1 * state.mild)
             / p.n_total)

    recover_m, progress_m = mild_branch_coefficients(alpha_m_t, p)
    recover_c, die_c = severe_branch_coefficients(alpha_c_t, p)

    out_a_g = p.beta0 * state.a_g
    out_a_h = p.beta0 * state.a_h
    out_im_g = p.beta1 * state.im_g
    out_im_h = p.beta1 * state.im_h
    out_ic_g = p.gamma1 * state.ic_g
    out_ic_h = p.gamma1 * state.ic_h

    clinical_g = recover_m * out_im_g + recover_c * out_ic_g
    clinical_h = recover_m * out_im_h + recover_c * out_ic_h
    recovered_g = (1.0 - p.alpha0) * out_a_g + clinical_g
    recovered_h = (1.0 - p.alpha0) * out_a_h + clinical_h

    nxt = CompartmentState(
        s_g=state.s_g - new_g,
        s_h=state.s_h - new_h,
        a_g=state.a_g + new_g - out_a_g,
        a_h=state.a_h + new_h - out_a_h,
        im_g=state.im_g + p.alpha0 * out_a_g - out_im_g,
        im_h=state.im_h + p.alpha0 * out_a_h - out_im_h,
        ic_g=state.ic_g + progress_m * out_im_g - out_ic_g,
        ic_h=state.ic_h + progress_m * out_im_h - out_ic_h,
        r_g=state.r_g + recovered_g,
        r_h=state.r_h + recovered_h,
        d=state.d + die_c * (out_ic_g + out_ic_h),
        day=state.day + 1,
        recovered_by_day_g=state.recovered_by_day_g
        + (state.recovered_by_day_g[-1] + recovered_g,),
        recovered_by_day_h=state.recovered_by_day_h
        + (state.recovered_by_day_h[-1] + recovered_h,),
        clinical_recovered_by_day_g=state.clinical_recovered_by_day_g
        + (state.clinical_recovered_by_day_g[-1] + clinical_g,),
        clinical_recovered_by_day_h=state.clinical_recovered_by_day_h
        + (state.clinical_recovered_by_day_h[-1] + clinical_h,),
        ever_asymptomatic=state.ever_asymptomatic + new_g + new_h,
        ever_mild=state.ever_mild + p.alpha0 * (out_a_g + out_a_h),
        ever_severe=state.ever_severe + progress_m * (out_im_g + out_im_h),
    )

    for name in ("s_g", "s_h", "a_g", "a_h", "im_g", "im_h",
                 "ic_g", "ic_h", "r_g", "r_h", "d"):
        if getattr(nxt, name) < 0.0:
            raise StepSizeViolation(
                f"stock {name} would go negative on day {nxt.day}; "
                "a per-day outflow fraction exceeds 1")
    return nxt


def conservation_check(state: CompartmentState, n_total: float) -> float:
    """Signed residual of the population identity (stock sum minus total)."""
    return state.stock_sum() - n_total


def _ledger(state: CompartmentState, tag: str, clinical: bool) -> tuple[float, ...]:
    if tag == TAG_GENERAL:
        return (state.clinical_recovered_by_day_g if clinical
                else state.recovered_by_day_g)
    if tag == TAG_HEALTH:
        return (state.clinical_recovered_by_day_h if clinical
                else state.recovered_by_day_h)
    raise ValueError(f"unknown population tag {tag!r}")


def delayed_recovered(state: CompartmentState, tag: str, delta: int) -> float:
    """Cumulative recoveries of one tag as of ``delta`` days ago.

    Returns 0 when the run is younger than the delay; with ``delta=0`` this
    is the current recovered stock of the tag.
    """
    if delta < 0:
        raise ValueError("delta must be >= 0")
    lagged_day = state.day - delta
    if lagged_day < 0:
        return 0.0
    return _ledger(state, tag, clinical=False)[lagged_day]


def work_returned(state: CompartmentState, tag: str, delta: int) -> float:
    """Recovered members of one tag who are back at work.

    Recoveries out of the mild/severe pools return only after ``delta``
    days of convalescence; asymptomatic recoveries never left work and
    count immediately.
    """
    if delta < 0:
        raise ValueError("delta must be >= 0")
    clinical = _ledger(state, tag, clinical=True)
    total_now = _ledger(state, tag, clinical=False)[state.day]
    asymptomatic_now = total_now - clinical[state.day]
    lagged_day = state.day - delta
    clinical_back = clinical[lagged_day] if lagged_day >= 0 else 0.0
    return asymptomatic_now + clinical_back
