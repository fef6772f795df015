"""Health-system stress and the no-treatment probabilities.

Two resources constrain treatment: hospital beds (stock ``B``, demanded by
severe patients one-to-one) and doctors (demanded per patient at the
``phi`` ratios, which shift when a lockdown is in force). Stress ratios
feed the exponential no-treatment probabilities; the same demands measured
against each resource's *normal* and *maximum* levels give the controller
its hysteresis band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .epidemic import CompartmentState, work_returned

# Normal operating level of a resource as a fraction of its maximum: beds
# use the literal 2/3; the doctor pool is deflated by sqrt(26*10 / (7*15)),
# the geometric mean of the lockdown shift in the two phi ratios.
NORMAL_LEVEL_DIVISOR = math.sqrt((26.0 * 10.0) / (7.0 * 15.0))
BEDS_NORMAL_FRACTION = 2.0 / 3.0


@dataclass
class CapacityParams:
    """Bed stock, doctor-per-patient ratios, and saturation shapes.

    The ``phi`` pairs are (no-lockdown, lockdown) doctors-per-patient
    requirements; under lockdown each doctor covers more patients. The
    ``lambda_*`` shapes steer how fast the no-treatment probabilities rise
    with stress, and ``epsilon_sat`` keeps the stress transform finite as a
    ratio approaches one.
    """

    beds: float = 0.49e6
    phi_m_pair: tuple[float, float] = (1.0 / 15.0, 1.0 / 26.0)
    phi_c_pair: tuple[float, float] = (1.0 / 7.0, 1.0 / 10.0)
    lambda_m: float = 2.0
    lambda_c: float = 2.0
    lambda_b: float = 2.0
    epsilon_sat: float = 1e-9


@dataclass
class StressSnapshot:
    """Demand-side view of the health system on one day.

    ``h_g`` and ``h_b`` are the doctor and bed stress ratios driving the
    treatment probabilities. ``kappa`` is the scalar doctor-demand proxy
    ``min(Ic/7 + Im/15, 1.5*Ic)`` kept for reporting; ``h_max`` and
    ``l_norm`` are the classical maximum/normal capacity levels.

    ``band_stress`` locates the binding resource demand inside its
    normal-to-maximum band: 0 at the normal level, 1 at the maximum,
    negative below normal. It is left unclamped so threshold controllers
    can distinguish "below normal" from "at normal".
    """

    h_g: float
    h_b: float
    doctors_available: float
    kappa: float
    h_max: float
    l_norm: float
    band_stress: float


def doctors_available(state: CompartmentState, delta_h: int) -> float:
    """Working doctors: the uninfected, the asymptomatic, and recovered
    returnees (clinical recoveries rejoin after ``delta_h`` days)."""
    return state.s_h + state.a_h + work_returned(state, "h", delta_h)


def stress(state: CompartmentState, cp: CapacityParams,
           lockdown_active: bool, delta_h: int) -> StressSnapshot:
    """Compute the day's stress snapshot.

    ``lockdown_active`` selects which member of each ``phi`` pair measures
    doctor demand. With no doctors left but patients present, the doctor
    stress saturates at 1 (the treatment probabilities cap there anyway).
    """
    mild = state.mild
    severe = state.severe
    doctors = doctors_available(state, delta_h)
    idx = 1 if lockdown_active else 0
    phi_m = cp.phi_m_pair[idx]
    phi_c = cp.phi_c_pair[idx]

    doctor_demand = mild * phi_m + severe * phi_c
    h_b = severe / cp.beds
    if mild == 0.0 and severe == 0.0:
        h_g = 0.0
    elif doctors <= 0.0:
        h_g = 1.0
    else:
        h_g = doctor_demand / doctors

    kappa = min(severe / 7.0 + mild / 15.0, 1.5 * severe)
    h_max = min(doctors, cp.beds)
    l_norm = min(BEDS_NORMAL_FRACTION * cp.beds, doctors / NORMAL_LEVEL_DIVISOR)

    beds_normal = BEDS_NORMAL_FRACTION * cp.beds
    z_beds = (severe - beds_normal) / (cp.beds - beds_normal)
    if doctors <= 0.0:
        z_docs = 1.0 if doctor_demand > 0.0 else 0.0
    else:
        docs_normal = doctors / NORMAL_LEVEL_DIVISOR
        z_docs = (doctor_demand - docs_normal) / (doctors - docs_normal)
    band_stress = max(z_beds, z_docs)

    return StressSnapshot(h_g=h_g, h_b=h_b, doctors_available=doctors,
                          kappa=kappa, h_max=h_max, l_norm=l_norm,
                          band_stress=band_stress)


def alpha_m(h_g: float, lambda_m: float, epsilon_sat: float = 1e-9) -> float:
    """Probability that a mild patient goes untreated at doctor stress ``h_g``.

    Zero at zero stress, exactly one at saturation, strictly increasing in
    between: ``1 - exp(-lambda_m / (1 - g)) / exp(-lambda_m)`` with the
    effective stress ``g`` clamped to ``1 - epsilon_sat``.
    """
    if h_g < 0.0:
        raise ValueError("stress ratio must be >= 0")
    if h_g >= 1.0:
        return 1.0
    g = min(h_g, 1.0 - epsilon_sat)
    return 1.0 - math.exp(-lambda_m / (1.0 - g)) / math.exp(-lambda_m)


def alpha_c(h_g: float, h_b: float, lambda_c: float, lambda_b: float,
            epsilon_sat: float = 1e-9) -> float:
    """Probability that a severe patient goes untreated.

    Driven by whichever of the doctor or bed constraints is more binding;
    saturates to exactly one as soon as either stress ratio reaches one.
    """
    if h_g < 0.0 or h_b < 0.0:
        raise ValueError("stress ratios must be >= 0")
    if h_g >= 1.0 or h_b >= 1.0:
        return 1.0
    g = min(h_g, 1.0 - epsilon_sat)
    b = min(h_b, 1.0 - epsilon_sat)
    inner = max(lambda_c / (1.0 - g), lambda_b / (1.0 - b))
    return 1.0 - math.exp(-inner) / math.exp(-max(lambda_c, lambda_b))
