"""Deterministic macro-SIRD epidemic simulator with capacity-constrained
treatment, lockdown policy rules, an aggregate-output channel, and a
loss-based policy search."""

from .capacity import (CapacityParams, StressSnapshot, alpha_c, alpha_m,
                       doctors_available, stress)
from .economy import EconomyParams, labor_force, output, output_gap
from .epidemic import (CompartmentState, DiseaseParams, conservation_check,
                       delayed_recovered, initial_state,
                       mild_branch_coefficients, severe_branch_coefficients,
                       step_disease, work_returned)
from .errors import ConfigError, ModelError, StepSizeViolation
from .evaluation import CellResult, LossParams, LossReport, loss_psi, policy_sweep
from .policy import (ControllerState, PolicyRegime, contact_mix,
                     effective_lambdas, step_policy, theta_hard, theta_soft)
from .scenario import (InitialSeeds, LossSettings, QuarterRow, ScenarioConfig,
                       Trajectory, TrajectoryRow, default_scenario,
                       dump_scenario, load_scenario, quarterly_table,
                       run_scenario)

__version__ = "0.1.0"

__all__ = [
    "CapacityParams", "StressSnapshot", "alpha_c", "alpha_m",
    "doctors_available", "stress",
    "EconomyParams", "labor_force", "output", "output_gap",
    "CompartmentState", "DiseaseParams", "conservation_check",
    "delayed_recovered", "initial_state", "mild_branch_coefficients",
    "severe_branch_coefficients", "step_disease", "work_returned",
    "ConfigError", "ModelError", "StepSizeViolation",
    "CellResult", "LossParams", "LossReport", "loss_psi", "policy_sweep",
    "ControllerState", "PolicyRegime", "contact_mix", "effective_lambdas",
    "step_policy", "theta_hard", "theta_soft",
    "InitialSeeds", "LossSettings", "QuarterRow", "ScenarioConfig",
    "Trajectory", "TrajectoryRow", "default_scenario", "dump_scenario",
    "load_scenario", "quarterly_table", "run_scenario",
    "__version__",
]
