"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A scenario configuration value is missing, unknown, or out of range.

    The message always starts with the offending key path (e.g.
    ``policy.theta0``) so callers can surface it directly.
    """


class ModelError(RuntimeError):
    """The model hit a state that violates a runtime precondition."""


class StepSizeViolation(ModelError):
    """A daily outflow exceeded the stock it drains.

    Raised instead of silently clamping: with the shipped default rates all
    per-day outflow fractions stay below one, so a negative stock always
    indicates inconsistent user parameters rather than an engine bug.
    """
