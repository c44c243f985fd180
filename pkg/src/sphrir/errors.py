"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration (CLI exit code 2)."""


class SimulationError(RuntimeError):
    """Violation of a model precondition or contract (CLI exit code 3)."""
