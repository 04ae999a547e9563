"""Exception types shared across the package."""


class KickedRotorError(Exception):
    """Base class for all package-specific errors."""


class DomainError(KickedRotorError, ValueError):
    """An argument is outside the supported domain.

    Carries the offending field name so callers (and the config validator)
    can point at the exact input.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class KickCountError(DomainError):
    """A closed-form energy was requested for an unsupported kick number."""

    def __init__(self, n: int):
        self.n = n
        super().__init__(
            "n", f"closed-form energies cover kicks 1..5 only (got {n}); "
            "use the quantum simulator for longer kick trains"
        )


class TruncationError(KickedRotorError, RuntimeError):
    """The momentum-ladder truncation was too small for the requested evolution.

    ``suggested_n_max`` is a size that should be adequate; rebuild the state
    (or rerun the ensemble) with at least that truncation.
    """

    def __init__(self, n_max: int, boundary_occupancy: float, suggested_n_max: int):
        self.n_max = n_max
        self.boundary_occupancy = boundary_occupancy
        self.suggested_n_max = suggested_n_max
        super().__init__(
            f"boundary occupancy {boundary_occupancy:.3e} exceeds 1e-10 at "
            f"n_max={n_max}; rerun with n_max >= {suggested_n_max}"
        )


class ConfigError(KickedRotorError, ValueError):
    """A sweep configuration failed validation.

    Always names the offending key and the violated constraint.
    """

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"config key '{key}': {message}")
