"""Exception types shared across the package."""


class PartitionError(ValueError):
    """Invalid partition parameters or out-of-range evaluation."""


class ResolutionError(ValueError):
    """A field is sampled too coarsely for the requested partition."""


class DomainMismatchError(ValueError):
    pass


class StabilityError(ValueError):
    """Courant number outside the stable range 0 < r <= 1."""

    def __init__(self, r, message=None):
        self.r = r
        super().__init__(message or f"unstable time step: r = {r!r} > 1")


class NumericalAbort(RuntimeError):
    """Non-finite values appeared during time stepping."""

    def __init__(self, i, j, message=None):
        self.i = i
        self.j = j
        super().__init__(message or f"non-finite value at node (i={i}, j={j})")


class ConfigError(ValueError):
    pass


class FieldFormatError(ValueError):
    pass
