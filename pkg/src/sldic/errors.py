"""Exception hierarchy shared by all sldic modules."""


class SldicError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(SldicError, ValueError):
    pass


class InvalidShiftError(SldicError, ValueError):
    pass


class ParameterError(SldicError, ValueError):
    pass


class RegimeError(SldicError, ValueError):
    """A builder was called with parameters outside its regime."""


class UnsupportedCaseError(SldicError):
    """No construction is available for these parameters.

    ``regime`` carries the regime tag so callers (the CLI in particular) can
    report which deferred case was hit.
    """

    def __init__(self, regime, message: str):
        super().__init__(message)
        self.regime = regime


class MalformedSchemeError(SldicError, ValueError):
    pass


class CapacityExceededError(SldicError):
    """Exhaustive enumeration would exceed the configured state bound."""


class ConsistencyError(SldicError, AssertionError):
    """Two independent verification routes disagreed (implementation bug)."""
