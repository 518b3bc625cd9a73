"""Exception types shared across the package."""


class GeodiscoverError(Exception):
    """Base class for all package-specific errors."""


class UnknownReferenceError(GeodiscoverError):
    """A step or statement refers to a point/circle that does not exist."""


class DegenerateStepError(GeodiscoverError):
    """A construction step cannot be evaluated at the declared coordinates."""


class DegenerateInstanceError(GeodiscoverError):
    """A re-instantiation of the free points has no real, finite solution."""


class ResampleExhaustedError(GeodiscoverError):
    """Too many degenerate draws while resampling a construction."""


class NonFiniteError(GeodiscoverError):
    """A numeric predicate received NaN or infinite coordinates."""


class UnsupportedStepError(GeodiscoverError):
    """The algebraizer does not know a polynomial form for this step."""


class UnsupportedStatementError(GeodiscoverError):
    """The algebraizer does not know a polynomial form for this statement."""


class InconsistentRegistryError(GeodiscoverError):
    """A direction would become both parallel and perpendicular to itself."""


class CollinearSubsetError(GeodiscoverError):
    """A concyclicity registration contained three collinear points."""


class WallTimeExceededError(GeodiscoverError):
    """A discovery job ran past its total wall-time cap."""


class DiscoveryCancelledError(GeodiscoverError):
    """A discovery job was cancelled from outside."""


class DslError(GeodiscoverError):
    """Parse error carrying a 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class DslSyntaxError(DslError):
    pass


class UnknownIdentifierError(DslError):
    pass


class ArityError(DslError):
    pass
