"""Exception types raised by the response pipeline."""


class ResponseError(ValueError):
    """Base class for numerical failures of the linear-response model."""


class PoleProximityError(ResponseError):
    """A closed-form denominator vanished (or nearly so) at the requested point."""


class SingularResponseError(ResponseError):
    """The resolvent ``-i w I - chi_0`` is numerically singular."""


class InstabilityError(ResponseError):
    """The requested operating point lies outside the stable region."""


class ConfigError(ValueError):
    """Malformed or inconsistent configuration input."""
