"""Exception types shared across the planning modules."""


class MetroAccessError(Exception):
    """Base class for all errors raised by this package."""


class NotReachable(MetroAccessError):
    """Split losses exhaust the optical budget of a technology."""


class ResolutionMismatch(MetroAccessError):
    """An encoding's resolution does not match the scenario's video class."""


class MissingParams(MetroAccessError):
    """A power parameter required by the differential power model is absent."""


class BelowBaseline(MetroAccessError):
    """A practice consumes less than the normalized best practice (E_A < 1)."""


class Unsupported(MetroAccessError):
    """The requested policy exists as a name only and has no model."""


class ConfigError(MetroAccessError):
    """A configuration file failed to parse or validate."""


class UnknownIdentifier(MetroAccessError):
    """A technology, scenario or codec label does not resolve."""
