"""Exception hierarchy shared by the dqcap modules."""


class DQError(ValueError):
    """Base class for invalid inputs to the DQ calculators."""


class MalformedInputError(DQError):
    pass


class InvalidPowerError(DQError):
    pass


class UnsupportedRegimeError(DQError):
    """Parameters fall outside the regime a rate region is derived for."""


class NoReferenceError(DQError):
    """No known gaussian-model formula exists to compare against."""
