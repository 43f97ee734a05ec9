"""Exception hierarchy shared by every tracker module."""


class TrackingError(Exception):
    """Base class for all errors raised by this package."""


class EmptyWindow(TrackingError):
    pass


class DegenerateKernel(TrackingError):
    pass


class DimensionMismatch(TrackingError):
    pass


class ZeroMass(TrackingError):
    pass


class ZeroWeight(TrackingError):
    pass


class TargetLost(TrackingError):
    pass


class EmptyStore(TrackingError):
    pass


class EmptySequence(TrackingError):
    pass


class DecodeError(TrackingError):
    pass


class ResolutionMismatch(TrackingError):
    pass


class SpecError(TrackingError):
    pass


class ConfigError(TrackingError):
    pass


class WriteError(TrackingError):
    pass
