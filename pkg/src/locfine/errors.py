"""Exception types shared across the package."""


class LocfineError(Exception):
    """Base class for all package errors."""


class CarrierMismatchError(LocfineError):
    """An element or cover does not belong to the carrier it is used with."""


class InvalidTopologyError(LocfineError):
    """A set of opens is not closed under union/intersection or misses a bound."""


class LimitExceededError(LocfineError):
    """An exhaustive scan would exceed the configured size guard."""


class NoStrategyError(LocfineError):
    """Strategy extraction was requested for a game lost by Player I."""
