"""Exception types raised across the package."""


class HBlochError(Exception):
    """Base class for all package errors."""


class ParameterDomain(HBlochError, ValueError):
    """A parameter lies outside the domain of its family or operation."""


class OutsideDisk(ParameterDomain):
    """A point was expected in the open unit disk but is not."""


class SelfMapViolation(HBlochError):
    """A candidate symbol does not map the disk into itself.

    ``witness`` is the sample point where ``|phi(z)| >= 1`` was observed and
    ``modulus`` the offending modulus.
    """

    def __init__(self, msg, witness=None, modulus=None):
        super().__init__(msg)
        self.witness = witness
        self.modulus = modulus


class NearBoundarySymbol(HBlochError):
    """``1 - |phi(z)|^2`` underflowed; the ratio cannot be evaluated at ``witness``."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class ResourceLimit(HBlochError):
    """A sampling request would exceed the configured point cap."""


class ConfigParse(HBlochError, ValueError):
    """An experiment config or spec string could not be parsed."""
