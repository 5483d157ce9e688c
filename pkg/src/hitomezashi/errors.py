"""Exception hierarchy shared by every module."""


class HitomezashiError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HitomezashiError, ValueError):
    """Input outside the domain of an operation (bad parameters, bad code, ...)."""


class PreconditionError(DomainError):
    """A documented precondition of the call does not hold."""


class IntegrityError(HitomezashiError):
    """A structure that should be well formed is not (e.g. a non-simple loop)."""


class IndeterminateError(HitomezashiError):
    """Not enough data to decide (e.g. a strand too short to classify)."""


class ResourceError(HitomezashiError):
    """A resource guard would be exceeded; pass the override flag to proceed."""


class TheoremViolation(HitomezashiError):
    """A verified claim failed on a concrete instance.

    ``witness`` carries whatever object falsified the claim so callers can
    report it. The CLI maps this exception to exit code 2.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
