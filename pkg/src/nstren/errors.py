"""Exception types raised by the engine.

Each failure mode of a mathematical contract gets its own class so callers
(and the CLI) can tell a failed identity apart from bad input.
"""


class NSTError(Exception):
    """Base class for all engine errors."""


class ContractFailure(NSTError):
    """A mathematical identity that should hold did not."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotProportional(ContractFailure):
    pass


class IdentityFailed(ContractFailure):
    pass


class SymmetryInconsistent(ContractFailure):
    pass


class CancellationFailed(ContractFailure):
    pass


class MismatchReport(ContractFailure):
    pass


class NotHomogeneous(NSTError, ValueError):
    pass


class MixedKeys(NSTError, ValueError):
    pass


class UnsupportedForm(NSTError, ValueError):
    pass


class DomainError(NSTError, ValueError):
    pass


class SingularityTooStrong(NSTError, ValueError):
    pass


class ToleranceNotMet(NSTError, RuntimeError):
    pass


class InconsistentFamily(NSTError, RuntimeError):
    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = values
