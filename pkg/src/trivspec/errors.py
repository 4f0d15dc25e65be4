"""Typed errors for the toolkit.

Every refutation-style error carries its witness in ``details`` so callers
(and the CLI, which maps errors to exit codes) can report it verbatim.
"""


class ToolkitError(Exception):
    # CLI exit code: 1 = refuted, 2 = unknown/budget, 3 = input, 4 = internal bug
    exit_code = 1

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def payload(self):
        return {"type": type(self).__name__, "message": str(self), "details": self.details}


class InputError(ToolkitError):
    exit_code = 3


class BudgetExceeded(ToolkitError):
    exit_code = 2


class InternalInvariantViolation(ToolkitError):
    """A verified-hypothesis instance contradicted a theorem: an implementation bug."""

    exit_code = 4


# --- algebra_core ---------------------------------------------------------

class DescriptorMismatch(ToolkitError):
    exit_code = 3


class ZeroInverse(ToolkitError):
    pass


class NotInvertible(ToolkitError):
    pass


class NotQuadraticType(ToolkitError):
    pass


class NotQuadratic(ToolkitError):
    exit_code = 3


class NotMultiplicative(ToolkitError):
    pass


class Isotropic(ToolkitError):
    pass


class UnknownNonisotropy(ToolkitError):
    exit_code = 2


class AssociativityViolation(ToolkitError):
    pass


class UnitViolation(ToolkitError):
    pass


class ZeroDivisorFound(ToolkitError):
    pass


# --- operator spaces ------------------------------------------------------

class NotTotallyOrdered(ToolkitError):
    pass


class ZeroVector(ToolkitError):
    exit_code = 3


# --- alternators ----------------------------------------------------------

class SingularDuality(ToolkitError):
    pass


class NotSesquilinear(ToolkitError):
    pass


class AltNotOneDimensional(ToolkitError):
    pass


class NotProportional(ToolkitError):
    pass


# --- generic matrices -----------------------------------------------------

class NotTargetReduced(ToolkitError):
    pass


class HypothesisViolated(ToolkitError):
    pass


class IdentityViolated(ToolkitError):
    pass


class NotCollinear(ToolkitError):
    pass


class SpanningRankTooLow(ToolkitError):
    pass


# --- trivial spectrum / classification -------------------------------------

class HyperplaneContainsUnit(ToolkitError):
    exit_code = 3


class SingularMatrix(ToolkitError):
    exit_code = 3


class NotOptimalDim(ToolkitError):
    exit_code = 3


class SpectrumNotTrivial(ToolkitError):
    pass


class CardinalityHypothesisFails(ToolkitError):
    exit_code = 3


class HypothesisFails(ToolkitError):
    pass


class ExtensionFound(ToolkitError):
    pass


class BoundViolated(InternalInvariantViolation):
    pass


class CounterexampleFound(InternalInvariantViolation):
    pass


# --- applications ----------------------------------------------------------

class CharTwo(ToolkitError):
    exit_code = 3


class NotSeparableType(ToolkitError):
    exit_code = 3


class DegenerateTrace(ToolkitError):
    exit_code = 3


class WrongProfile(ToolkitError):
    exit_code = 3


class NotNonisotropic(ToolkitError):
    pass
