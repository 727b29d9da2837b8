"""Exception hierarchy. Every domain error carries its class name to the CLI."""


class HypermonoError(Exception):
    """Base class for domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class GrammarError(HypermonoError, ValueError):
    pass


# exactpoly
class NotGaloisStable(HypermonoError):
    pass


class NotCyclotomicProduct(HypermonoError):
    pass


# levelt
class NotMonic(HypermonoError):
    pass


class DegreeMismatch(HypermonoError):
    pass


class EqualPolynomials(HypermonoError):
    pass


class SharedEigenvalue(HypermonoError):
    pass


class NotReflection(HypermonoError):
    pass


# classify
class NoInvariantForm(HypermonoError):
    pass


class AmbiguousForm(HypermonoError):
    pass


class ZeroDifference(HypermonoError):
    pass


class InconsistentClassification(HypermonoError):
    """A theorem-level consequence failed; some precondition was missed."""


# odeflow
class ResonanceReductionFailed(HypermonoError):
    pass


class IllConditioned(HypermonoError):
    pass


class ClearanceViolated(HypermonoError):
    pass


class ToleranceUnreachable(HypermonoError):
    pass


class EigenvalueMismatch(HypermonoError):
    pass


class ValidationFailed(HypermonoError):
    def __init__(self, message: str, worst_residual: float = float("nan")):
        super().__init__(message)
        self.worst_residual = worst_residual
