"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class PlausibleError(Exception):
    exit_code = 1


class DomainError(PlausibleError, ValueError):
    """An argument lies outside the domain of the operation."""

    exit_code = 3


class CromwellViolation(DomainError):
    """A prior assigns probability 0 or 1 to the boundary hypothesis."""


class ZeroProbabilityCondition(DomainError):
    """Conditioning on an event of probability zero."""


class TotalEvidenceZero(DomainError):
    """The observed evidence is impossible under every hypothesis."""


class IndeterminateProduct(DomainError):
    """0 * inf in extended nonnegative arithmetic."""


class VacuousEvidence(DomainError):
    """Confidence constructions are undefined for zero trials."""


class ConvergenceError(PlausibleError, ArithmeticError):
    """A numerical routine failed to reach its tolerance."""

    exit_code = 4


class InfeasibleConstraint(PlausibleError, ValueError):
    exit_code = 6


class NonConvergence(ConvergenceError):
    """The maximum-entropy solver hit its iteration cap."""

    exit_code = 7

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


class ParseError(PlausibleError, ValueError):
    exit_code = 5
