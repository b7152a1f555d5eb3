"""Exception types raised by the solvers and the statistics pipeline."""


class DomainError(ValueError):
    """Input outside the domain of an operation."""


class IntegrableDegenerate(DomainError):
    """Tunneling amplitude is zero, so the recursion cannot be formed."""


class BreakdownAtTrialEnergy(ArithmeticError):
    """The continued fraction hit an exact zero at the trial energy."""

    def __init__(self, energy, index):
        super().__init__(f"continued fraction breaks down at E={energy!r} (index {index})")
        self.energy = energy
        self.index = index


class BracketingFailure(ArithmeticError):
    """Could not isolate every root of the top recursion coefficient."""

    def __init__(self, message, grid=None, counts=None):
        super().__init__(message)
        self.grid = grid
        self.counts = counts


class NotAnEigenvalue(DomainError):
    """Trial energy is not close to any eigenvalue of the sector."""


class FitFailure(ArithmeticError):
    """Exponential fit did not converge; carries the log-linear estimate."""

    def __init__(self, message, fallback=None):
        super().__init__(message)
        self.fallback = fallback
