class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class TruncationCapError(DomainError):
    """The certified truncation index would exceed the hard cap."""

    def __init__(self, method, s, tol, K, cap):
        self.method, self.s, self.tol, self.K, self.cap = method, s, tol, K, cap
        super().__init__(
            f"{method} series at s={s!r}, tol={tol!r} needs K={K} terms (cap {cap})"
        )


class FitConvergenceError(RuntimeError):
    """Least-squares refit did not converge; ``best`` holds the best parameters seen."""

    def __init__(self, message, best, objective):
        super().__init__(message)
        self.best = best
        self.objective = objective
