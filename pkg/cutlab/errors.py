"""Exception types raised by cutlab.

LP statuses (infeasible, unbounded) are reported through ``LpOutcome.status``
and never raised; everything here signals either bad input or a numerical
failure.
"""


class CutLabError(Exception):
    """Base class for all cutlab errors."""


class DimensionError(CutLabError, ValueError):
    """Vector or matrix dimensions do not agree."""


class InstanceFormatError(CutLabError, ValueError):
    """An instance file could not be parsed or is inconsistent."""


class RegionEmptyError(CutLabError):
    """The (relaxed) barrier region has no interior point."""


class NoConvergenceError(CutLabError):
    """Newton's method did not reach the requested decrement."""

    def __init__(self, message: str, iterations: int = 0, residual: float = float("nan")):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class DegenerateDirectionError(CutLabError):
    """Reference point and direction target coincide."""


class ParallelDirectionError(CutLabError):
    """The search direction is parallel to the cut hyperplane."""


class CacheInvalid(CutLabError):
    """The cached analytic center is no longer LP-feasible.

    Raised as a signal: the separation loop catches it, recomputes the center
    and refreshes the cache.
    """


class MissingContextError(CutLabError, ValueError):
    """A scoring context lacks the component a measure needs."""


class LpInfeasibleError(CutLabError):
    """An LP that must be feasible is not."""


class CutMadeInfeasibleError(LpInfeasibleError):
    """The LP became infeasible after adding cuts, so some cut is invalid."""


class EnumerationBudgetError(CutLabError):
    """The brute-force oracle refuses an instance that is too large."""


class SingularSystemError(CutLabError):
    """The kernel system cannot be solved."""


class SolverError(CutLabError):
    """Simplex iteration limit or basis factorisation failure."""


class NotBasicError(CutLabError, ValueError):
    """A tableau row was requested for a nonbasic variable."""
