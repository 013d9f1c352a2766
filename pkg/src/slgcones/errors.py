"""Exception types shared across the library."""


class DegenerateFamilyError(ValueError):
    """Cubic roots collide (alpha=1, J=1/(3*sqrt 3), or the k=1 corner alpha=J=0)."""


class QuadratureError(ArithmeticError):
    """Adaptive integration failed to reach the requested tolerance."""


class RootNotFoundError(ValueError):
    """No bracket of the J sweep contained the requested closure ratio."""


class NotDoublyPeriodicError(ValueError):
    """Immersion parameters do not certify a rank-2 period lattice."""


class PointBudgetError(RuntimeError):
    """Lattice enumeration would exceed the configured point budget."""


class IncompleteSpectrumError(ValueError):
    """Spectrum cutoff is too small for the requested index computation."""


class UnstableCountError(RuntimeError):
    """Grid nodal-domain count changed under resolution doubling."""
