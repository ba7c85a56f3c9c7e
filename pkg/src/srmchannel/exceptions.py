"""Exception hierarchy shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside its mathematical domain."""


class DegenerateInputError(DomainError):
    """An input at a degenerate endpoint makes the requested quantity singular."""


class ResonanceError(DomainError):
    """Zero detuning: the dispersive (off-resonant) evolution is undefined."""


class StructureError(ValueError):
    """A codebook lacks the algebraic structure a fast path requires."""


class ConsistencyError(ArithmeticError):
    """An internal cross-check between two computation routes failed."""


class ResourceError(RuntimeError):
    """The requested problem size exceeds a configured limit."""


class SearchFailureError(RuntimeError):
    """A parameter search terminated without reaching its target.

    The best candidate found is attached as ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
