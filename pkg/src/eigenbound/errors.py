"""Exception types raised by eigenbound."""


class EigenboundError(Exception):
    """Base class for all library errors."""


class DomainError(EigenboundError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class QuadratureError(EigenboundError, ArithmeticError):
    """The integrand produced a non-finite value at an interior node."""


class DivergenceError(EigenboundError, ArithmeticError):
    """A sampled sequence does not settle to a limit."""


class SolverError(EigenboundError, RuntimeError):
    """A root finder or eigenvalue solver failed to bracket or converge."""


class BracketError(SolverError):
    """No sign change was found in the initial eigenvalue bracket."""


class OscillationError(SolverError):
    """The computed eigenfunction changes sign, so it is not the ground state."""
