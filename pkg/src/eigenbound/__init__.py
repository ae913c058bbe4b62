"""Numerical verification of variance-refined lower bounds for the first Dirichlet eigenvalue."""

from __future__ import annotations

from .bounds import BoundReport, GeometryInput, bound_report, implicit, ling, refined, reilly
from .comparison import xi, xi_array
from .constants import variance_constant, zeta3
from .errors import (
    BracketError,
    DivergenceError,
    DomainError,
    EigenboundError,
    OscillationError,
    QuadratureError,
    SolverError,
)
from .oracle import CapProblem, ShootingResult, cap_eigenvalue, sharpness_sweep
from .quadrature import QuadratureConfig, integrate, richardson_limit
from .records import CheckRecord
from .verify import run_checks

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BracketError",
    "CapProblem",
    "CheckRecord",
    "DivergenceError",
    "DomainError",
    "EigenboundError",
    "GeometryInput",
    "OscillationError",
    "QuadratureConfig",
    "QuadratureError",
    "ShootingResult",
    "SolverError",
    "bound_report",
    "cap_eigenvalue",
    "implicit",
    "integrate",
    "ling",
    "refined",
    "reilly",
    "richardson_limit",
    "run_checks",
    "sharpness_sweep",
    "variance_constant",
    "xi",
    "xi_array",
    "zeta3",
    "__version__",
]
