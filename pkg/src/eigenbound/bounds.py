"""
Lower bounds for the first Dirichlet eigenvalue.

Inputs are the dimension n, the Ricci constant K (Ric >= (n-1)K) and the
in-diameter d (twice the largest distance to the boundary). With
alpha = (n-1)K/2 and D = pi^2/d^2 the bounds are

    reilly    n K
    ling      alpha + D
    refined   ((alpha+D) + sqrt((alpha+D)^2 + V alpha^2)) / 2
    implicit  root of sqrt(lam) d/2 = (pi/2) (1/sqrt(1-delta) + (3/8) V delta^2),
              delta = alpha/lam

All of them scale like 1/length^2.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from numbers import Integral

import numpy as np

from .constants import variance_constant
from .errors import DomainError, EigenboundError, SolverError
from .records import CheckRecord

__all__ = [
    "GeometryInput",
    "DerivedParams",
    "BoundReport",
    "ReportInvariantError",
    "derived",
    "reilly",
    "ling",
    "refined",
    "implicit",
    "implicit_residual",
    "one_root_check",
    "one_root_sides",
    "delta_range",
    "ratio",
    "universal_ratio_cap",
    "quadratic_residual",
    "hemisphere_input",
    "bound_report",
]

HALF_PI = 0.5 * math.pi
_IMPLICIT_RTOL = 1e-12
_FLOOR_MARGIN = 1e-9


class ReportInvariantError(EigenboundError, ArithmeticError):
    """A computed bound report violates its ordering invariants."""


@dataclass(frozen=True)
class GeometryInput:
    n: int
    K: float
    d_tilde: float

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, Integral):
            raise DomainError(f"n must be an integer; got {self.n!r}")
        if self.n < 2:
            raise DomainError(f"n >= 2 required; got n = {self.n}")
        if not (math.isfinite(self.K) and self.K >= 0.0):
            raise DomainError(f"K >= 0 required; got K = {self.K!r}")
        if not (math.isfinite(self.d_tilde) and self.d_tilde > 0.0):
            raise DomainError(f"d_tilde > 0 required; got d_tilde = {self.d_tilde!r}")


@dataclass(frozen=True)
class DerivedParams:
    alpha: float
    D: float
    delta_max: float


def derived(g: GeometryInput) -> DerivedParams:
    return DerivedParams(
        alpha=(g.n - 1) * g.K / 2.0,
        D=math.pi**2 / g.d_tilde**2,
        delta_max=delta_range(g),
    )


def delta_range(g: GeometryInput | int) -> float:
    """Upper bound (n-1)/(2n) for delta = alpha/lambda, using lambda >= nK."""
    n = g.n if isinstance(g, GeometryInput) else int(g)
    if n < 2:
        raise DomainError(f"n >= 2 required; got n = {n}")
    return (n - 1) / (2.0 * n)


def reilly(g: GeometryInput) -> float:
    if g.K <= 0.0:
        raise DomainError("the n K bound needs K > 0")
    return g.n * g.K


def ling(g: GeometryInput) -> float:
    p = derived(g)
    return p.alpha + p.D


def refined(g: GeometryInput) -> float:
    p = derived(g)
    s = p.alpha + p.D
    if p.alpha == 0.0:
        return s
    return 0.5 * (s + math.sqrt(s * s + variance_constant() * p.alpha**2))


def quadratic_residual(g: GeometryInput, lam: float | None = None) -> float:
    """lam^2 - (alpha+D) lam - (V/4) alpha^2, relative to lam^2; zero at lam = refined(g)."""
    p = derived(g)
    lam = refined(g) if lam is None else lam
    return (lam * lam - (p.alpha + p.D) * lam - 0.25 * variance_constant() * p.alpha**2) / (lam * lam)


def implicit_residual(g: GeometryInput, lam: float) -> float:
    """G(lam) = sqrt(lam) d/2 - (pi/2)(1/sqrt(1-delta) + (3/8) V delta^2), delta = alpha/lam."""
    alpha = derived(g).alpha
    delta = alpha / lam
    if not 0.0 <= delta < 1.0:
        raise DomainError(f"need lam > alpha; got lam = {lam!r}, alpha = {alpha!r}")
    v = variance_constant()
    return math.sqrt(lam) * g.d_tilde / 2.0 - HALF_PI * (
        1.0 / math.sqrt(1.0 - delta) + 0.375 * v * delta * delta
    )


def implicit(g: GeometryInput) -> float:
    """Smallest lam > 2 alpha with G(lam) >= 0, by bisection to 1e-12 relative.

    G is strictly increasing on (2 alpha, inf). The lower bracket starts at
    max(2 alpha (1 + 1e-9), ling(g)); G(ling) <= 0 whenever ling > 2 alpha.
    If G is already nonnegative at the floor 2 alpha (1 + 1e-9), the
    requirement delta < 1/2 is the binding one and the floor is returned.
    The returned value is the lower end of the final bracket, so it never
    exceeds the exact root.
    """
    p = derived(g)
    if p.alpha == 0.0:
        return p.D
    floor = 2.0 * p.alpha * (1.0 + _FLOOR_MARGIN)
    lo = max(floor, p.alpha + p.D)
    if implicit_residual(g, lo) >= 0.0:
        return lo
    limit = 2.0**60 * (p.alpha + p.D)
    hi = 2.0 * lo
    while implicit_residual(g, hi) < 0.0:
        lo = hi
        hi *= 2.0
        if hi > limit:
            raise SolverError("no sign change of the implicit equation below 2**60 * ling")
    while hi - lo > _IMPLICIT_RTOL * hi:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if implicit_residual(g, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return lo


def one_root_sides(delta, v: float | None = None):
    """Both sides of 1/sqrt(1-d) + (3/8) V d^2 >= 1/sqrt(1 - d - (V/4) d^2)."""
    v = variance_constant() if v is None else v
    d = np.asarray(delta, dtype=float)
    lhs = 1.0 / np.sqrt(1.0 - d) + 0.375 * v * d * d
    rhs = 1.0 / np.sqrt(1.0 - d - 0.25 * v * d * d)
    return lhs, rhs


def one_root_check(grid_size: int = 10**6, tol: float = 1e-12) -> CheckRecord:
    """One-root inequality on a uniform grid of [0, 1/2], plus the uniform factor bound.

    The slack is the smaller of min(lhs - rhs) and 3 - max((1 - d - (V/4)d^2)^(-3/2));
    ``lhs``/``rhs`` are the two sides at the delta of smallest inequality slack.
    """
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    d = np.linspace(0.0, 0.5, grid_size)
    v = variance_constant()
    lhs, rhs = one_root_sides(d, v)
    gaps = lhs - rhs
    i = int(np.argmin(gaps))
    factor = (1.0 - d - 0.25 * v * d * d) ** -1.5
    slack = min(float(gaps[i]), 3.0 - float(factor.max()))
    return CheckRecord.inequality("one_root", "one-root", float(lhs[i]), float(rhs[i]), slack, tol)


def ratio(g: GeometryInput) -> float:
    """refined/ling = (1 + sqrt(1 + V (alpha/(alpha+D))^2)) / 2."""
    p = derived(g)
    q = p.alpha / (p.alpha + p.D)
    return 0.5 * (1.0 + math.sqrt(1.0 + variance_constant() * q * q))


def universal_ratio_cap() -> float:
    """Supremum of refined/ling, approached as D/alpha -> 0."""
    return 0.5 * (1.0 + math.sqrt(1.0 + variance_constant()))


def hemisphere_input(n: int, K: float) -> GeometryInput:
    """Geodesic hemisphere of the round n-sphere with Ric = (n-1)K: d_tilde = pi/sqrt(K)."""
    if not K > 0.0:
        raise DomainError(f"hemisphere needs K > 0; got K = {K!r}")
    return GeometryInput(n, K, math.pi / math.sqrt(K))


@dataclass(frozen=True)
class BoundReport:
    """All lower bounds for one geometry; ``reilly`` is None when K = 0."""

    n: int
    K: float
    d_tilde: float
    reilly: float | None
    ling: float
    refined: float
    implicit: float
    best: float
    ratio_refined_over_ling: float

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(g: GeometryInput) -> BoundReport:
    r = reilly(g) if g.K > 0.0 else None
    b_ling = ling(g)
    b_ref = refined(g)
    b_imp = implicit(g)
    candidates = [b_ling, b_ref, b_imp] + ([r] if r is not None else [])
    report = BoundReport(
        n=g.n,
        K=g.K,
        d_tilde=g.d_tilde,
        reilly=r,
        ling=b_ling,
        refined=b_ref,
        implicit=b_imp,
        best=max(candidates),
        ratio_refined_over_ling=ratio(g),
    )
    slack = 1e-12 * b_ref
    if b_ref < b_ling - slack or b_imp < b_ref - slack:
        raise ReportInvariantError(
            f"bound ordering violated: ling={b_ling!r}, refined={b_ref!r}, implicit={b_imp!r}"
        )
    return report
