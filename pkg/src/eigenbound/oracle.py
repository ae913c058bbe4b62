"""
First Dirichlet eigenvalue of a geodesic cap in the round sphere.

For a cap of radius R in the n-sphere of curvature K the ground state is
radial, u(r), and solves

    u'' + (n-1) sqrt(K) cot(sqrt(K) r) u' + lam u = 0,   u'(0) = 0, u(R) = 0.

``cap_eigenvalue`` shoots from the regular singular point r = 0 and adjusts
lam until u(R) = 0. ``fd_cap_eigenvalue`` is an independent second-order
finite-volume discretization used only for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import solveh_banded
from scipy.optimize import brentq

from .bounds import GeometryInput, bound_report
from .errors import BracketError, DomainError, EigenboundError, OscillationError, SolverError
from .records import CheckRecord

__all__ = [
    "CapProblem",
    "ShootingResult",
    "SweepRow",
    "cap_eigenvalue",
    "series_start",
    "shoot",
    "fd_cap_eigenvalue",
    "scaling_check",
    "sharpness_sweep",
    "sweep_row",
]

_RTOL = 1e-12
_ATOL = 1e-14
_LAMBDA_FLOOR = 1e-6
_MAX_EXPANSIONS = 8


@dataclass(frozen=True)
class CapProblem:
    """Geodesic cap of radius R; R <= pi/(2 sqrt K) keeps the boundary mean-convex."""

    n: int
    K: float
    R: float

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n >= 2 required; got n = {self.n!r}")
        if not (math.isfinite(self.K) and self.K > 0.0):
            raise DomainError(f"K > 0 required; got K = {self.K!r}")
        limit = self.max_radius
        if not (math.isfinite(self.R) and 0.0 < self.R <= limit * (1.0 + 1e-12)):
            raise DomainError(
                f"cap radius must satisfy 0 < R <= pi/(2 sqrt K) = {limit!r} "
                f"(nonnegative boundary mean curvature); got R = {self.R!r}"
            )

    @property
    def max_radius(self) -> float:
        return math.pi / (2.0 * math.sqrt(self.K))

    @property
    def d_tilde(self) -> float:
        return 2.0 * self.R

    def geometry(self) -> GeometryInput:
        return GeometryInput(int(self.n), self.K, self.d_tilde)


@dataclass(frozen=True)
class ShootingResult:
    lam: float
    residual: float
    bisection_iterations: int
    ode_steps: int

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "residual": self.residual,
            "bisection_iterations": self.bisection_iterations,
            "ode_steps": self.ode_steps,
        }


def _start_radius(p: CapProblem) -> float:
    return min(1e-6 * max(1.0, p.R), 1e-4 * p.R)


def series_start(p: CapProblem, lam: float, r0: float) -> tuple[float, float]:
    """(u(r0), u'(r0)) from u = 1 + c2 r^2 + c4 r^4 + O(r^6).

    Matching powers of r with sqrt(K) cot(sqrt(K) r) = 1/r - K r/3 + O(r^3):
    c2 = -lam/(2n), c4 = c2 (2(n-1)K/3 - lam) / (4(n+2)).
    """
    if not 0.0 < r0 <= 1e-4 * p.R:
        raise DomainError(f"need 0 < r0 <= 1e-4 R; got r0 = {r0!r}")
    n, K = p.n, p.K
    c2 = -lam / (2.0 * n)
    c4 = c2 * (2.0 * (n - 1) * K / 3.0 - lam) / (4.0 * (n + 2))
    return 1.0 + c2 * r0**2 + c4 * r0**4, 2.0 * c2 * r0 + 4.0 * c4 * r0**3


@dataclass(frozen=True)
class _Shot:
    u_end: float
    crossings: tuple[float, ...]
    u_max: float
    steps: int


def shoot(p: CapProblem, lam: float) -> _Shot:
    """Integrate the radial equation from r0 to R for a trial ``lam``."""
    sk = math.sqrt(p.K)
    m = p.n - 1

    def rhs(r, y):
        return (y[1], -m * sk / math.tan(sk * r) * y[1] - lam * y[0])

    def hits_zero(r, y):
        return y[0]

    r0 = _start_radius(p)
    sol = solve_ivp(
        rhs,
        (r0, p.R),
        series_start(p, lam, r0),
        method="DOP853",
        rtol=_RTOL,
        atol=_ATOL,
        events=hits_zero,
    )
    if sol.status < 0:
        raise SolverError(f"ODE integration failed at lam = {lam!r}: {sol.message}")
    u = sol.y[0]
    return _Shot(float(u[-1]), tuple(float(r) for r in sol.t_events[0]), float(np.max(np.abs(u))), len(sol.t) - 1)


def _interior_zeros(shot: _Shot, R: float) -> int:
    # a crossing at the very end belongs to the boundary condition
    return sum(1 for r in shot.crossings if r < R * (1.0 - 1e-9))


def cap_eigenvalue(p: CapProblem) -> ShootingResult:
    """Ground-state eigenvalue of the cap by shooting.

    Sturm oscillation: u(.; lam) has no zero in (0, R) for lam < lam1 and
    exactly one for lam1 < lam < lam2. Bisection on the number of interior
    zeros narrows [1e-6, 4 n (pi/R)^2] until the upper end has exactly one
    zero, so u(R) changes sign across the bracket; Brent's method on u(R)
    then resolves lam1 to about 1e-14 relative.
    """
    lo = _LAMBDA_FLOOR
    hi = 4.0 * p.n * (math.pi / p.R) ** 2
    iterations = 0
    shot_lo = shoot(p, lo)
    if _interior_zeros(shot_lo, p.R) > 0 or shot_lo.u_end <= 0.0:
        raise BracketError(f"u(R) is not positive at lam = {lo!r}")
    shot_hi = shoot(p, hi)
    expansions = 0
    while _interior_zeros(shot_hi, p.R) == 0 and shot_hi.u_end > 0.0:
        expansions += 1
        if expansions > _MAX_EXPANSIONS:
            raise BracketError(f"no sign change of u(R) in [{lo!r}, {hi!r}]")
        lo, hi = hi, 2.0 * hi
        shot_hi = shoot(p, hi)
    while not (_interior_zeros(shot_hi, p.R) <= 1 and shot_hi.u_end < 0.0):
        mid = 0.5 * (lo + hi)
        shot_mid = shoot(p, mid)
        iterations += 1
        if _interior_zeros(shot_mid, p.R) == 0 and shot_mid.u_end > 0.0:
            lo = mid
        else:
            hi, shot_hi = mid, shot_mid
        if iterations > 200:
            raise BracketError("could not isolate the first eigenvalue")

    calls = 0

    def u_end(lam: float) -> float:
        nonlocal calls
        calls += 1
        return shoot(p, lam).u_end

    lam = brentq(u_end, lo, hi, xtol=1e-15 * hi, rtol=4.0 * np.finfo(float).eps, maxiter=200)
    final = shoot(p, lam)
    if _interior_zeros(final, p.R) > 0:
        raise OscillationError(f"eigenfunction changes sign inside the cap at lam = {lam!r}")
    residual = abs(final.u_end)
    if residual > 1e-10 * max(1.0, final.u_max):
        raise SolverError(f"shooting residual {residual:.3e} too large at lam = {lam!r}")
    return ShootingResult(lam, residual, iterations + calls, final.steps)


def fd_cap_eigenvalue(p: CapProblem, nodes: int = 10**4, max_iter: int = 200) -> float:
    """Ground state of -(w u')'/w with w = sin^(n-1)(sqrt(K) r), by inverse iteration.

    Cell-centred second-order finite volumes on [0, R]; the flux vanishes at
    r = 0 because w does, and u(R) = 0 enters through a mirrored ghost cell.
    The generalized problem A u = lam W u is symmetrized as W^-1/2 A W^-1/2.
    """
    if nodes < 10:
        raise DomainError("need at least 10 nodes")
    sk = math.sqrt(p.K)
    h = p.R / nodes
    centers = (np.arange(nodes) + 0.5) * h
    faces = np.arange(1, nodes + 1) * h  # right faces; the left face of cell 0 is r = 0
    log_w_center = (p.n - 1) * np.log(np.sin(sk * centers))
    log_w_face = (p.n - 1) * np.log(np.sin(sk * faces))
    shift = log_w_center.max()
    w_c = np.exp(log_w_center - shift)
    w_f = np.exp(log_w_face - shift)

    diag = np.empty(nodes)
    diag[0] = w_f[0]
    diag[1:] = w_f[1:] + w_f[:-1]
    diag[-1] = 2.0 * w_f[-1] + w_f[-2]
    diag /= h * h
    off = -w_f[:-1] / (h * h)
    scale = 1.0 / np.sqrt(w_c)
    diag_s = diag * scale * scale
    off_s = off * scale[:-1] * scale[1:]
    # upper banded storage for solveh_banded
    banded = np.zeros((2, nodes))
    banded[0, 1:] = off_s
    banded[1, :] = diag_s

    def apply(x: np.ndarray) -> np.ndarray:
        y = diag_s * x
        y[:-1] += off_s * x[1:]
        y[1:] += off_s * x[:-1]
        return y

    x = np.sqrt(w_c) * np.cos(0.5 * math.pi * centers / p.R)
    x /= np.linalg.norm(x)
    lam = float(x @ apply(x))
    for _ in range(max_iter):
        y = solveh_banded(banded, x)
        x = y / np.linalg.norm(y)
        new = float(x @ apply(x))
        if abs(new - lam) <= 1e-15 * abs(new):
            return new
        lam = new
    return lam


def scaling_check(p: CapProblem, c: float, tol: float = 1e-8) -> CheckRecord:
    """lam(n, c^2 K, R/c) = c^2 lam(n, K, R), from two independent shooting runs."""
    if not c > 0.0:
        raise DomainError("scale factor must be positive")
    base = cap_eigenvalue(p).lam
    scaled = cap_eigenvalue(CapProblem(p.n, c * c * p.K, p.R / c)).lam
    lhs, rhs = scaled, c * c * base
    rel = abs(lhs - rhs) / abs(rhs)
    return CheckRecord(f"scaling[c={c:g}]", "scaling", lhs, rhs, rel, tol, rel <= tol)


@dataclass(frozen=True)
class SweepRow:
    n: int
    K: float
    R: float
    d_tilde: float
    lambda_true: float | None
    reilly: float | None
    ling: float | None
    refined: float | None
    implicit: float | None
    best: float | None
    gap_best: float | None
    ratio: float | None
    error: str | None = None

    @property
    def sound(self) -> bool:
        """Every bound at most the true eigenvalue, up to 1e-8 relative."""
        if self.error is not None or self.lambda_true is None:
            return False
        slack = 1e-8 * self.lambda_true
        bounds = (self.reilly, self.ling, self.refined, self.implicit)
        return all(b is None or b <= self.lambda_true + slack for b in bounds)


def sweep_row(n: int, K: float, R: float) -> SweepRow:
    try:
        p = CapProblem(n, K, R)
        rep = bound_report(p.geometry())
        lam = cap_eigenvalue(p).lam
    except EigenboundError as exc:
        none = None
        return SweepRow(n, K, R, 2.0 * R, none, none, none, none, none, none, none, none, error=str(exc))
    return SweepRow(
        n=n,
        K=K,
        R=R,
        d_tilde=2.0 * R,
        lambda_true=lam,
        reilly=rep.reilly,
        ling=rep.ling,
        refined=rep.refined,
        implicit=rep.implicit,
        best=rep.best,
        gap_best=lam - rep.best,
        ratio=rep.ratio_refined_over_ling,
    )


def sharpness_sweep(n: int, K: float, R_values: Iterable[float]) -> list[SweepRow]:
    """One row per radius, with d_tilde = 2R; failed rows carry an error message."""
    return [sweep_row(n, K, R) for R in R_values]
