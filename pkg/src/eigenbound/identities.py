"""
Log-cosine integrals and the integration-by-parts reduction of the
second moment of xi.

Notation: a = pi/2, A = pi^2/4, P(t) = t^2 - A, L(t) = log cos t, and for a
truncation 0 < eps < a, u = a - eps. The reduction reads

    int_0^u xi^2 = u - (4/3) u^3 + B(eps)
                   + (2 pi^2/3) int_0^u L - 8 int_0^u t^2 L,

with a boundary term B(eps) that tends to -2 pi/3 as eps -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .comparison import central_difference, xi
from .constants import alternating_zeta3, second_moment_closed_form, zeta3
from .errors import DomainError
from .quadrature import DEFAULT_CONFIG, LimitResult, QuadratureConfig, integrate, integrate_weighted, richardson_limit
from .records import CheckRecord

__all__ = [
    "AppendixQuantities",
    "log_cos",
    "log_cos_closed_forms",
    "log_cos_integrals",
    "fourier_logcos",
    "fourier_moment_coefficients",
    "fourier_coefficient_checks",
    "fourier_logcos_check",
    "boundary_term",
    "boundary_summands",
    "boundary_limit",
    "boundary_limit_check",
    "boundary_route_check",
    "truncated_identity",
    "reduction_final",
    "log2_coefficient",
    "sec4_identity_residual",
    "alternating_zeta_check",
]

_PI = math.pi
HALF_PI = 0.5 * _PI
_A = _PI * _PI / 4.0


@dataclass(frozen=True)
class AppendixQuantities:
    """Truncation data: a = pi/2, A = pi^2/4 and u = a - epsilon."""

    epsilon: float
    a: float = HALF_PI
    A: float = _A

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < self.a:
            raise DomainError(f"epsilon must lie in (0, pi/2); got {self.epsilon!r}")

    @property
    def u(self) -> float:
        return self.a - self.epsilon

    @property
    def P_u(self) -> float:
        # u^2 - A = (u - a)(u + a) = -eps (pi - eps), free of cancellation
        e = self.epsilon
        return -e * (_PI - e)


def log_cos(t: float) -> float:
    return math.log(math.cos(t))


def log_cos_closed_forms() -> tuple[float, float, float]:
    """Closed forms of the integrals of L, t L and t^2 L over [0, pi/2]."""
    z3 = zeta3()
    ln2 = math.log(2.0)
    return (
        -HALF_PI * ln2,
        -_PI**2 / 8.0 * ln2 - 7.0 / 16.0 * z3,
        -_PI**3 / 24.0 * ln2 - _PI / 4.0 * z3,
    )


def log_cos_integrals(tol: float = 1e-9, cfg: QuadratureConfig = DEFAULT_CONFIG) -> list[CheckRecord]:
    records = []
    for power, exact in enumerate(log_cos_closed_forms()):
        name = f"log_cos_integral[t^{power}]"
        res = integrate_weighted(log_cos, power, 0.0, HALF_PI, cfg)
        if not res.converged:
            records.append(CheckRecord.failure(name, "logcos-fourier", tol, "quadrature did not converge"))
            continue
        records.append(CheckRecord.equality(name, "logcos-fourier", res.value, exact, tol))
    return records


def fourier_logcos(t: float, terms: int) -> float:
    """Partial sum of sum_k (-1)^(k+1) cos(2kt)/k, minus log 2: approximates log cos t."""
    if abs(t) >= HALF_PI:
        raise DomainError(f"need |t| < pi/2; got t = {t!r}")
    if terms < 1:
        raise DomainError("terms must be positive")
    k = np.arange(1, terms + 1, dtype=float)
    signs = np.where(k % 2 == 1, 1.0, -1.0)
    # sum small terms first
    series = math.fsum((signs * np.cos(2.0 * k * t) / k)[::-1])
    return series - math.log(2.0)


def fourier_logcos_check(
    ts: tuple[float, ...] = (0.0, _PI / 6.0, _PI / 4.0, _PI / 3.0, HALF_PI - 0.1),
    terms: int = 10**5,
    tol: float = 1e-4,
) -> CheckRecord:
    worst = (-1.0, 0.0, 0.0)
    for t in ts:
        approx = fourier_logcos(t, terms)
        exact = log_cos(t)
        if abs(approx - exact) > worst[0]:
            worst = (abs(approx - exact), approx, exact)
    return CheckRecord.equality("fourier_logcos", "logcos-fourier", worst[1], worst[2], tol)


def fourier_moment_coefficients(k: int) -> tuple[float, float]:
    """Integrals of t cos(2kt) and t^2 cos(2kt) over [0, pi/2]."""
    if k < 1:
        raise DomainError("k must be positive")
    sign = -1.0 if k % 2 else 1.0
    return (sign - 1.0) / (4.0 * k * k), _PI * sign / (4.0 * k * k)


def fourier_coefficient_checks(
    k_max: int = 20, tol: float = 1e-12, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> CheckRecord:
    """Largest discrepancy between the coefficient formulas and quadrature for k <= k_max."""
    worst = (-1.0, 0.0, 0.0)
    for k in range(1, k_max + 1):
        exact = fourier_moment_coefficients(k)
        for power in (1, 2):
            res = integrate_weighted(lambda t: math.cos(2.0 * k * t), power, 0.0, HALF_PI, cfg)
            diff = abs(res.value - exact[power - 1])
            if diff > worst[0]:
                worst = (diff, res.value, exact[power - 1])
    return CheckRecord.equality("fourier_coefficients", "logcos-fourier", worst[1], worst[2], tol)


def alternating_zeta_check(tol: float = 1e-12) -> CheckRecord:
    value, _ = alternating_zeta3()
    return CheckRecord.equality("alternating_zeta3", "logcos-fourier", value, 0.75 * zeta3(), tol)


def boundary_summands(epsilon: float, route: str = "epsilon") -> tuple[float, float, float, float, float]:
    """The five summands of B(eps), evaluated at u = pi/2 - eps.

    ``route="epsilon"`` uses tan u = cot eps, sec^2 u = csc^2 eps and
    log cos u = log sin eps; ``route="direct"`` evaluates the trigonometric
    functions at u itself and is only accurate away from eps = 0.
    """
    q = AppendixQuantities(epsilon)
    u, P = q.u, q.P_u
    if route == "epsilon":
        tan_u = 1.0 / math.tan(epsilon)
        sec2_u = 1.0 / math.sin(epsilon) ** 2
        log_cos_u = math.log(math.sin(epsilon))
    elif route == "direct":
        tan_u = math.tan(u)
        sec2_u = 1.0 / math.cos(u) ** 2
        log_cos_u = math.log(math.cos(u))
        P = u * u - _A
    else:
        raise DomainError("route must be 'epsilon' or 'direct'")
    return (
        2.0 / 3.0 * (3.0 * u * u - _A) * tan_u,
        P * P * tan_u * sec2_u / 3.0,
        4.0 / 3.0 * u * P * sec2_u,
        2.0 / 3.0 * P * P * tan_u,
        8.0 / 3.0 * u * P * log_cos_u,  # u^3 - A u = u P(u)
    )


def boundary_term(epsilon: float, route: str = "epsilon") -> float:
    return math.fsum(boundary_summands(epsilon, route))


def boundary_route_check(epsilon: float = 0.5, tol: float = 1e-12) -> CheckRecord:
    return CheckRecord.equality(
        f"boundary_routes[eps={epsilon:g}]",
        "appendix-boundary",
        boundary_term(epsilon, "epsilon"),
        boundary_term(epsilon, "direct"),
        tol,
    )


def boundary_limit() -> LimitResult:
    """lim_{eps -> 0+} B(eps), by extrapolation in a basis with eps^k log eps terms."""
    return richardson_limit(boundary_term, "right", 0.0, h0=0.05, max_samples=10, log_terms=True)


def boundary_limit_check(tol: float = 1e-6) -> CheckRecord:
    lim = boundary_limit()
    return CheckRecord.equality("boundary_limit", "appendix-boundary-limit", lim.value, -2.0 * _PI / 3.0, tol)


def truncated_identity(
    epsilon: float, tol: float = 1e-8, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> CheckRecord:
    """Quadrature of xi^2 on [0, u] against the reduced right-hand side."""
    q = AppendixQuantities(epsilon)
    u = q.u
    name = f"truncated_identity[eps={epsilon:g}]"
    lhs = integrate(lambda t: xi(t) ** 2, 0.0, u, cfg)
    i0 = integrate(log_cos, 0.0, u, cfg)
    i2 = integrate_weighted(log_cos, 2, 0.0, u, cfg)
    if not (lhs.converged and i0.converged and i2.converged):
        return CheckRecord.failure(name, "appendix-Ieps-formula", tol, "quadrature did not converge")
    rhs = math.fsum(
        [u, -4.0 / 3.0 * u**3, boundary_term(epsilon), 2.0 * _PI**2 / 3.0 * i0.value, -8.0 * i2.value]
    )
    return CheckRecord.equality(name, "appendix-Ieps-formula", lhs.value, rhs, tol)


def log2_coefficient() -> float:
    """Coefficient of log 2 after inserting the closed-form log integrals into the reduction."""
    return 2.0 * _PI**2 / 3.0 * (-HALF_PI) - 8.0 * (-(_PI**3) / 24.0)


def reduction_final(tol: float = 1e-8, cfg: QuadratureConfig = DEFAULT_CONFIG) -> list[CheckRecord]:
    """Full-interval reduction: numerically, and assembled from the closed forms."""
    anchor = "appendix-reduction-final"
    lhs = integrate(lambda t: xi(t) ** 2, 0.0, HALF_PI, cfg)
    i0 = integrate(log_cos, 0.0, HALF_PI, cfg)
    i2 = integrate_weighted(log_cos, 2, 0.0, HALF_PI, cfg)
    elementary = HALF_PI - _PI**3 / 6.0 - 2.0 * _PI / 3.0
    out = []
    if lhs.converged and i0.converged and i2.converged:
        rhs = elementary + 2.0 * _PI**2 / 3.0 * i0.value - 8.0 * i2.value
        out.append(CheckRecord.equality("reduction_numeric", anchor, lhs.value, rhs, tol))
    else:
        out.append(CheckRecord.failure("reduction_numeric", anchor, tol, "quadrature did not converge"))
    c0, _, c2 = log_cos_closed_forms()
    assembled = elementary + 2.0 * _PI**2 / 3.0 * c0 - 8.0 * c2
    out.append(CheckRecord.equality("reduction_closed_form", anchor, assembled, second_moment_closed_form(), tol))
    out.append(CheckRecord.equality("reduction_log2_cancels", anchor, log2_coefficient(), 0.0, 1e-12))
    return out


def sec4_identity_residual(t: float, step: float = 1e-4) -> float:
    """Five-point central-difference residual of (tan t sec^2 t)' = 3 sec^4 t - 2 sec^2 t."""

    def g(x: float) -> float:
        return math.tan(x) / math.cos(x) ** 2

    sec2 = 1.0 / math.cos(t) ** 2
    return central_difference(g, t, step) - (3.0 * sec2 * sec2 - 2.0 * sec2)
