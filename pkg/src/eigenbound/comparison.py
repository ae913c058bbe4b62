"""
The one-dimensional comparison profile and its moments.

xi is the even function on [-pi/2, pi/2]

    xi(t) = (cos^2 t + 2 t sin t cos t + t^2 - pi^2/4) / cos^2 t,

and z(t) = 1 + delta * xi(t) is the profile whose reciprocal square root
controls the eigenvalue estimate. The closed form for xi is 0/0 at the
endpoints, so near them an expansion in h = pi/2 - |t| is used instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .constants import second_moment_closed_form, variance_constant
from .errors import DomainError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate
from .records import CheckRecord

__all__ = [
    "XiEvaluator",
    "ZFunction",
    "xi",
    "xi_array",
    "xi_series",
    "tail_integral",
    "xi_integral_form",
    "central_difference",
    "xi_first_order_residual",
    "xi_mean",
    "xi_mean_fubini",
    "xi_range_check",
    "xi_second_moment",
    "z_moment_checks",
    "inv_sqrt_z_integral",
    "jensen_baseline",
    "variance_refined_rhs",
    "strong_convexity_check",
    "variance_dominance_check",
]

HALF_PI = 0.5 * math.pi
_QUARTER_PI = 0.25 * math.pi
_PI = math.pi

# xi(pi/2 - h) = sum_k c_k h^k, k = 1..8; the next term is O(h^9)
_SERIES = (
    -2.0 * _PI / 3.0,
    1.0,
    -4.0 * _PI / 45.0,
    1.0 / 9.0,
    -4.0 * _PI / 315.0,
    2.0 / 135.0,
    -8.0 * _PI / 4725.0,
    1.0 / 525.0,
)


def xi_series(h):
    """Endpoint expansion of xi at distance ``h`` from +-pi/2 (scalar or array)."""
    acc = 0.0 * h
    for c in reversed(_SERIES):
        acc = (acc + c) * h
    return acc


def _closed_form(t):
    c = np.cos(t) if isinstance(t, np.ndarray) else math.cos(t)
    s = np.sin(t) if isinstance(t, np.ndarray) else math.sin(t)
    return (c * c + 2.0 * t * s * c + t * t - _PI * _PI / 4.0) / (c * c)


def _closed_form_reflected(h):
    """The closed form at t = pi/2 - h with its numerator regrouped exactly.

    With d = 2h - sin 2h the numerator equals d^2/4 + sin^4 h - (pi/2) d,
    a difference of terms of order h^3 and h^4 instead of order one.
    """
    d = _x_minus_sin(2.0 * h)
    sh = np.sin(h)
    return (0.25 * d * d + sh**4 - HALF_PI * d) / (sh * sh)


@dataclass(frozen=True)
class XiEvaluator:
    """Evaluates xi, switching to the endpoint series within ``switch_threshold`` of +-pi/2.

    For pi/4 < |t| the closed form is evaluated in h = pi/2 - |t|; written in
    t it cancels catastrophically (error about 2.5e-16 / h^2).
    """

    switch_threshold: float = 1e-4

    def __post_init__(self) -> None:
        if not 0.0 < self.switch_threshold < _PI / 4.0:
            raise DomainError("switch_threshold must lie in (0, pi/4)")

    def __call__(self, t: float) -> float:
        a = abs(t)
        if a > HALF_PI:
            raise DomainError(f"xi is defined on [-pi/2, pi/2]; got t = {t!r}")
        h = HALF_PI - a
        if h < self.switch_threshold:
            return xi_series(h)
        if a <= _QUARTER_PI:
            return _closed_form(a)
        return float(_closed_form_reflected(h))

    def array(self, t: Iterable[float] | np.ndarray) -> np.ndarray:
        a = np.abs(np.asarray(t, dtype=float))
        if np.any(a > HALF_PI):
            raise DomainError("xi is defined on [-pi/2, pi/2]")
        h = HALF_PI - a
        near = h < self.switch_threshold
        out = np.empty_like(a)
        inner = a <= _QUARTER_PI
        outer = ~near & ~inner
        out[near] = xi_series(h[near])
        out[inner] = _closed_form(a[inner])
        out[outer] = _closed_form_reflected(h[outer])
        return out


_DEFAULT_XI = XiEvaluator()


def xi(t: float) -> float:
    return _DEFAULT_XI(t)


def xi_array(t) -> np.ndarray:
    return _DEFAULT_XI.array(t)


def _x_minus_sin(x):
    """x - sin x without cancellation for small x (scalar or array)."""
    x = np.asarray(x, dtype=float)
    x2 = x * x
    series = x * x2 / 6.0 * (
        1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0)))
    )
    out = np.where(x < 0.1, series, x - np.sin(x))
    return out if out.ndim else float(out)


def tail_integral(t):
    """I(t) = integral of s cos^2 s over [t, pi/2], for 0 <= t <= pi/2.

    Uses the antiderivative s^2/4 + s sin(2s)/4 + cos(2s)/8 rewritten in
    h = pi/2 - t, where it splits into nonnegative pieces:
    I = (pi/2)(2h - sin 2h)/4 - ((2h - sin 2h)^2/4 + sin^4 h)/4.
    """
    h = HALF_PI - np.asarray(t, dtype=float)
    d = _x_minus_sin(2.0 * h)
    sh = np.sin(h)
    out = HALF_PI * d / 4.0 - (d * d / 4.0 + sh**4) / 4.0
    return out if np.ndim(out) else float(out)


def _antiderivative(s: float) -> float:
    return s * s / 4.0 + s * math.sin(2.0 * s) / 4.0 + math.cos(2.0 * s) / 8.0


def xi_integral_form(t: float) -> float:
    """xi(t) = -4 sec^2(t) I(t), valid for 0 <= t < pi/2."""
    if not 0.0 <= t < HALF_PI:
        raise DomainError(f"integral form needs 0 <= t < pi/2; got t = {t!r}")
    if t <= _QUARTER_PI:
        return -4.0 * (_antiderivative(HALF_PI) - _antiderivative(t)) / math.cos(t) ** 2
    return -4.0 * tail_integral(t) / math.sin(HALF_PI - t) ** 2


def central_difference(g, t: float, step: float) -> float:
    """Five-point central difference, O(step^4)."""
    return (8.0 * (g(t + step) - g(t - step)) - (g(t + 2.0 * step) - g(t - 2.0 * step))) / (12.0 * step)


def xi_first_order_residual(t: float, step: float = 1e-4) -> float:
    """Central-difference residual of (xi cos^2)' = 4 t cos^2 t at ``t``."""
    if abs(t) >= HALF_PI:
        raise DomainError(f"need |t| < pi/2; got t = {t!r}")
    s = min(step, 0.25 * (HALF_PI - abs(t)))

    def g(x: float) -> float:
        return xi(x) * math.cos(x) ** 2

    return central_difference(g, t, s) - 4.0 * t * math.cos(t) ** 2


def _quad_or_fail(f, a, b, name, anchor, tol, cfg):
    res = integrate(f, a, b, cfg)
    if not res.converged:
        return res, CheckRecord.failure(
            name, anchor, tol, f"quadrature did not converge (err {res.error_estimate:.2e})"
        )
    return res, None


def xi_mean(tol: float = 1e-10, cfg: QuadratureConfig = DEFAULT_CONFIG) -> CheckRecord:
    """Integral of xi over [0, pi/2] against -pi/2."""
    res, fail = _quad_or_fail(xi, 0.0, HALF_PI, "xi_mean", "xi-mean", tol, cfg)
    if fail:
        return fail
    return CheckRecord.equality("xi_mean", "xi-mean", res.value, -HALF_PI, tol)


def xi_mean_fubini(tol: float = 1e-10, cfg: QuadratureConfig = DEFAULT_CONFIG) -> CheckRecord:
    """After exchanging the order of integration: -4 int s sin s cos s ds = -pi/2."""
    res = integrate(lambda s: -4.0 * s * math.sin(s) * math.cos(s), 0.0, HALF_PI, cfg)
    return CheckRecord.equality("xi_mean_fubini", "xi-mean", res.value, -HALF_PI, tol)


def xi_range_check(grid_size: int = 10**5, tol: float = 0.0) -> CheckRecord:
    """-2 <= xi <= 0 and F(t) = cos^2(t)/2 - I(t) >= 0 on a closed uniform grid of [0, pi/2].

    ``lhs``/``rhs`` hold the grid minimum and maximum of xi; the slack is the
    smallest of min(xi) + 2, -max(xi) and min(F).
    """
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    t = np.linspace(0.0, HALF_PI, grid_size)
    values = xi_array(t)
    f_gap = 0.5 * np.sin(HALF_PI - t) ** 2 - tail_integral(t)
    lo = float(values.min())
    hi = float(values.max())
    slack = min(lo + 2.0, -hi, float(f_gap.min()))
    return CheckRecord.inequality("xi_range", "xi-def", lo, hi, slack, tol)


def xi_second_moment(tol: float = 1e-9, cfg: QuadratureConfig = DEFAULT_CONFIG) -> CheckRecord:
    """Integral of xi^2 over [0, pi/2] against pi (2 zeta(3) - (pi^2 + 1)/6)."""
    name, anchor = "xi_second_moment", "xi-square-integral"
    res, fail = _quad_or_fail(lambda t: xi(t) ** 2, 0.0, HALF_PI, name, anchor, tol, cfg)
    if fail:
        return fail
    return CheckRecord.equality(name, anchor, res.value, second_moment_closed_form(), tol)


def _check_delta(delta: float, upper: float = 0.5) -> None:
    if not 0.0 <= delta < upper:
        raise DomainError(f"delta must lie in [0, {upper}); got {delta!r}")


@dataclass(frozen=True)
class ZFunction:
    """z(t) = 1 + delta xi(t) on [0, pi/2], with 0 <= delta < 1/2 so that 0 < z <= 1."""

    delta: float

    def __post_init__(self) -> None:
        _check_delta(self.delta)

    def __call__(self, t: float) -> float:
        return 1.0 + self.delta * xi(t)

    def array(self, t) -> np.ndarray:
        return 1.0 + self.delta * xi_array(t)

    def mean(self, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
        """(2/pi) times the integral of z; equals 1 - delta."""
        return integrate(self, 0.0, HALF_PI, cfg).value / HALF_PI

    def variance(self, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
        """(2/pi) times the integral of (z - mean)^2; equals delta^2 V."""
        mu = self.mean(cfg)
        return integrate(lambda t: (self(t) - mu) ** 2, 0.0, HALF_PI, cfg).value / HALF_PI


def z_moment_checks(
    deltas: Iterable[float] = (0.1, 0.3, 0.45),
    mean_tol: float = 1e-10,
    var_tol: float = 1e-9,
) -> list[CheckRecord]:
    """Mean 1 - delta and variance delta^2 V of z, each by quadrature."""
    v = variance_constant()
    out = []
    for d in deltas:
        z = ZFunction(d)
        out.append(CheckRecord.equality(f"z_mean[delta={d:g}]", "mu-1-delta", z.mean(), 1.0 - d, mean_tol))
        out.append(CheckRecord.equality(f"z_variance[delta={d:g}]", "var-z", z.variance(), d * d * v, var_tol))
    return out


def inv_sqrt_z_integral(delta: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Integral of z(t)^(-1/2) over [0, pi/2]."""
    z = ZFunction(delta)
    return integrate(lambda t: 1.0 / math.sqrt(z(t)), 0.0, HALF_PI, cfg).value


def jensen_baseline(delta: float) -> float:
    """(pi/2) (1 - delta)^(-1/2): the averaged estimate that ignores the spread of z."""
    _check_delta(delta, 1.0)
    return HALF_PI / math.sqrt(1.0 - delta)


def variance_refined_rhs(delta: float) -> float:
    """(pi/2) ((1 - delta)^(-1/2) + (3/8) V delta^2)."""
    _check_delta(delta)
    return HALF_PI * (1.0 / math.sqrt(1.0 - delta) + 0.375 * variance_constant() * delta * delta)


def strong_convexity_check(
    z_samples: Iterable[float], mu: float | None = None, tol: float = 1e-12
) -> CheckRecord:
    """Quadratic minorant x^(-1/2) >= f(mu) + f'(mu)(x - mu) + (3/8)(x - mu)^2 at each sample.

    ``mu`` defaults to the sample mean. The minorant relies on
    f''(x) = (3/4) x^(-5/2) >= 3/4 on (0, 1].
    """
    x = np.asarray(list(z_samples), dtype=float)
    if x.size == 0:
        raise DomainError("need at least one sample")
    if np.any(x <= 0.0) or np.any(x > 1.0):
        raise DomainError("samples must lie in (0, 1]")
    m = float(x.mean()) if mu is None else float(mu)
    if not 0.0 < m <= 1.0:
        raise DomainError("mu must lie in (0, 1]")
    f_mu = m**-0.5
    minorant = f_mu - 0.5 * m**-1.5 * (x - m) + 0.375 * (x - m) ** 2
    gaps = x**-0.5 - minorant
    i = int(np.argmin(gaps))
    return CheckRecord.inequality(
        "strong_convexity", "variance-ineq", float(x[i] ** -0.5), float(minorant[i]), float(gaps[i]), tol
    )


def variance_dominance_check(
    deltas: Iterable[float] | None = None, tol: float = 1e-10
) -> CheckRecord:
    """inv_sqrt_z_integral >= variance_refined_rhs >= jensen_baseline over a delta sweep.

    ``lhs``/``rhs`` report the two sides of the first inequality at the delta
    where its slack is smallest.
    """
    if deltas is None:
        deltas = [0.05 * k for k in range(10)]
    worst = (math.inf, math.nan, math.nan)
    for d in deltas:
        exact = inv_sqrt_z_integral(d)
        refined = variance_refined_rhs(d)
        slack = min(exact - refined, refined - jensen_baseline(d))
        if slack < worst[0]:
            worst = (slack, exact, refined)
    slack, exact, refined = worst
    return CheckRecord.inequality("variance_dominance", "integral-refined", exact, refined, slack, tol)
