"""
The verification ledger: every identity and inequality the package can
check numerically, grouped under stable names with default tolerances.

Each group is run with its effective tolerance (default or override) and
yields one or more CheckRecords. Randomized groups draw from a
``numpy.random.Generator`` seeded by the caller, so a fixed seed reproduces
the report exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from . import bounds, comparison, constants, identities
from .bounds import GeometryInput
from .errors import EigenboundError
from .records import CheckRecord

__all__ = ["Check", "CHECKS", "default_tolerances", "run_checks", "random_geometries"]

_TRUNCATION_EPSILONS = (0.5, 0.2, 0.1, 0.05, 0.02, 0.01)
_RANDOM_INPUTS = 10**4


@dataclass(frozen=True)
class Check:
    name: str
    tolerance: float
    run: Callable[[float, np.random.Generator], list[CheckRecord]]
    description: str = ""


def random_geometries(rng: np.random.Generator, count: int = _RANDOM_INPUTS) -> list[GeometryInput]:
    """Admissible inputs spread over many orders of magnitude, with K > 0."""
    ns = rng.integers(2, 101, size=count)
    ks = 10.0 ** rng.uniform(-3.0, 3.0, size=count)
    ds = 10.0 ** rng.uniform(-3.0, 3.0, size=count)
    return [GeometryInput(int(n), float(k), float(d)) for n, k, d in zip(ns, ks, ds)]


def _one(record: CheckRecord) -> list[CheckRecord]:
    return [record]


def _variance_constant(tol, rng):
    return _one(CheckRecord.equality("variance_constant", "V-value", constants.variance_constant(), 0.1850261456, tol))


def _variance_bounds(tol, rng):
    v = constants.variance_constant()
    return _one(CheckRecord.inequality("variance_bounds", "V-bounds", v, 0.25, min(v, 0.25 - v), tol))


def _zeta3_bracket(tol, rng):
    z = constants.zeta3()
    slack = math.inf
    for n in (5, 10, 100, 1000):
        lo, hi = constants.zeta3_bracket(n)
        slack = min(slack, z - lo, hi - z)
    return _one(CheckRecord.inequality("zeta3_bracket", "zeta3-tail", z, constants.ZETA3_REFERENCE, slack, tol))


def _alternating_zeta3(tol, rng):
    return _one(identities.alternating_zeta_check(tol))


def _rational_certificates(tol, rng):
    out = []
    for cert in constants.rational_certificates():
        lhs, rhs = float(cert.lhs), float(cert.rhs)
        out.append(CheckRecord.exact(f"certificate[{cert.name}]", "V-bounds", lhs, rhs, cert.holds))
    return out


def _xi_mean(tol, rng):
    return _one(comparison.xi_mean(tol))


def _xi_mean_fubini(tol, rng):
    return _one(comparison.xi_mean_fubini(tol))


def _xi_range(tol, rng):
    return _one(comparison.xi_range_check(tol=tol))


def _xi_representations(tol, rng):
    t = np.linspace(0.0, comparison.HALF_PI - 1e-3, 2001)
    direct = comparison.xi_array(t)
    integral = np.array([comparison.xi_integral_form(float(s)) for s in t])
    i = int(np.argmax(np.abs(direct - integral)))
    return _one(CheckRecord.equality("xi_representations", "xi-def", float(direct[i]), float(integral[i]), tol))


def _xi_endpoint_series(tol, rng):
    worst = (-1.0, 0.0, 0.0)
    for h in (1e-2, 3e-3, 1e-3):
        series = comparison.xi_series(h)
        closed = comparison.XiEvaluator(switch_threshold=1e-12)(comparison.HALF_PI - h)
        if abs(series - closed) > worst[0]:
            worst = (abs(series - closed), series, closed)
    return _one(CheckRecord.equality("xi_endpoint_series", "xi-def", worst[1], worst[2], tol))


def _xi_ode(tol, rng):
    t = np.linspace(0.0, comparison.HALF_PI - 1e-3, 1002)[1:-1]
    res = np.array([comparison.xi_first_order_residual(float(s)) for s in t])
    i = int(np.argmax(np.abs(res)))
    return _one(CheckRecord.equality("xi_ode_residual", "xi-ode", float(res[i]), 0.0, tol))


def _xi_second_moment(tol, rng):
    return _one(comparison.xi_second_moment(tol))


def _xi_normalized_moments(tol, rng):
    # (2/pi) int xi = -1 and (2/pi) int xi^2 = 1 + V
    scale = 1.0 / comparison.HALF_PI
    first = comparison.xi_mean(tol)
    second = comparison.xi_second_moment(tol)
    v = constants.variance_constant()
    return [
        CheckRecord.equality("xi_normalized_mean", "xi-mean", scale * first.lhs, -1.0, tol),
        CheckRecord.equality("xi_normalized_second_moment", "E-xi-square", scale * second.lhs, 1.0 + v, tol),
    ]


def _z_moments(kind: str):
    def run(tol, rng):
        records = comparison.z_moment_checks(mean_tol=tol, var_tol=tol)
        return [r for r in records if r.name.startswith(kind)]

    return run


def _strong_convexity(tol, rng):
    z = comparison.ZFunction(0.45).array(np.linspace(0.0, comparison.HALF_PI, 10**4))
    return _one(comparison.strong_convexity_check(z, mu=0.55, tol=tol))


def _variance_dominance(tol, rng):
    return _one(comparison.variance_dominance_check(tol=tol))


def _log_cos_integrals(tol, rng):
    return identities.log_cos_integrals(tol)


def _fourier_logcos(tol, rng):
    return _one(identities.fourier_logcos_check(tol=tol))


def _fourier_coefficients(tol, rng):
    return _one(identities.fourier_coefficient_checks(tol=tol))


def _boundary_routes(tol, rng):
    return [identities.boundary_route_check(e, tol) for e in (0.5, 0.3)]


def _boundary_limit(tol, rng):
    return _one(identities.boundary_limit_check(tol))


def _truncated_identity(tol, rng):
    return [identities.truncated_identity(e, tol) for e in _TRUNCATION_EPSILONS]


def _reduction(tol, rng):
    return [r for r in identities.reduction_final(tol) if r.name != "reduction_log2_cancels"]


def _reduction_log2(tol, rng):
    return _one(CheckRecord.equality("reduction_log2_cancels", "appendix-reduction-final", identities.log2_coefficient(), 0.0, tol))


def _sec4_identity(tol, rng):
    t = np.linspace(0.05, 1.4, 300)
    res = np.array([identities.sec4_identity_residual(float(s)) for s in t])
    i = int(np.argmax(np.abs(res)))
    return _one(CheckRecord.equality("sec4_identity", "tan-sec2-derivative", float(res[i]), 0.0, tol))


def _one_root(tol, rng):
    return _one(bounds.one_root_check(tol=tol))


def _delta_range(tol, rng):
    # (n-1)/(2n) < 1/2 for every n, checked exactly
    worst = min(Fraction(1, 2) - Fraction(n - 1, 2 * n) for n in range(2, 1001))
    holds = worst > 0 and all(bounds.delta_range(n) < 0.5 for n in range(2, 1001))
    return _one(CheckRecord.exact("delta_range", "delta-range", bounds.delta_range(1000), 0.5, holds))


def _ratio_n10(tol, rng):
    value = bounds.ratio(bounds.hemisphere_input(10, 1.0))
    return _one(CheckRecord.equality("ratio_hemisphere_n10", "ratio-discussion", value, 1.0301, tol))


def _ratio_cap(tol, rng):
    return _one(CheckRecord.equality("ratio_universal_cap", "ratio-discussion", bounds.universal_ratio_cap(), 1.0443, tol))


def _ratio_random(tol, rng):
    cap = bounds.universal_ratio_cap()
    worst = max(bounds.ratio(g) for g in random_geometries(rng, 2000))
    return _one(CheckRecord.inequality("ratio_below_cap", "ratio-discussion", worst, cap, cap - worst, tol))


def _quadratic_certificate(tol, rng):
    worst = (-1.0, 0.0)
    for g in random_geometries(rng):
        r = abs(bounds.quadratic_residual(g))
        if r > worst[0]:
            worst = (r, bounds.quadratic_residual(g))
    return _one(CheckRecord.equality("quadratic_certificate", "refined-quadratic", worst[1], 0.0, tol))


def _bound_ordering(tol, rng):
    # relative slack of implicit >= refined > ling over random inputs
    slack = math.inf
    lhs = rhs = math.nan
    for g in random_geometries(rng, 2000):
        try:
            rep = bounds.bound_report(g)
        except EigenboundError:
            return _one(CheckRecord.failure("bound_ordering", "bound-chain", tol, f"bound report failed for {g}"))
        s = min(rep.implicit - rep.refined, rep.refined - rep.ling) / rep.refined
        if s < slack:
            slack, lhs, rhs = s, rep.implicit, rep.refined
    return _one(CheckRecord.inequality("bound_ordering", "bound-chain", lhs, rhs, slack, tol))


CHECKS: tuple[Check, ...] = (
    Check("variance_constant", 1e-9, _variance_constant, "V = 4 zeta(3) - (pi^2 + 4)/3 against 0.1850261456"),
    Check("variance_bounds", 0.0, _variance_bounds, "0 < V < 1/4"),
    Check("zeta3_bracket", 0.0, _zeta3_bracket, "zeta(3) inside integral-test brackets"),
    Check("alternating_zeta3", 1e-12, _alternating_zeta3, "alternating sum equals (3/4) zeta(3)"),
    Check("rational_certificates", 0.0, _rational_certificates, "exact rational inequality chain"),
    Check("xi_mean", 1e-10, _xi_mean, "mean of xi"),
    Check("xi_mean_fubini", 1e-10, _xi_mean_fubini, "mean of xi after Fubini"),
    Check("xi_range", 0.0, _xi_range, "-2 <= xi <= 0"),
    Check("xi_representations", 1e-10, _xi_representations, "closed form against integral form"),
    Check("xi_endpoint_series", 1e-12, _xi_endpoint_series, "endpoint series against closed form"),
    Check("xi_ode_residual", 1e-6, _xi_ode, "first-order ODE for xi"),
    Check("xi_second_moment", 1e-9, _xi_second_moment, "second moment of xi"),
    Check("xi_normalized_moments", 1e-9, _xi_normalized_moments, "(2/pi) int xi = -1, (2/pi) int xi^2 = 1 + V"),
    Check("z_mean", 1e-10, _z_moments("z_mean"), "mean of z is 1 - delta"),
    Check("z_variance", 1e-9, _z_moments("z_variance"), "variance of z is delta^2 V"),
    Check("strong_convexity", 1e-12, _strong_convexity, "quadratic minorant of x^(-1/2)"),
    Check("variance_dominance", 1e-10, _variance_dominance, "integral >= variance-refined >= Jensen"),
    Check("log_cos_integrals", 1e-9, _log_cos_integrals, "closed forms of the log-cos moments"),
    Check("fourier_logcos", 1e-4, _fourier_logcos, "Fourier series of log cos"),
    Check("fourier_coefficients", 1e-12, _fourier_coefficients, "moments of cos(2kt)"),
    Check("boundary_routes", 1e-12, _boundary_routes, "boundary term by two routes"),
    Check("boundary_limit", 1e-6, _boundary_limit, "limit of the boundary term"),
    Check("truncated_identity", 1e-8, _truncated_identity, "truncated reduction of the second moment"),
    Check("reduction", 1e-8, _reduction, "full-interval reduction"),
    Check("reduction_log2", 1e-12, _reduction_log2, "log 2 cancels in the reduction"),
    Check("sec4_identity", 1e-6, _sec4_identity, "derivative of tan sec^2"),
    Check("one_root", 1e-12, _one_root, "one-root inequality on [0, 1/2]"),
    Check("delta_range", 0.0, _delta_range, "delta_max < 1/2"),
    Check("ratio_hemisphere_n10", 5e-4, _ratio_n10, "refined/ling for the 10-dim hemisphere"),
    Check("ratio_universal_cap", 5e-5, _ratio_cap, "supremum of refined/ling"),
    Check("ratio_below_cap", 0.0, _ratio_random, "refined/ling below the cap on random inputs"),
    Check("quadratic_certificate", 1e-9, _quadratic_certificate, "refined solves its quadratic"),
    Check("bound_ordering", 1e-12, _bound_ordering, "implicit >= refined >= ling on random inputs"),
)


def default_tolerances() -> dict[str, float]:
    return {c.name: c.tolerance for c in CHECKS}


def run_checks(overrides: Mapping[str, float] | None = None, seed: int = 0) -> list[CheckRecord]:
    """Run every group; ``overrides`` maps group names to tolerances.

    Unknown names or negative/non-finite tolerances raise ValueError before
    anything runs. A group that raises is recorded as a failed check.
    """
    overrides = dict(overrides or {})
    known = default_tolerances()
    unknown = sorted(set(overrides) - set(known))
    if unknown:
        raise ValueError(f"unknown check name(s): {', '.join(unknown)}")
    for name, tol in overrides.items():
        if not (math.isfinite(tol) and tol >= 0.0):
            raise ValueError(f"tolerance for {name} must be finite and >= 0; got {tol!r}")
    records: list[CheckRecord] = []
    for check in CHECKS:
        tol = overrides.get(check.name, check.tolerance)
        rng = np.random.default_rng(seed)
        try:
            produced = check.run(tol, rng)
        except (EigenboundError, ArithmeticError, ValueError) as exc:
            produced = [CheckRecord.failure(check.name, check.name, tol, f"{type(exc).__name__}: {exc}")]
        records.extend(r.with_tolerance(tol) for r in produced)
    return records
