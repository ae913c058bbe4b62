"""Acceptance criteria, each run at its stated tolerance and time limit.

Every criterion records one PASS/FAIL line, shown in the pytest terminal
summary (or printed directly when this file is run as a script).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np
import pytest

from eigenbound import bounds, comparison, constants, identities
from eigenbound.oracle import CapProblem, cap_eigenvalue
from eigenbound.verify import random_geometries

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


@dataclass
class Outcome:
    passed: bool
    detail: str


def c01_variance_constant() -> Outcome:
    v = constants.variance_constant()
    diff = abs(v - 0.1850261456)
    return Outcome(diff <= 1e-9, f"V={v:.15g} |diff|={diff:.2e} tol=1e-9")


def c02_mean_identity() -> Outcome:
    rec = comparison.xi_mean(tol=1e-10)
    return Outcome(rec.passed, f"|diff|={rec.abs_discrepancy:.2e} tol=1e-10")


def c03_second_moment() -> Outcome:
    rec = comparison.xi_second_moment(tol=1e-9)
    return Outcome(rec.passed, f"|diff|={rec.abs_discrepancy:.2e} tol=1e-9")


def c04_log_cos() -> Outcome:
    recs = identities.log_cos_integrals(tol=1e-9)
    worst = max(r.abs_discrepancy for r in recs)
    return Outcome(len(recs) == 3 and all(r.passed for r in recs), f"3 integrals, worst |diff|={worst:.2e} tol=1e-9")


def c05_boundary() -> Outcome:
    lim = identities.boundary_limit_check(tol=1e-6)
    recs = [identities.truncated_identity(e, tol=1e-8) for e in (0.5, 0.2, 0.1, 0.05, 0.02, 0.01)]
    worst = max(r.abs_discrepancy for r in recs)
    ok = lim.passed and all(r.passed for r in recs)
    return Outcome(ok, f"limit |diff|={lim.abs_discrepancy:.2e} tol=1e-6; truncated worst |diff|={worst:.2e} tol=1e-8")


def c06_one_root() -> Outcome:
    rec = bounds.one_root_check(grid_size=10**6, tol=1e-12)
    return Outcome(rec.passed, f"10^6-point grid, slack={rec.abs_discrepancy:.2e} tol=1e-12")


def c07_certificates() -> Outcome:
    certs = constants.rational_certificates()
    names = {c.name for c in certs}
    required = {"zeta3_upper_bound", "pi_squared_lower_bound", "variance_below_quarter", "cube_ratio_below_nine"}
    ok = required <= names and all(c.holds for c in certs)
    return Outcome(ok, f"{sum(c.holds for c in certs)}/{len(certs)} certificates hold")


def c08_variance_dominance() -> Outcome:
    slack = math.inf
    for k in range(10):
        d = 0.05 * k
        exact = comparison.inv_sqrt_z_integral(d)
        mid = comparison.variance_refined_rhs(d)
        slack = min(slack, exact - mid, mid - comparison.jensen_baseline(d))
    return Outcome(slack >= -1e-10, f"worst slack={slack:.2e} tol=1e-10")


def c09_ratios() -> Outcome:
    r10 = bounds.ratio(bounds.hemisphere_input(10, 1.0))
    cap = bounds.universal_ratio_cap()
    ok = abs(r10 - 1.0301) <= 5e-4 and abs(cap - 1.0443) <= 5e-5
    return Outcome(ok, f"ratio(n=10)={r10:.10f} cap={cap:.10f}")


def c10_hemisphere() -> Outcome:
    worst = 0.0
    for n in (2, 3, 5, 10):
        for K in (0.25, 1.0, 4.0):
            lam = cap_eigenvalue(CapProblem(n, K, math.pi / (2 * math.sqrt(K)))).lam
            worst = max(worst, abs(lam - n * K) / (n * K))
    return Outcome(worst <= 1e-8, f"12 cases, worst rel err={worst:.2e} tol=1e-8")


def c11_soundness() -> Outcome:
    radii = (0.3, 0.6, 0.9, 1.2, math.pi / 2)
    worst_excess = -math.inf
    chain_ok = True
    for n in (2, 5, 10):
        for R in radii:
            p = CapProblem(n, 1.0, R)
            lam = cap_eigenvalue(p).lam
            rep = bounds.bound_report(p.geometry())
            for bound in (rep.reilly, rep.ling, rep.refined, rep.implicit):
                worst_excess = max(worst_excess, (bound - lam) / lam)
            chain_ok &= rep.implicit > rep.refined > rep.ling
    ok = worst_excess <= 1e-8 and chain_ok
    return Outcome(ok, f"15 caps, max (bound-lambda)/lambda={worst_excess:.2e} tol=1e-8, strict chain={chain_ok}")


def c12_quadratic_certificate() -> Outcome:
    rng = np.random.default_rng(0)
    worst = max(abs(bounds.quadratic_residual(g)) for g in random_geometries(rng, 10**4))
    return Outcome(worst <= 1e-9, f"10^4 random inputs, worst rel residual={worst:.2e} tol=1e-9")


CRITERIA: list[tuple[str, float, Callable[[], Outcome]]] = [
    ("1 variance constant", 1.0, c01_variance_constant),
    ("2 mean identity", 1.0, c02_mean_identity),
    ("3 second moment", 1.0, c03_second_moment),
    ("4 log-cos integrals", 1.0, c04_log_cos),
    ("5 boundary limit and truncated identity", 5.0, c05_boundary),
    ("6 one-root inequality", 5.0, c06_one_root),
    ("7 rational certificates", 1.0, c07_certificates),
    ("8 variance-Jensen dominance", 5.0, c08_variance_dominance),
    ("9 ratio claims", 1.0, c09_ratios),
    ("10 hemisphere oracle", 10.0, c10_hemisphere),
    ("11 soundness sweep", 60.0, c11_soundness),
    ("12 quadratic certificate", 5.0, c12_quadratic_certificate),
]


def run_criterion(label: str, limit: float, fn: Callable[[], Outcome]) -> tuple[bool, str]:
    start = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - start
    ok = out.passed and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'}  criterion {label}: {out.detail}; {elapsed:.2f}s (limit {limit:g}s)"
    return ok, line


@pytest.mark.parametrize("label,limit,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_acceptance(label, limit, fn):
    ok, line = run_criterion(label, limit, fn)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
