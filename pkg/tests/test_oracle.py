from __future__ import annotations

import math

import pytest

from eigenbound.bounds import bound_report
from eigenbound.errors import DomainError
from eigenbound.oracle import (
    CapProblem,
    cap_eigenvalue,
    fd_cap_eigenvalue,
    scaling_check,
    series_start,
    sharpness_sweep,
    sweep_row,
)


def hemisphere(n, K):
    return CapProblem(n, K, math.pi / (2 * math.sqrt(K)))


@pytest.mark.parametrize("n", [2, 3, 5, 10])
def test_hemisphere_is_nK(n):
    res = cap_eigenvalue(hemisphere(n, 1.0))
    assert res.lam == pytest.approx(n, rel=1e-8)
    assert res.residual < 1e-10


def test_one_dimensional_interval_analogue():
    # n = 2 and tiny cap: lambda ~ j0^2 / R^2 (flat disc limit)
    R = 1e-3
    j0 = 2.404825557695773
    res = cap_eigenvalue(CapProblem(2, 1.0, R))
    assert res.lam * R * R == pytest.approx(j0 * j0, rel=1e-6)


@pytest.mark.parametrize("n,K,R", [(2, 1.0, math.pi / 4), (3, 4.0, 0.5), (5, 0.25, 2.0)])
def test_finite_differences_agree(n, K, R):
    p = CapProblem(n, K, R)
    assert fd_cap_eigenvalue(p) == pytest.approx(cap_eigenvalue(p).lam, rel=1e-6)


def test_quarter_cap_value():
    assert cap_eigenvalue(CapProblem(2, 1.0, math.pi / 4)).lam == pytest.approx(9.0396894886, rel=1e-9)


@pytest.mark.parametrize("c", [0.5, 2.0])
def test_scaling(c):
    assert scaling_check(CapProblem(3, 1.0, 0.8), c).passed


def test_strictly_decreasing_in_radius():
    lams = [cap_eigenvalue(CapProblem(3, 1.0, R)).lam for R in (0.3, 0.6, 0.9, 1.2, math.pi / 2)]
    assert all(a > b for a, b in zip(lams, lams[1:]))


def test_series_start_small_radius():
    p = CapProblem(3, 1.0, 1.0)
    u, du = series_start(p, 5.0, 1e-6)
    assert u == pytest.approx(1.0 - 5.0 / 6.0 * 1e-12, rel=1e-15)
    assert du == pytest.approx(-5.0 / 3.0 * 1e-6, rel=1e-9)
    with pytest.raises(DomainError):
        series_start(p, 5.0, 1.0)


@pytest.mark.parametrize("n,K,R", [(1, 1.0, 1.0), (2, 0.0, 1.0), (2, 1.0, 2.0), (2, 1.0, -1.0)])
def test_admissibility(n, K, R):
    with pytest.raises(DomainError):
        CapProblem(n, K, R)


def test_inadmissible_radius_message():
    with pytest.raises(DomainError, match="mean curvature"):
        CapProblem(2, 1.0, 2.0)


def test_sweep_rows_are_sound():
    radii = [0.3, 0.6, 0.9, 1.2, math.pi / 2]
    rows = sharpness_sweep(2, 1.0, radii)
    assert len(rows) == len(radii)
    assert all(r.sound and r.gap_best >= -1e-8 * r.lambda_true for r in rows)
    assert rows[-1].gap_best == pytest.approx(0.0, abs=1e-7)


def test_sweep_row_composition():
    row = sweep_row(3, 1.0, 0.7)
    p = CapProblem(3, 1.0, 0.7)
    rep = bound_report(p.geometry())
    assert row.lambda_true == cap_eigenvalue(p).lam
    assert row.best == rep.best
    assert row.d_tilde == 1.4


def test_failed_row_is_recorded():
    row = sweep_row(2, 1.0, 3.0)
    assert row.error is not None and "R" in row.error
    assert row.lambda_true is None and not row.sound
