from __future__ import annotations

import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenbound.errors import DivergenceError, DomainError, QuadratureError
from eigenbound.quadrature import (
    QuadratureConfig,
    integrate,
    integrate_weighted,
    richardson_limit,
)


def test_polynomial_is_exact():
    res = integrate(lambda x: 3 * x * x, 0.0, 2.0)
    assert res.converged
    assert res.value == pytest.approx(8.0, abs=1e-14)


def test_log_endpoint_singularity():
    res = integrate(math.log, 0.0, 1.0)
    assert res.converged
    assert abs(res.value + 1.0) < 1e-13


def test_inverse_sqrt_singularity_against_mpmath():
    f = lambda x: 1.0 / math.sqrt(math.sin(x))
    ref = float(mp.quad(lambda x: 1 / mp.sqrt(mp.sin(x)), [0, 1]))
    res = integrate(f, 0.0, 1.0)
    assert abs(res.value - ref) < 1e-11


def test_log_cos_at_right_endpoint():
    ref = -math.pi / 2 * math.log(2.0)
    res = integrate(lambda t: math.log(math.cos(t)), 0.0, math.pi / 2)
    assert res.converged
    assert abs(res.value - ref) < 1e-13


def test_error_estimate_is_honest():
    res = integrate(math.exp, -1.0, 1.0)
    assert abs(res.value - (math.e - 1 / math.e)) <= max(res.error_estimate, 1e-15)


def test_weighted_matches_explicit_weight():
    a = integrate_weighted(math.cos, "t2", 0.0, 1.0)
    b = integrate(lambda t: t * t * math.cos(t), 0.0, 1.0)
    assert a.value == b.value


@pytest.mark.parametrize("weight", ["t3", 3, "x"])
def test_weighted_rejects_unknown_weight(weight):
    with pytest.raises(DomainError):
        integrate_weighted(math.cos, weight, 0.0, 1.0)


def test_interior_nan_raises():
    with pytest.raises(QuadratureError):
        integrate(lambda x: math.nan if x > 0.3 else 1.0, 0.0, 1.0)


def test_non_convergence_is_reported():
    cfg = QuadratureConfig(rel_tol=1e-15, abs_tol=1e-300, max_levels=3)
    res = integrate(lambda x: math.sin(200 * x), 0.0, 3.0, cfg)
    assert not res.converged


@pytest.mark.parametrize("a,b", [(1.0, 1.0), (2.0, 1.0), (0.0, math.inf)])
def test_bad_limits(a, b):
    with pytest.raises(DomainError):
        integrate(math.cos, a, b)


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(rel_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureConfig(max_levels=0)


@settings(max_examples=30, deadline=None)
@given(
    c1=st.floats(-5, 5),
    c2=st.floats(-5, 5),
    w=st.floats(0.1, 3.0),
)
def test_linearity(c1, c2, w):
    f = lambda x: math.sin(w * x)
    g = lambda x: math.exp(-x)
    lhs = integrate(lambda x: c1 * f(x) + c2 * g(x), 0.0, 1.0).value
    rhs = c1 * integrate(f, 0.0, 1.0).value + c2 * integrate(g, 0.0, 1.0).value
    assert abs(lhs - rhs) < 1e-12 * (1 + abs(c1) + abs(c2))


@settings(max_examples=30, deadline=None)
@given(m=st.floats(0.05, 0.95))
def test_additivity(m):
    f = lambda x: math.log(x) * math.cos(x)
    whole = integrate(f, 0.0, 1.0).value
    parts = integrate(f, 0.0, m).value + integrate(f, m, 1.0).value
    assert abs(whole - parts) < 1e-12


def test_richardson_polynomial_limit():
    lim = richardson_limit(lambda x: math.sin(x) / x, "right", 0.0, log_terms=False)
    assert abs(lim.value - 1.0) < 1e-12


def test_richardson_left_side():
    lim = richardson_limit(lambda x: (1.0 - x) * math.exp(x - 1.0), "left", 1.0, log_terms=False)
    assert abs(lim.value) < 1e-12


def test_richardson_with_log_terms():
    g = lambda e: 2.0 + e * math.log(e) + 3.0 * e
    lim = richardson_limit(g, "right", 0.0)
    assert abs(lim.value - 2.0) < 1e-10


def test_richardson_divergence():
    with pytest.raises(DivergenceError):
        richardson_limit(lambda x: 1.0 / x, "right", 0.0)


def test_richardson_validation():
    with pytest.raises(DomainError):
        richardson_limit(math.cos, "up", 0.0)
    with pytest.raises(DomainError):
        richardson_limit(math.cos, "right", 0.0, ratio=1.5)
