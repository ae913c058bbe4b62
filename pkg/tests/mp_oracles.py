"""High-precision reference values computed with mpmath, independently of the package."""

from __future__ import annotations

import mpmath as mp

mp.mp.dps = 40


def zeta3():
    return mp.zeta(3)


def variance():
    return 4 * mp.zeta(3) - (mp.pi**2 + 4) / 3


def xi(t):
    # the numerator cancels to O(h^3) near pi/2, so work with extra digits
    with mp.workdps(3 * mp.mp.dps):
        t = mp.mpf(t)
        h = mp.pi / 2 - t
        if abs(h) < mp.mpf(10) ** (-mp.mp.dps // 2):
            return -2 * mp.pi / 3 * h + h * h
        c, s = mp.cos(t), mp.sin(t)
        out = (c * c + 2 * t * s * c + t * t - mp.pi**2 / 4) / (c * c)
    return +out


def xi_integral(power=1):
    return mp.quad(lambda t: xi(t) ** power, [0, mp.pi / 4, mp.pi / 2])


def log_cos_moment(power):
    return mp.quad(lambda t: t**power * mp.log(mp.cos(t)), [0, mp.pi / 4, mp.pi / 2])


def inv_sqrt_z(delta):
    return mp.quad(lambda t: 1 / mp.sqrt(1 + delta * xi(t)), [0, mp.pi / 4, mp.pi / 2])


def refined(n, K, d):
    alpha = mp.mpf(n - 1) * K / 2
    D = mp.pi**2 / mp.mpf(d) ** 2
    s = alpha + D
    return (s + mp.sqrt(s * s + variance() * alpha**2)) / 2


def boundary_term(eps):
    """B(eps) evaluated at 40 digits; the route through eps avoids cancellation."""
    with mp.workdps(4 * mp.mp.dps):
        return +_boundary_term(mp.mpf(eps))


def _boundary_term(e):
    u = mp.pi / 2 - e
    A = mp.pi**2 / 4
    P = u * u - A
    tan_u = mp.cot(e)
    sec2 = 1 / mp.sin(e) ** 2
    return (
        mp.mpf(2) / 3 * (3 * u * u - A) * tan_u
        + P * P * tan_u * sec2 / 3
        + mp.mpf(4) / 3 * u * P * sec2
        + mp.mpf(2) / 3 * P * P * tan_u
        + mp.mpf(8) / 3 * u * P * mp.log(mp.sin(e))
    )
