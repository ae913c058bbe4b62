"""
Constants behind the variance refinement.

Apery's constant is summed on first use (and cached) rather than
hard-coded, so the exact rational certificates below certify the value the
library actually computes with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Constants",
    "RationalCertificate",
    "constants",
    "zeta3",
    "zeta3_partial_sum",
    "zeta3_bracket",
    "alternating_zeta3",
    "variance_constant",
    "second_moment_closed_form",
    "rational_certificates",
    "ZETA3_REFERENCE",
]

# regression literal only; never used in computations
ZETA3_REFERENCE = 1.2020569031595942

_ZETA3_BRACKET_WIDTH = 1e-15


def zeta3_partial_sum(n: int) -> float:
    """sum_{m=1}^{n} m**-3, correctly rounded."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.fsum(1.0 / (m * m * m) for m in range(n, 0, -1))


def zeta3_bracket(n: int) -> tuple[float, float]:
    """Integral-test bracket for zeta(3) from the first ``n`` terms.

    The tail sum_{m>n} m**-3 lies strictly between the integrals of x**-3
    over [n+1, inf) and [n, inf).
    """
    if n < 1:
        raise ValueError("n must be positive")
    s = zeta3_partial_sum(n)
    return s + 0.5 / (n + 1) ** 2, s + 0.5 / n**2


def _terms_for_width(width: float) -> int:
    # bracket width 1/(2n^2) - 1/(2(n+1)^2) ~ 1/n^3
    n = max(1, int(width ** (-1.0 / 3.0)))
    while 0.5 / n**2 - 0.5 / (n + 1) ** 2 >= width:
        n += 1
    return n


@lru_cache(maxsize=None)
def zeta3() -> float:
    """Apery's constant from the partial sum plus the midpoint of the tail bracket."""
    n = _terms_for_width(_ZETA3_BRACKET_WIDTH)
    tail = 0.25 / n**2 + 0.25 / (n + 1) ** 2
    return math.fsum([zeta3_partial_sum(n), tail])


@lru_cache(maxsize=None)
def alternating_zeta3(tol: float = 1e-16) -> tuple[float, float]:
    """sum_k (-1)**(k+1) k**-3 and its alternating-series error bound.

    Averaging the last two partial sums halves the error bound, which is the
    first omitted term.
    """
    terms = []
    k = 1
    while True:
        term = 1.0 / k**3
        if term < tol:
            break
        terms.append(term if k % 2 else -term)
        k += 1
    s_n = math.fsum(terms)
    s_prev = math.fsum(terms[:-1])
    # the limit lies between consecutive partial sums
    return 0.5 * (s_n + s_prev), 0.5 * abs(s_n - s_prev)


def variance_constant() -> float:
    """Variance of xi under the normalized measure (2/pi) dt on [0, pi/2]."""
    return 4.0 * zeta3() - (math.pi**2 + 4.0) / 3.0


def second_moment_closed_form() -> float:
    """Closed form of the integral of xi**2 over [0, pi/2]."""
    return math.pi * (2.0 * zeta3() - (math.pi**2 + 1.0) / 6.0)


@dataclass(frozen=True)
class Constants:
    zeta3: float
    log2: float
    pi: float
    V: float
    second_moment_integral: float
    E_xi_sq: float


@lru_cache(maxsize=None)
def constants() -> Constants:
    z = zeta3()
    m2 = second_moment_closed_form()
    return Constants(
        zeta3=z,
        log2=math.log(2.0),
        pi=math.pi,
        V=variance_constant(),
        second_moment_integral=m2,
        E_xi_sq=2.0 / math.pi * m2,
    )


@dataclass(frozen=True)
class RationalCertificate:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str
    holds: bool

    def __str__(self) -> str:
        mark = "holds" if self.holds else "FAILS"
        return f"{self.name}: {self.lhs} {self.relation} {self.rhs} ({mark})"


def _certify(name: str, lhs: Fraction, relation: str, rhs: Fraction) -> RationalCertificate:
    if relation == "<":
        holds = lhs < rhs
    elif relation == ">":
        holds = lhs > rhs
    elif relation == "=":
        holds = lhs == rhs
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return RationalCertificate(name, lhs, rhs, relation, holds)


def rational_certificates() -> list[RationalCertificate]:
    """Exact-arithmetic chain proving 0 < V < 1/4 and (31/64)**(-3/2) < 3.

    The last two entries tie the chain to the runtime floats: every binary
    double is a rational, so comparing ``Fraction(x)`` is exact.
    """
    F = Fraction
    partial = sum(F(1, m**3) for m in range(1, 6))
    zeta_upper = F(260423, 216000)
    pi_lower_sq = F(223, 71) ** 2
    four_zeta_upper = 4 * zeta_upper
    pi_term_lower = (F(493, 50) + 4) / 3
    v_upper = four_zeta_upper - pi_term_lower
    certs = [
        _certify("zeta3_upper_bound", partial + F(1, 50), "=", zeta_upper),
        _certify("four_zeta3_upper_bound", four_zeta_upper, "=", F(260423, 54000)),
        _certify("pi_lower_squared", pi_lower_sq, "=", F(49729, 5041)),
        _certify("pi_squared_lower_bound", pi_lower_sq, ">", F(493, 50)),
        _certify("pi_term_lower_bound", pi_term_lower, "=", F(231, 50)),
        _certify("variance_upper_difference", v_upper, "=", F(10943, 54000)),
        _certify("variance_below_quarter", v_upper, "<", F(1, 4)),
        _certify("one_root_denominator", F(1, 2) - F(1, 4) / 16, "=", F(31, 64)),
        _certify("cube_ratio", F(64, 31) ** 3, "=", F(262144, 29791)),
        _certify("cube_ratio_below_nine", F(64, 31) ** 3, "<", F(9)),
        _certify("nine_times_denominator", F(9 * 29791), ">", F(262144)),
        _certify("runtime_zeta3_below_bound", F(zeta3()), "<", zeta_upper),
        _certify("runtime_pi_above_223_71", F(math.pi), ">", F(223, 71)),
    ]
    return certs
