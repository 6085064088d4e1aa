"""Unconstrained walk counts c(gamma, k) in R^n and the hyperbolic Bessel series.

Displacements are :class:`LatticePoint` values (doubled coordinates).  All
counts are exact Python integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .weyl_core import StepKind, StepSet, as_point

__all__ = [
    "binom",
    "free_diagonal",
    "free_coordinate",
    "free_forward",
    "free_count",
    "bessel_I",
    "bessel_series_coefficient",
]


def binom(k: int, j) -> int:
    """C(k, j), zero unless ``j`` is an integer in ``[0, k]``."""
    if isinstance(j, float):
        if not j.is_integer():
            return 0
        j = int(j)
    elif not isinstance(j, int):
        if getattr(j, "denominator", 1) != 1:
            return 0
        j = int(j)
    if j < 0 or j > k:
        return 0
    return math.comb(k, j)


def _line_count(doubled_disp: int, k: int) -> int:
    # k steps of +-1 on Z ending at displacement doubled_disp / 2
    if doubled_disp % 2:
        return 0
    d = doubled_disp // 2
    if (k + d) % 2:
        return 0
    return binom(k, (k + d) // 2)


def free_diagonal(gamma, k: int) -> int:
    """Walks with steps (+-1/2, ..., +-1/2): prod_i C(k, k/2 + gamma_i)."""
    gamma = as_point(gamma)
    total = 1
    for g in gamma.doubled:
        # k/2 + gamma_i = (k + 2*gamma_i) / 2
        if (k + g) % 2:
            return 0
        total *= binom(k, (k + g) // 2)
        if not total:
            return 0
    return total


@lru_cache(maxsize=200_000)
def _coordinate(doubled: tuple[int, ...], k: int) -> int:
    if len(doubled) == 1:
        return _line_count(doubled[0], k)
    if sum(abs(g) for g in doubled) > 2 * k or (sum(doubled) // 2 + k) % 2:
        return 0
    head, rest = doubled[0], doubled[1:]
    return sum(math.comb(k, j) * _line_count(head, j) * _coordinate(rest, k - j) for j in range(k + 1))


def free_coordinate(gamma, k: int) -> int:
    """Coefficient of u^gamma in (sum_i u_i + 1/u_i)^k.

    Computed by splitting the k steps among the coordinates:
    ``sum over k_1+...+k_n=k of multinomial(k; k_i) * prod_i C(k_i, (k_i + gamma_i)/2)``.
    """
    gamma = as_point(gamma)
    if not gamma.is_integral():
        return 0
    return _coordinate(gamma.doubled, k)


def free_forward(gamma, k: int) -> int:
    """Walks with steps e_i: the multinomial k!/(gamma_1! ... gamma_n!)."""
    gamma = as_point(gamma)
    if not gamma.is_integral():
        return 0
    parts = [g // 2 for g in gamma.doubled]
    if any(p < 0 for p in parts) or sum(parts) != k:
        return 0
    out = math.factorial(k)
    for p in parts:
        out //= math.factorial(p)
    return out


_COUNTERS = {
    StepKind.COORDINATE: free_coordinate,
    StepKind.DIAGONAL: free_diagonal,
    StepKind.FORWARD: free_forward,
}


def free_count(steps: StepSet, gamma, k: int) -> int:
    """Unconstrained count for any step set; zero steps are inserted by choosing their positions."""
    counter = _COUNTERS[steps.kind]
    gamma = as_point(gamma)
    if not steps.include_zero_step:
        return counter(gamma, k)
    return sum(math.comb(k, j) * counter(gamma, j) for j in range(k + 1))


def bessel_series_coefficient(order: int, t: int):
    """The t-th series term of I_order(2x) as an exact fraction of x^(2t+|order|)."""
    a = abs(order)
    return Fraction(1, math.factorial(t) * math.factorial(t + a))


def bessel_I(order: int, argument: float, tolerance: float = 1e-15) -> float:
    """Modified Bessel function I_order(argument) by its power series.

    Terms ``(x)^(2t+|order|) / (t! (t+|order|)!)`` with ``x = argument/2`` are
    added until the next one drops below ``tolerance * (1 + |partial sum|)``.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    a = abs(order)
    x = argument / 2.0
    term = x**a / math.factorial(a)
    total = 0.0
    t = 0
    while True:
        total += term
        t += 1
        term *= x * x / (t * (t + a))
        if abs(term) < tolerance * (1 + abs(total)):
            if t > abs(x):  # past the peak of the series
                return total
