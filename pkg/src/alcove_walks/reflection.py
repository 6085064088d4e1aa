"""Exact constrained counts from signed sums over Weyl group images.

``count_alcove`` sums ``sgn(w) * c(w(lam) - eta, k)`` over the affine group of
the chamber; ``count_circle`` does the same for labelled particles on a circle,
where translations are restricted to a residue class of their total.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Sequence

from ._linalg import bareiss_det
from .errors import NotReflectableError, PreconditionError
from .free_counts import free_count
from .weyl_core import (
    ChamberSpec,
    Family,
    LatticePoint,
    StepSet,
    apply,
    as_point,
    enumerate_elements,
    in_interior,
    is_reflectable,
    permutation_sign,
)

__all__ = [
    "count_alcove",
    "count_circle",
    "count_hyperplane",
    "km_determinant",
    "circle_reduce",
    "check_circle_start",
    "circle_lift",
]


def _check_alcove_inputs(chamber: ChamberSpec, steps: StepSet, eta: LatticePoint, lam: LatticePoint, k: int):
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    if not (eta.n == lam.n == steps.n == chamber.n):
        raise PreconditionError("dimension mismatch between chamber, steps and points")
    for name, p in (("eta", eta), ("lambda", lam)):
        if not steps.admits(p):
            raise PreconditionError(f"{name}={p} is not on a lattice of {steps.kind.value} steps")
    verdict = is_reflectable(steps, chamber, eta)
    if not verdict:
        raise NotReflectableError(verdict.reason)
    for name, p in (("eta", eta), ("lambda", lam)):
        if not in_interior(p, chamber):
            raise PreconditionError(f"{name}={p} is not in the interior of {chamber}")


def count_alcove(chamber: ChamberSpec, steps: StepSet, eta, lam, k: int) -> int:
    """Number of k-step walks from ``eta`` to ``lam`` strictly inside ``chamber``."""
    eta, lam = as_point(eta), as_point(lam)
    _check_alcove_inputs(chamber, steps, eta, lam, k)
    total = 0
    for w in enumerate_elements(chamber, eta, lam, k, steps):
        c = free_count(steps, apply(w, lam, chamber) - eta, k)
        if c:
            total += w.sign * c
    return total


def circle_reduce(point: LatticePoint, m: int) -> LatticePoint:
    """Positions taken modulo the circle length ``m``, into ``[0, m)``."""
    return LatticePoint(tuple(c % (2 * m) for c in point.doubled))


def check_circle_start(eta: LatticePoint, m: int):
    x = eta.doubled
    if any(x[i] <= x[i + 1] for i in range(len(x) - 1)) or x[-1] <= x[0] - 2 * m:
        raise PreconditionError(
            f"eta={eta} must be strictly decreasing within a window of length {m}"
        )


def circle_lift(eta, lam, m: int) -> LatticePoint | None:
    """Lift circle positions ``lam`` into the window ``x1 > ... > xn > x1 - m``.

    The smallest reduced position and every label before it move up one
    revolution.  ``None`` means ``lam`` is not in the cyclic order of ``eta``, so
    no non-colliding walk connects them.
    """
    x = list(circle_reduce(as_point(lam), m).doubled)
    period = 2 * m
    s = 1 + min(range(len(x)), key=lambda i: x[i])
    for i in range(s):
        x[i] += period
    if any(x[i] <= x[i + 1] for i in range(len(x) - 1)) or x[-1] <= x[0] - period:
        return None
    return LatticePoint(tuple(x))


def _check_circle_inputs(m, steps: StepSet, eta: LatticePoint, lam: LatticePoint, k: int) -> int:
    if Fraction(m).denominator != 1 or m < 1:
        raise NotReflectableError(f"circle length must be a positive integer, got {m}")
    m = int(m)
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    if not (eta.n == lam.n == steps.n):
        raise PreconditionError("dimension mismatch between steps and configurations")
    for name, p in (("eta", eta), ("lambda", lam)):
        if not steps.admits(p):
            raise PreconditionError(f"{name}={p} is not on a lattice of {steps.kind.value} steps")
    check_circle_start(eta, m)
    reduced = circle_reduce(lam, m).doubled
    if len(set(reduced)) != len(reduced):
        raise PreconditionError(f"lambda={lam} has two particles at the same position")
    return m


def count_circle(m: int, n: int, steps: StepSet, eta, lam, k: int) -> int:
    """Labelled non-colliding walks of ``n`` particles on a circle of length ``m``.

    Particle i goes from ``eta[i]`` to ``lam[i]`` (taken mod m).  ``eta`` must be
    strictly decreasing within a window of length ``m``.
    """
    eta, lam = as_point(eta), as_point(lam)
    if eta.n != n:
        raise PreconditionError(f"expected {n} particles, got {eta.n}")
    m = _check_circle_inputs(m, steps, eta, lam, k)
    if circle_lift(eta, lam, m) is None:
        return 0
    x = circle_reduce(lam, m).doubled
    y = eta.doubled
    s = 1 + min(range(n), key=lambda i: x[i])  # 1-based index of the smallest end position
    reach = k * steps.reach_doubled
    T = 2 * m
    total = 0
    for sigma in itertools.permutations(range(n)):
        sign = permutation_sign(sigma)
        ranges = []
        for i in range(n):
            offset = x[sigma[i]] - y[i]
            ranges.append(range(-((reach + offset) // T), (reach - offset) // T + 1))
        for t in itertools.product(*ranges):
            if (sum(t) - s) % n:
                continue
            gamma = LatticePoint(tuple(x[sigma[i]] + T * t[i] - y[i] for i in range(n)))
            c = free_count(steps, gamma, k)
            if c:
                total += sign * c
    return total


def count_hyperplane(m: int, n: int, steps: StepSet, eta, lam, k: int) -> int:
    """Walks in the mA~_{n-1} alcove projected to the plane sum(x) = 0.

    Sums the R^n counts over all endpoints ``lam + a*(1,...,1)`` with ``a`` an
    integer, which is the projected count when ``lam - eta - k/2`` is integral
    (diagonal steps) or always (coordinate and forward steps).
    """
    eta, lam = as_point(eta), as_point(lam)
    chamber = ChamberSpec(Family.AFFINE_A, n, m)
    reach = k * steps.reach_doubled
    diffs = [b - a for a, b in zip(eta.doubled, lam.doubled)]
    lo = (-reach - max(diffs)) // 2 - 1
    hi = (reach - min(diffs)) // 2 + 1
    return sum(count_alcove(chamber, steps, eta, lam.shifted(a), k) for a in range(lo, hi + 1))


def km_determinant(
    eta: Sequence,
    lam: Sequence,
    k: int,
    one_dim_counter: Callable[[Fraction, Fraction, int], int],
) -> int:
    """Karlin-McGregor determinant ``det[one_dim_counter(eta_i, lam_j, k)]``."""
    eta = [Fraction(v) for v in (eta.coords if isinstance(eta, LatticePoint) else eta)]
    lam = [Fraction(v) for v in (lam.coords if isinstance(lam, LatticePoint) else lam)]
    if len(eta) != len(lam):
        raise PreconditionError("eta and lambda differ in length")
    for name, v in (("eta", eta), ("lambda", lam)):
        if any(v[i] <= v[i + 1] for i in range(len(v) - 1)):
            raise PreconditionError(f"{name} must be strictly decreasing")
    matrix = [[one_dim_counter(a, b, k) for b in lam] for a in eta]
    return bareiss_det(matrix)
