"""Brute-force ground truth for the walk counts.

Nothing here touches the group enumeration or the unconstrained counters:
confinement is tested with the chamber inequalities written out directly, and
walks are built one step at a time.  Coordinates are doubled integers, like
everywhere else in the package.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Callable

from .errors import PreconditionError, ResourceError
from .weyl_core import ChamberSpec, Family, StepKind, StepSet, as_point

__all__ = [
    "DEFAULT_STATE_CAP",
    "DEFAULT_SEQUENCE_CAP",
    "dp_count",
    "dp_distribution",
    "circle_dp_count",
    "circle_dp_distribution",
    "hyperplane_dp_count",
    "exhaustive_count",
    "chamber_predicate",
]

DEFAULT_STATE_CAP = 10**7
DEFAULT_SEQUENCE_CAP = 5 * 10**6


def chamber_predicate(chamber: ChamberSpec) -> Callable[[tuple[int, ...]], bool]:
    """Strict inequalities of the chamber on doubled coordinates."""
    n = chamber.n
    fam = chamber.family
    m2 = None if chamber.m is None else int(2 * chamber.m)  # doubled scale

    def decreasing(x):
        return all(x[i] > x[i + 1] for i in range(n - 1))

    if fam is Family.AFFINE_C:
        return lambda x: decreasing(x) and x[-1] > 0 and x[0] < m2
    if fam is Family.AFFINE_B:
        if n == 1:
            return lambda x: 0 < x[0] < 2 * m2
        return lambda x: decreasing(x) and x[-1] > 0 and x[0] + x[1] < 2 * m2
    if fam is Family.AFFINE_D:
        if n == 2:
            return lambda x: x[0] > abs(x[1]) and x[0] + x[1] < 2 * m2 and x[0] - x[1] < 2 * m2
        return lambda x: decreasing(x) and x[-2] > -x[-1] and x[0] + x[1] < 2 * m2
    if fam is Family.AFFINE_A:
        return lambda x: decreasing(x) and x[-1] > x[0] - m2
    return decreasing


def _moves(kind: StepKind, n: int, zero: bool) -> list[tuple[int, ...]]:
    if kind is StepKind.COORDINATE:
        out = []
        for i in range(n):
            for s in (2, -2):
                v = [0] * n
                v[i] = s
                out.append(tuple(v))
    elif kind is StepKind.DIAGONAL:
        out = [tuple(v) for v in itertools.product((1, -1), repeat=n)]
    else:
        out = []
        for i in range(n):
            v = [0] * n
            v[i] = 2
            out.append(tuple(v))
    if zero:
        out.append((0,) * n)
    return out


def dp_distribution(
    chamber: ChamberSpec,
    steps: StepSet,
    eta,
    k: int,
    state_cap: int = DEFAULT_STATE_CAP,
) -> list[dict[tuple[int, ...], int]]:
    """Walk counts from ``eta`` to every interior point after 0..k steps.

    Element ``j`` of the result maps doubled endpoints to the number of
    ``j``-step confined walks.
    """
    eta = as_point(eta)
    inside = chamber_predicate(chamber)
    if not inside(eta.doubled):
        raise PreconditionError(f"eta={eta} is not in the interior of {chamber}")
    moves = _moves(steps.kind, chamber.n, steps.include_zero_step)
    layers = [{eta.doubled: 1}]
    work = 0
    for _ in range(k):
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for p, c in layers[-1].items():
            for v in moves:
                q = tuple(a + b for a, b in zip(p, v))
                if inside(q):
                    nxt[q] += c
        work += len(nxt)
        if work > state_cap:
            raise ResourceError(f"DP exceeded the state cap of {state_cap}")
        layers.append(dict(nxt))
    return layers


def dp_count(chamber: ChamberSpec, steps: StepSet, eta, lam, k: int, state_cap: int = DEFAULT_STATE_CAP) -> int:
    """Confined walk count by forward dynamic programming over interior points."""
    lam = as_point(lam)
    if not chamber_predicate(chamber)(lam.doubled):
        raise PreconditionError(f"lambda={lam} is not in the interior of {chamber}")
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    return dp_distribution(chamber, steps, eta, k, state_cap)[k].get(lam.doubled, 0)


def hyperplane_dp_count(m: int, n: int, steps: StepSet, eta, lam, k: int) -> int:
    """Walks in the A~ alcove ending anywhere on ``lam + a*(1,...,1)``, ``a`` an integer."""
    chamber = ChamberSpec(Family.AFFINE_A, n, m)
    lam = as_point(lam)
    layer = dp_distribution(chamber, steps, eta, k)[k]
    total = 0
    for p, c in layer.items():
        d = {a - b for a, b in zip(p, lam.doubled)}
        if len(d) == 1 and d.pop() % 2 == 0:
            total += c
    return total


def exhaustive_count(
    chamber: ChamberSpec,
    steps: StepSet,
    eta,
    lam,
    k: int,
    cap: int = DEFAULT_SEQUENCE_CAP,
) -> int:
    """Try every step sequence of length ``k`` and keep the confined ones ending at ``lam``."""
    eta, lam = as_point(eta), as_point(lam)
    moves = _moves(steps.kind, chamber.n, steps.include_zero_step)
    if len(moves) ** k > cap:
        raise ResourceError(f"{len(moves)}^{k} sequences exceed the cap of {cap}")
    inside = chamber_predicate(chamber)
    if not inside(eta.doubled):
        raise PreconditionError(f"eta={eta} is not in the interior of {chamber}")
    total = 0
    for seq in itertools.product(moves, repeat=k):
        p = eta.doubled
        for v in seq:
            p = tuple(a + b for a, b in zip(p, v))
            if not inside(p):
                break
        else:
            total += p == lam.doubled
    return total


def circle_dp_distribution(
    m: int,
    n: int,
    steps: StepSet,
    eta,
    k: int,
    state_cap: int = DEFAULT_STATE_CAP,
) -> list[dict[tuple[int, ...], int]]:
    """Labelled configurations on a circle of length ``m`` after 0..k steps, collisions forbidden."""
    eta = as_point(eta)
    period = 2 * int(m)
    start = tuple(c % period for c in eta.doubled)
    if len(set(start)) != n or eta.n != n:
        raise PreconditionError(f"eta={eta} is not {n} distinct positions on the circle")
    moves = _moves(steps.kind, n, steps.include_zero_step)
    layers = [{start: 1}]
    work = 0
    for _ in range(k):
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for p, c in layers[-1].items():
            for v in moves:
                q = tuple((a + b) % period for a, b in zip(p, v))
                if len(set(q)) == n:
                    nxt[q] += c
        work += len(nxt)
        if work > state_cap:
            raise ResourceError(f"circle DP exceeded the state cap of {state_cap}")
        layers.append(dict(nxt))
    return layers


def circle_dp_count(m: int, n: int, steps: StepSet, eta, lam, k: int, state_cap: int = DEFAULT_STATE_CAP) -> int:
    """Labelled non-colliding circle walks by dynamic programming."""
    lam = as_point(lam)
    end = tuple(c % (2 * int(m)) for c in lam.doubled)
    if len(set(end)) != n:
        raise PreconditionError(f"lambda={lam} is not {n} distinct positions on the circle")
    return circle_dp_distribution(m, n, steps, eta, k, state_cap)[k].get(end, 0)
