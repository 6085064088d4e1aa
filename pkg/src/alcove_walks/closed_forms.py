"""Determinant formulas built from finite trigonometric sums.

Fixed-``k`` formulas (diagonal steps, gambler's ruin) return floats; the
coordinate-step formulas return the exponential generating function as an
:class:`ExpPoly`, from which ``expoly_extract`` reads off the ``k``-step count.
Forward steps and the A~ determinant sums are evaluated exactly.

Floating results are only trusted at desk scale; :func:`round_count` refuses
to round a value that is not close to an integer.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from fractions import Fraction

from ._linalg import bareiss_det, leibniz_det
from .errors import ConsistencyError, PreconditionError
from .expoly import MAX_DET_SIZE, ExpPoly, expoly_det
from .free_counts import binom
from .reflection import check_circle_start, circle_lift, circle_reduce, km_determinant
from .weyl_core import (
    ChamberSpec,
    Family,
    LatticePoint,
    StepKind,
    StepSet,
    as_point,
    in_interior,
)

__all__ = [
    "ROUNDING_TOL",
    "FLOAT_COUNT_LIMIT",
    "round_count",
    "gambler_first_passage",
    "gambler_position",
    "gambler_absorption",
    "periodic_binomial_sum",
    "periodic_bessel_expoly",
    "expoly_extract",
    "tcn_diag_count",
    "tcn_coord_expoly",
    "tbn_coord_expoly",
    "tdn_coord_expoly",
    "bn_dn_diag_count",
    "tan_forward_count",
    "tan_det_sum_counts",
    "circle_coord_expoly",
    "circle_diag_count",
    "tan_hyperplane_coord_expoly",
    "tan_hyperplane_diag_count",
    "closed_form_value",
    "closed_form_count",
    "closed_form_circle_value",
    "closed_form_circle_count",
    "closed_form_hyperplane_value",
    "closed_form_hyperplane_count",
]

ROUNDING_TOL = 1e-4
FLOAT_COUNT_LIMIT = 1e12
IMAG_TOL = 1e-9


def round_count(value, tol: float = ROUNDING_TOL) -> int:
    """Nearest integer to a real count; fails loudly if ``value`` is not near one."""
    value = complex(value)
    if abs(value.imag) > tol:
        raise ConsistencyError(f"count {value} has an imaginary part")
    nearest = round(value.real)
    if abs(value.real - nearest) > tol:
        raise ConsistencyError(f"count {value.real!r} is {abs(value.real - nearest):.3g} from an integer")
    return int(nearest)


# -- gambler's ruin ---------------------------------------------------------


def gambler_first_passage(N: int, eta: int, k: int) -> float:
    """Probability that the player starting with ``eta`` of ``N`` chips goes broke at bet ``k``."""
    if not 0 < eta < N:
        raise PreconditionError("need 0 < eta < N")
    if k < 1:
        raise PreconditionError("need k >= 1")
    total = 0.0
    for r in range(1, N):
        a = math.pi * r / N
        total += math.cos(a) ** (k - 1) * math.sin(a) * math.sin(eta * a)
    return total / N


def gambler_position(N: int, eta: int, lam: int, k: int) -> float:
    """Probability of holding ``lam`` chips after ``k`` bets with neither player broke."""
    if not (0 < eta < N and 0 < lam < N):
        raise PreconditionError("need 0 < eta, lambda < N")
    total = 0.0
    for r in range(1, N):
        a = math.pi * r / N
        total += math.cos(a) ** k * math.sin(lam * a) * math.sin(eta * a)
    return 2.0 * total / N


def gambler_absorption(N: int, eta: int, k: int) -> float:
    """Probability that the game ends at bet ``k`` (either player broke)."""
    return gambler_first_passage(N, eta, k) + gambler_first_passage(N, N - eta, k)


# -- periodic sums ------------------------------------------------------------


def periodic_binomial_sum(d, k: int, m) -> float:
    """Trigonometric form of ``sum_{j = d mod 2m} C(k, k/2 + j)`` (``d`` a half-integer)."""
    m = Fraction(m)
    if m < 1 or m.denominator != 1:
        raise PreconditionError("m must be a positive integer")
    period = 4 * int(m)
    s = 2 * Fraction(d)
    total = 0.0
    for r in range(period):
        total += math.cos(2 * math.pi * r * float(s) / period) * (2 * math.cos(2 * math.pi * r / period)) ** k
    return total / period


def periodic_bessel_expoly(s: int, m: int) -> ExpPoly:
    """``sum_{j = s mod 2m} I_j(2x)`` written as ``(1/2m) sum_r cos(2 pi r s/2m) e^{2x cos(2 pi r/2m)}``."""
    if m < 1:
        raise PreconditionError("m must be a positive integer")
    period = 2 * m
    return ExpPoly(
        (2 * math.cos(2 * math.pi * r / period), math.cos(2 * math.pi * r * s / period) / period)
        for r in range(period)
    )


def expoly_extract(f: ExpPoly, k: int):
    """``k!`` times the ``x^k`` coefficient: ``sum_j c_j a_j^k``."""
    return f.extract(k)


# -- interval-type determinants (C~, B~, D~) ----------------------------------


def _coords(point, n: int | None) -> tuple[list[float], LatticePoint]:
    p = as_point(point)
    if n is not None and p.n != n:
        raise PreconditionError(f"expected a point of dimension {n}, got {p.n}")
    return [float(c) for c in p.coords], p


def _angles(odd: bool, count: int) -> list[float]:
    # even: pi*r/(count/2) spacing; odd: shifted by half a step
    half = count / 2
    if odd:
        return [math.pi * (2 * r + 1) / (2 * half) for r in range(count)]
    return [math.pi * r / half for r in range(count)]


def _fixed_k_matrix(eta, lam, k: int, m: Fraction, fn, odd: bool) -> list[list[float]]:
    # (2^{k-1}/m) sum_{r<4m} fn(2 phi lam_j) fn(2 phi eta_i) cos^k(phi),
    # phi = pi r/2m (even) or pi (2r+1)/4m (odd)
    count = int(4 * m)
    phis = _angles(odd, count)
    scale = 2.0 ** (k - 1) / float(m)
    kernel = [math.cos(p) ** k for p in phis]
    return [
        [scale * sum(fn(2 * p * b) * fn(2 * p * a) * w for p, w in zip(phis, kernel)) for b in lam]
        for a in eta
    ]


def _egf_matrix(eta, lam, m: Fraction, fn, odd: bool, entry_scale: float = 1.0) -> list[list[ExpPoly]]:
    # (1/m) sum_{r<2m} fn(phi lam_j) fn(phi eta_i) exp(2x cos phi),
    # phi = pi r/m (even) or pi (2r+1)/2m (odd)
    count = int(2 * m)
    phis = _angles(odd, count)
    freqs = [2 * math.cos(p) for p in phis]
    scale = entry_scale / float(m)
    return [
        [ExpPoly((f, scale * fn(p * b) * fn(p * a)) for p, f in zip(phis, freqs)) for b in lam]
        for a in eta
    ]


def _det(matrix):
    return leibniz_det(matrix, 1.0) if len(matrix) <= MAX_DET_SIZE else _too_big(len(matrix))


def _too_big(n):
    raise PreconditionError(f"closed forms are limited to n <= {MAX_DET_SIZE}, got {n}")


def _integer_scale(m) -> Fraction:
    m = Fraction(m)
    if m.denominator != 1 or m < 1:
        raise PreconditionError(f"coordinate-step formulas need an integer m, got {m}")
    return m


def _diag_scale(m) -> Fraction:
    m = Fraction(m)
    if (2 * m).denominator != 1 or m <= 0:
        raise PreconditionError(f"m must be an integer or half-integer, got {m}")
    return m


def _check_interior(family: Family, eta: LatticePoint, lam: LatticePoint, m, diagonal: bool):
    chamber = ChamberSpec(family, eta.n, m)
    for name, p in (("eta", eta), ("lambda", lam)):
        if not in_interior(p, chamber):
            raise PreconditionError(f"{name}={p} is not in the interior of {chamber}")
        if not (p.has_uniform_parity() if diagonal else p.is_integral()):
            raise PreconditionError(f"{name}={p} is not on the step lattice")


def tcn_diag_count(eta, lam, k: int, m, n: int | None = None) -> float:
    """Diagonal-step walks in ``m > x1 > ... > xn > 0`` (before rounding)."""
    m = _diag_scale(m)
    (e, ep), (l, lp) = _coords(eta, n), _coords(lam, n)
    _check_interior(Family.AFFINE_C, ep, lp, m, diagonal=True)
    return _det(_fixed_k_matrix(e, l, k, m, math.sin, odd=False))


def tcn_coord_expoly(eta, lam, m, n: int | None = None) -> ExpPoly:
    """EGF of coordinate-step walks in ``m > x1 > ... > xn > 0``."""
    m = _integer_scale(m)
    (e, ep), (l, lp) = _coords(eta, n), _coords(lam, n)
    _check_interior(Family.AFFINE_C, ep, lp, m, diagonal=False)
    return expoly_det(_egf_matrix(e, l, m, math.sin, odd=False))


def tbn_coord_expoly(eta, lam, m, n: int | None = None) -> ExpPoly:
    """EGF of coordinate-step walks in the 2mB~_n alcove.

    Half the C~ determinant plus half the determinant with odd-multiple angles,
    which together keep only translations of even total.
    """
    m = _integer_scale(m)
    (e, ep), (l, lp) = _coords(eta, n), _coords(lam, n)
    _check_interior(Family.AFFINE_B, ep, lp, m, diagonal=False)
    even = expoly_det(_egf_matrix(e, l, m, math.sin, odd=False))
    odd = expoly_det(_egf_matrix(e, l, m, math.sin, odd=True))
    return (even + odd) * 0.5


def tdn_coord_expoly(eta, lam, m, n: int | None = None, *, fourth_scale: float = 1.0) -> ExpPoly:
    """EGF of coordinate-step walks in the 2mD~_n alcove.

    A quarter of four determinants: sine and cosine products, each with even
    and odd-multiple angles.  ``fourth_scale`` multiplies the entries of the
    cosine/odd determinant; the oracle confirms 1 (every entry carries ``1/m``).
    """
    m = _integer_scale(m)
    (e, ep), (l, lp) = _coords(eta, n), _coords(lam, n)
    _check_interior(Family.AFFINE_D, ep, lp, m, diagonal=False)
    total = ExpPoly()
    for fn, odd, scale in (
        (math.sin, False, 1.0),
        (math.sin, True, 1.0),
        (math.cos, False, 1.0),
        (math.cos, True, fourth_scale),
    ):
        total = total + expoly_det(_egf_matrix(e, l, m, fn, odd, scale))
    return total * 0.25


def bn_dn_diag_count(family, eta, lam, k: int, m, n: int | None = None) -> float:
    """Diagonal-step walks in the 2mB~_n or 2mD~_n alcove (before rounding); m may be a half-integer."""
    family = Family(family)
    if family not in (Family.AFFINE_B, Family.AFFINE_D):
        raise PreconditionError("bn_dn_diag_count handles btilde and dtilde only")
    m = _diag_scale(m)
    (e, ep), (l, lp) = _coords(eta, n), _coords(lam, n)
    _check_interior(family, ep, lp, m, diagonal=True)
    parts = [(math.sin, False), (math.sin, True)]
    if family is Family.AFFINE_D:
        parts += [(math.cos, False), (math.cos, True)]
    total = sum(_det(_fixed_k_matrix(e, l, k, m, fn, odd)) for fn, odd in parts)
    return total / len(parts)


# -- A~ in R^n ----------------------------------------------------------------


def _translation_vectors(n: int, bound: int):
    for t in itertools.product(range(-bound, bound + 1), repeat=n):
        if sum(t) == 0:
            yield t


def _integer_diffs(eta: LatticePoint, lam: LatticePoint) -> list[list[int]]:
    if not (eta.is_integral() and lam.is_integral()):
        raise PreconditionError("forward and coordinate steps need integer points")
    return [[(b - a) // 2 for b in lam.doubled] for a in eta.doubled]


def tan_forward_count(eta, lam, k: int, m, n: int | None = None) -> int:
    """Forward-step walks in ``x1 > ... > xn > x1 - m``, exactly.

    ``k! * sum_{sum t = 0} det[1/(m t_i + lam_j - eta_i)!]``; entries are
    scaled by ``k!`` so the determinant is an integer.
    """
    eta, lam = as_point(eta), as_point(lam)
    if n is not None and eta.n != n:
        raise PreconditionError(f"expected dimension {n}")
    m = _integer_scale(m)
    _check_interior(Family.AFFINE_A, eta, lam, m, diagonal=False)
    return _forward_det_sum(eta, lam, k, int(m))


def _forward_det_sum(eta: LatticePoint, lam: LatticePoint, k: int, m: int | None) -> int:
    diffs = _integer_diffs(eta, lam)
    n = eta.n
    if sum(diffs[i][i] for i in range(n)) != k:
        return 0
    fk = math.factorial(k)

    def entry(a):
        # any a > k forces a negative partner in the same permutation term
        return fk // math.factorial(a) if 0 <= a <= k else 0

    vectors = [(0,) * n] if m is None else _translation_vectors(n, -(-k // m) + 1)
    total = 0
    for t in vectors:
        total += bareiss_det([[entry((m or 0) * t[i] + d) for d in diffs[i]] for i in range(n)])
    # total = (k!)^n * sum det[1/a!]; the count is k! * sum det[1/a!]
    q, r = divmod(total, fk ** (n - 1))
    if r:
        raise ConsistencyError("forward determinant sum is not an integer multiple of k!^(n-1)")
    return q


def _series_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    size = len(a)
    out = [Fraction(0)] * size
    for i, x in enumerate(a):
        if x:
            for j in range(size - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


class _Series:
    __slots__ = ("c",)

    def __init__(self, c):
        self.c = c

    def __add__(self, other):
        return _Series([x + y for x, y in zip(self.c, other.c)])

    def __neg__(self):
        return _Series([-x for x in self.c])


def _bessel_series(order: int, size: int) -> _Series:
    # I_order(2x) = sum_t x^(2t+|order|) / (t! (t+|order|)!)
    a = abs(order)
    c = [Fraction(0)] * size
    t = 0
    while 2 * t + a < size:
        c[2 * t + a] = Fraction(1, math.factorial(t) * math.factorial(t + a))
        t += 1
    return _Series(c)


def tan_det_sum_counts(steps: StepSet, eta, lam, m, kmax: int) -> list[int]:
    """Counts for k = 0..kmax from ``sum_{sum t = 0} det[...]`` with translations ``m t_i``.

    Coordinate steps use the Bessel EGF ``det[I_{m t_i + lam_j - eta_i}(2x)]``
    as exact truncated power series; diagonal steps use
    ``det[C(k, k/2 + m t_i + lam_j - eta_i)]``; forward steps use the
    factorial determinant.  ``m=None`` drops the translations (finite A).
    """
    eta, lam = as_point(eta), as_point(lam)
    n = eta.n
    if steps.include_zero_step:
        raise PreconditionError("zero steps are not covered by the closed forms")
    mi = None if m is None else int(_integer_scale(m))
    if steps.kind is StepKind.FORWARD:
        return [_forward_det_sum(eta, lam, k, mi) for k in range(kmax + 1)]
    if steps.kind is StepKind.DIAGONAL:
        out = []
        for k in range(kmax + 1):
            bound = 0 if mi is None else -(-k // mi) + 1
            vectors = _translation_vectors(n, bound)
            total = 0
            for t in vectors:
                # k/2 + (m t_i + lam_j - eta_i), all doubled
                rows = [
                    [binom(k, Fraction(k + (mi or 0) * 2 * t[i] + b - a, 2)) for b in lam.doubled]
                    for i, a in enumerate(eta.doubled)
                ]
                total += bareiss_det(rows)
            out.append(total)
        return out
    diffs = _integer_diffs(eta, lam)
    size = kmax + 1
    bound = 0 if mi is None else -(-kmax // mi) + 1
    acc = [Fraction(0)] * size
    one = _Series([Fraction(1)] + [Fraction(0)] * kmax)
    for t in _translation_vectors(n, bound):
        shifted = [[(mi or 0) * t[i] + d for d in diffs[i]] for i in range(n)]
        if any(all(abs(v) > kmax for v in row) for row in shifted):
            continue
        matrix = [[_bessel_series(v, size) for v in row] for row in shifted]
        det = leibniz_det(matrix, one, lambda a, b: _Series(_series_mul(a.c, b.c)))
        acc = [x + y for x, y in zip(acc, det.c)]
    counts = []
    for k, c in enumerate(acc):
        value = c * math.factorial(k)
        if value.denominator != 1:
            raise ConsistencyError("Bessel determinant sum produced a non-integer count")
        counts.append(int(value))
    return counts


# -- circle and the A~ hyperplane -----------------------------------------------


def _circle_setup(eta, lam, m, n):
    eta, lam = as_point(eta), as_point(lam)
    if n is not None and eta.n != n:
        raise PreconditionError(f"expected {n} particles")
    m = int(_integer_scale(m))
    check_circle_start(eta, m)
    red = circle_reduce(lam, m)
    if len(set(red.doubled)) != red.n:
        raise PreconditionError(f"lambda={lam} has two particles at the same position")
    s = 1 + min(range(red.n), key=lambda i: red.doubled[i])
    return eta, red, m, s


def circle_coord_expoly(eta, lam, m, n: int | None = None) -> ExpPoly:
    """EGF of labelled non-colliding walks on a circle, one particle moving +-1 per step.

    ``(1/n) sum_u zeta^{-u m s} det[(1/m) sum_{r<m} zeta^{-(u+nr)(lam_j-eta_i)}
    exp(2x cos(2 pi (u+nr)/mn))]`` with ``zeta = e^{2 pi i/mn}``.
    """
    eta, red, m, s = _circle_setup(eta, lam, m, n)
    n = eta.n
    if circle_lift(eta, red, m) is None:
        return ExpPoly()
    if not (eta.is_integral() and red.is_integral()):
        raise PreconditionError("coordinate steps need integer positions")
    mn = m * n
    zeta = lambda p: cmath.exp(2j * math.pi * (p % mn) / mn)  # noqa: E731
    total = ExpPoly()
    for u in range(n):
        matrix = []
        for a in eta.doubled:
            row = []
            for b in red.doubled:
                v = (b - a) // 2
                row.append(
                    ExpPoly(
                        (2 * math.cos(2 * math.pi * (u + n * r) / mn), zeta(-(u + n * r) * v) / m)
                        for r in range(m)
                    )
                )
            matrix.append(row)
        total = total + expoly_det(matrix) * zeta(-u * m * s)
    return (total / n).real(IMAG_TOL)


def circle_diag_count(eta, lam, k: int, m, n: int | None = None) -> float:
    """Labelled non-colliding circle walks, every particle moving +-1/2 each step (before rounding).

    ``(1/n) sum_u zeta^{-2ums} det[(2^{k-1}/m) sum_{r<2m} zeta^{-2(u+nr)(lam_j-eta_i)}
    cos^k(pi (u+nr)/mn)]`` with ``zeta = e^{2 pi i/2mn}``.
    """
    eta, red, m, s = _circle_setup(eta, lam, m, n)
    n = eta.n
    if circle_lift(eta, red, m) is None:
        return 0.0
    if not (eta.has_uniform_parity() and red.has_uniform_parity()):
        raise PreconditionError("diagonal steps need all-integer or all-half-integer positions")
    period = 2 * m * n
    zeta = lambda p: cmath.exp(2j * math.pi * (p % period) / period)  # noqa: E731
    scale = 2.0 ** (k - 1) / m
    total = 0j
    for u in range(n):
        kernel = [math.cos(math.pi * (u + n * r) / (m * n)) ** k for r in range(2 * m)]
        matrix = [
            [
                scale * sum(zeta(-(u + n * r) * (b - a)) * kernel[r] for r in range(2 * m))
                for b in red.doubled
            ]
            for a in eta.doubled
        ]
        total += zeta(-2 * u * m * s) * _det(matrix)
    total /= n
    if abs(total.imag) >= IMAG_TOL * max(1.0, abs(total.real)):
        raise ConsistencyError(f"residual imaginary part {total.imag:.3g} in circle count")
    return total.real


def _hyperplane_setup(eta, lam, m, n, diagonal: bool):
    eta, lam = as_point(eta), as_point(lam)
    if n is not None and eta.n != n:
        raise PreconditionError(f"expected dimension {n}")
    m = int(_integer_scale(m))
    _check_interior(Family.AFFINE_A, eta, lam, m, diagonal=diagonal)
    return eta, lam, m


def tan_hyperplane_coord_expoly(eta, lam, m, n: int | None = None) -> ExpPoly:
    """EGF of walks in mA~_{n-1} projected to ``sum x = 0``, with steps the projections of +-e_i."""
    eta, lam, m = _hyperplane_setup(eta, lam, m, n, diagonal=False)
    total = ExpPoly()
    for c in range(m):
        total = total + circle_coord_expoly(eta, lam.shifted(-c), m)
    return total


def tan_hyperplane_diag_count(eta, lam, k: int, m, n: int | None = None) -> float:
    """Projected diagonal-step walks in mA~_{n-1} (zero step with multiplicity 2), before rounding.

    Endpoints ``lam + c`` are summed over integer ``c`` only, so choose ``lam``
    with ``lam_i - eta_i - k/2`` integral; otherwise the result is zero.
    """
    eta, lam, m = _hyperplane_setup(eta, lam, m, n, diagonal=True)
    return sum(circle_diag_count(eta, lam.shifted(-c), k, m) for c in range(m))


# -- dispatch used by the CLI and the verification grid -------------------------

_SERIES_DEPTH = 10


def _checked(value) -> int | None:
    if value is None:
        return None
    if isinstance(value, int):
        return value
    if abs(value) >= FLOAT_COUNT_LIMIT:
        return None
    return round_count(value)


@functools.lru_cache(maxsize=4096)
def _alcove_egf(family: Family, eta: LatticePoint, lam: LatticePoint, m: Fraction, fourth_scale: float) -> ExpPoly:
    if family is Family.AFFINE_C:
        return tcn_coord_expoly(eta, lam, m)
    if family is Family.AFFINE_B:
        return tbn_coord_expoly(eta, lam, m)
    return tdn_coord_expoly(eta, lam, m, fourth_scale=fourth_scale)


@functools.lru_cache(maxsize=4096)
def _type_a_counts(steps: StepSet, eta: LatticePoint, lam: LatticePoint, m, depth: int) -> tuple[int, ...]:
    return tuple(tan_det_sum_counts(steps, eta, lam, m, depth))


def _type_a_count(steps, eta, lam, m, k):
    depth = max(k, _SERIES_DEPTH)
    return _type_a_counts(steps, eta, lam, m, depth)[k]


@functools.lru_cache(maxsize=4096)
def _circle_egf(eta: LatticePoint, lam: LatticePoint, m: int) -> ExpPoly:
    return circle_coord_expoly(eta, lam, m)


def closed_form_value(chamber: ChamberSpec, steps: StepSet, eta, lam, k: int, *, fourth_scale: float = 1.0):
    """The closed-form count before rounding, or ``None`` if no formula applies.

    Exact routes (forward steps, A-type determinant sums) return ``int``;
    trigonometric routes return ``float``.
    """
    eta, lam = as_point(eta), as_point(lam)
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    if steps.include_zero_step or chamber.n > MAX_DET_SIZE:
        return None
    fam, kind, m = chamber.family, steps.kind, chamber.m
    if fam is Family.FINITE_A:
        if kind is StepKind.DIAGONAL:
            return km_determinant(eta, lam, k, lambda a, b, kk: binom(kk, Fraction(kk, 2) + (b - a)))
        return _type_a_count(steps, eta, lam, None, k)
    if fam is Family.AFFINE_A:
        if kind is StepKind.FORWARD:
            return tan_forward_count(eta, lam, k, m)
        if m.denominator != 1:
            return None
        return _type_a_count(steps, eta, lam, m, k)
    if kind is StepKind.FORWARD:
        return None
    if kind is StepKind.DIAGONAL:
        if fam is Family.AFFINE_C:
            return tcn_diag_count(eta, lam, k, m)
        return bn_dn_diag_count(fam, eta, lam, k, m)
    if m.denominator != 1:
        return None
    return _alcove_egf(fam, eta, lam, m, float(fourth_scale)).extract(k)


def closed_form_count(chamber: ChamberSpec, steps: StepSet, eta, lam, k: int, *, fourth_scale: float = 1.0) -> int | None:
    """Rounded closed-form count; ``None`` when unavailable or too large to validate in floating point."""
    return _checked(closed_form_value(chamber, steps, eta, lam, k, fourth_scale=fourth_scale))


def closed_form_circle_value(m, n: int, steps: StepSet, eta, lam, k: int):
    """Closed-form circle count before rounding, or ``None``."""
    eta, lam = as_point(eta), as_point(lam)
    if steps.include_zero_step or n > MAX_DET_SIZE:
        return None
    if steps.kind is StepKind.COORDINATE:
        return _circle_egf(eta, lam, int(_integer_scale(m))).extract(k)
    if steps.kind is StepKind.DIAGONAL:
        return circle_diag_count(eta, lam, k, m, n)
    # forward steps: lift to the A~ window and use the exact determinant sum
    eta, red, m, s = _circle_setup(eta, lam, m, n)
    lifted = circle_lift(eta, red, m)
    if lifted is None:
        return 0
    gap = k - sum(b - a for a, b in zip(eta.doubled, lifted.doubled)) // 2
    if gap % (m * n):
        return 0
    return tan_forward_count(eta, lifted.shifted(gap // n), k, m)


def closed_form_circle_count(m, n: int, steps: StepSet, eta, lam, k: int) -> int | None:
    return _checked(closed_form_circle_value(m, n, steps, eta, lam, k))


def closed_form_hyperplane_value(m, n: int, steps: StepSet, eta, lam, k: int):
    eta, lam = as_point(eta), as_point(lam)
    if steps.include_zero_step or n > MAX_DET_SIZE:
        return None
    if steps.kind is StepKind.COORDINATE:
        return tan_hyperplane_coord_expoly(eta, lam, m, n).extract(k)
    if steps.kind is StepKind.DIAGONAL:
        return tan_hyperplane_diag_count(eta, lam, k, m, n)
    gap = k - sum(b - a for a, b in zip(eta.doubled, lam.doubled)) // 2
    if gap % n:
        return 0
    return tan_forward_count(eta, lam.shifted(gap // n), k, m)


def closed_form_hyperplane_count(m, n: int, steps: StepSet, eta, lam, k: int) -> int | None:
    return _checked(closed_form_hyperplane_value(m, n, steps, eta, lam, k))
