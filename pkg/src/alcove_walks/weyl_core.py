"""Lattice points, step sets, alcoves and the affine Weyl group actions on them.

Coordinates are stored doubled so that half-integer points (diagonal steps,
half-integer scales) stay exact integers.  A chamber is described by a list of
walls ``(alpha, x) > 0`` (linear) or ``(alpha, x) < level`` (affine); the same
list drives the interior test and the reflectability classifier.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import PreconditionError, UnsupportedFamilyError

__all__ = [
    "Family",
    "StepKind",
    "LatticePoint",
    "StepSet",
    "ChamberSpec",
    "SignedGroupElement",
    "Reflectability",
    "Wall",
    "as_point",
    "parse_scale",
    "parse_family",
    "apply",
    "in_interior",
    "enumerate_elements",
    "is_reflectable",
    "interior_points",
    "permutation_sign",
    "coweight_catalog",
]


class Family(str, Enum):
    AFFINE_A = "atilde"
    AFFINE_B = "btilde"
    AFFINE_C = "ctilde"
    AFFINE_D = "dtilde"
    FINITE_A = "finite-a"


class StepKind(str, Enum):
    COORDINATE = "coord"
    DIAGONAL = "diag"
    FORWARD = "forward"


_EXCEPTIONAL = {"E6", "E7", "E8", "F4", "G2"}


def parse_family(name: str | Family) -> Family:
    """Map a family name to :class:`Family`, rejecting exceptional types."""
    if isinstance(name, Family):
        return name
    key = str(name).strip()
    if key.upper() in _EXCEPTIONAL or key.upper().rstrip("~") in _EXCEPTIONAL:
        raise UnsupportedFamilyError(f"unsupported family: {key}")
    try:
        return Family(key.lower())
    except ValueError:
        raise UnsupportedFamilyError(f"unsupported family: {key}") from None


def _half_integer(value, what: str) -> Fraction:
    try:
        frac = Fraction(str(value).strip()) if isinstance(value, str) else Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise PreconditionError(f"{what} must be an integer or half-integer, got {value!r}") from None
    if (2 * frac).denominator != 1:
        raise PreconditionError(f"{what} must be an integer or half-integer, got {value!r}")
    return frac


def parse_scale(value) -> Fraction:
    """Parse an alcove scale ``m`` (``3``, ``"5/2"``, ``2.5``)."""
    m = _half_integer(value, "scale m")
    if m <= 0:
        raise PreconditionError(f"scale m must be positive, got {value!r}")
    return m


@dataclass(frozen=True)
class LatticePoint:
    """A point of R^n whose coordinates are integers or half-integers.

    ``doubled`` holds twice each coordinate.
    """

    doubled: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "doubled", tuple(int(c) for c in self.doubled))

    @classmethod
    def of(cls, values: Iterable) -> LatticePoint:
        return cls(tuple(int(2 * _half_integer(v, "coordinate")) for v in values))

    @property
    def n(self) -> int:
        return len(self.doubled)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.doubled)

    def is_integral(self) -> bool:
        return all(c % 2 == 0 for c in self.doubled)

    def has_uniform_parity(self) -> bool:
        return len({c % 2 for c in self.doubled}) <= 1

    def __add__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(tuple(a + b for a, b in zip(self.doubled, other.doubled)))

    def __sub__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(tuple(a - b for a, b in zip(self.doubled, other.doubled)))

    def shifted(self, amount) -> LatticePoint:
        """Translate every coordinate by ``amount``."""
        d = int(2 * _half_integer(amount, "shift"))
        return LatticePoint(tuple(c + d for c in self.doubled))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def as_point(value) -> LatticePoint:
    if isinstance(value, LatticePoint):
        return value
    return LatticePoint.of(value)


@dataclass(frozen=True)
class StepSet:
    kind: StepKind
    n: int
    include_zero_step: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", StepKind(self.kind))
        if self.n < 1:
            raise PreconditionError("step set dimension must be positive")

    @cached_property
    def vectors(self) -> tuple[tuple[int, ...], ...]:
        """The steps, in doubled coordinates."""
        n = self.n
        if self.kind is StepKind.COORDINATE:
            out = [tuple(s if j == i else 0 for j in range(n)) for i in range(n) for s in (2, -2)]
        elif self.kind is StepKind.DIAGONAL:
            out = list(itertools.product((1, -1), repeat=n))
        else:
            out = [tuple(2 if j == i else 0 for j in range(n)) for i in range(n)]
        if self.include_zero_step:
            out.append((0,) * n)
        return tuple(out)

    @property
    def reach_doubled(self) -> int:
        """Largest per-coordinate move of one step, doubled."""
        return 1 if self.kind is StepKind.DIAGONAL else 2

    def __len__(self):
        return len(self.vectors)

    def admits(self, point: LatticePoint) -> bool:
        """True if ``point`` lies on a lattice this step set can walk on."""
        if self.kind is StepKind.DIAGONAL:
            return point.has_uniform_parity()
        return point.is_integral()


class Wall(NamedTuple):
    root: tuple[int, ...]
    level: Fraction | None  # None: linear wall (alpha, x) > 0
    name: str


def _root_name(root: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(root):
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}e{i + 1}")
    return "".join(parts)


def _unit(n: int, *pairs: tuple[int, int]) -> tuple[int, ...]:
    v = [0] * n
    for i, c in pairs:
        v[i] += c
    return tuple(v)


@dataclass(frozen=True)
class ChamberSpec:
    """An alcove of a rescaled classical affine Weyl group, or the type-A Weyl chamber.

    ``m`` is the scale: C~ is ``m > x1 > ... > xn > 0``, A~ is
    ``x1 > ... > xn > x1 - m``; B~ and D~ are cut by ``x1 + x2 < 2m``.
    """

    family: Family
    n: int
    m: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", parse_family(self.family))
        if self.n < 1:
            raise PreconditionError("dimension n must be positive")
        if self.family is Family.AFFINE_D and self.n < 2:
            raise PreconditionError("D~_n needs n >= 2 (D_1 has no roots)")
        if self.family is Family.FINITE_A:
            object.__setattr__(self, "m", None)
        else:
            if self.m is None:
                raise PreconditionError(f"{self.family.value} needs a scale m")
            object.__setattr__(self, "m", parse_scale(self.m))

    @property
    def is_affine(self) -> bool:
        return self.family is not Family.FINITE_A

    @property
    def is_bounded(self) -> bool:
        return self.family in (Family.AFFINE_B, Family.AFFINE_C, Family.AFFINE_D)

    @property
    def has_sign_changes(self) -> bool:
        return self.family in (Family.AFFINE_B, Family.AFFINE_C, Family.AFFINE_D)

    @property
    def translation_unit_doubled(self) -> int:
        """Translation step T (doubled): 2m for B~/C~/D~, m for A~, 0 for finite A."""
        if self.family is Family.FINITE_A:
            return 0
        if self.family is Family.AFFINE_A:
            return int(2 * self.m)
        return int(4 * self.m)

    @cached_property
    def walls(self) -> tuple[Wall, ...]:
        n, m, fam = self.n, self.m, self.family
        walls = [Wall(_unit(n, (i, 1), (i + 1, -1)), None, "") for i in range(n - 1)]
        if fam in (Family.AFFINE_C, Family.AFFINE_B):
            walls.append(Wall(_unit(n, (n - 1, 1)), None, ""))
        if fam is Family.AFFINE_D:
            walls.append(Wall(_unit(n, (n - 2, 1), (n - 1, 1)), None, ""))
        if fam is Family.AFFINE_C:
            walls.append(Wall(_unit(n, (0, 1)), m, ""))
        elif fam is Family.AFFINE_B:
            if n == 1:
                walls.append(Wall((1,), 2 * m, ""))
            else:
                walls.append(Wall(_unit(n, (0, 1), (1, 1)), 2 * m, ""))
        elif fam is Family.AFFINE_D:
            walls.append(Wall(_unit(n, (0, 1), (1, 1)), 2 * m, ""))
            if n == 2:
                # D_2 = A_1 x A_1 is reducible: each factor carries an affine wall
                walls.append(Wall((1, -1), 2 * m, ""))
        elif fam is Family.AFFINE_A and n >= 2:
            walls.append(Wall(_unit(n, (0, 1), (n - 1, -1)), m, ""))
        named = []
        for w in walls:
            rn = _root_name(w.root)
            named.append(w._replace(name=f"{rn} = {w.level}" if w.level is not None else f"{rn} = 0"))
        return tuple(named)

    def translation_allowed(self, t: Sequence[int]) -> bool:
        fam = self.family
        if fam is Family.FINITE_A:
            return not any(t)
        if fam is Family.AFFINE_A:
            return sum(t) == 0
        if fam in (Family.AFFINE_B, Family.AFFINE_D):
            return sum(t) % 2 == 0
        return True

    def signs_allowed(self, epsilon: Sequence[int]) -> bool:
        if not self.has_sign_changes:
            return all(e == 1 for e in epsilon)
        if self.family is Family.AFFINE_D:
            return math.prod(epsilon) == 1
        return True

    def sign_vectors(self) -> list[tuple[int, ...]]:
        if not self.has_sign_changes:
            return [(1,) * self.n]
        return [e for e in itertools.product((1, -1), repeat=self.n) if self.signs_allowed(e)]

    def __str__(self):
        m = "" if self.m is None else f" m={self.m}"
        return f"{self.family.value} n={self.n}{m}"


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True, order=True)
class SignedGroupElement:
    """``x -> (eps_i * x_{sigma(i)} + T * t_i)_i`` with ``sigma`` 0-based."""

    t: tuple[int, ...]
    epsilon: tuple[int, ...]
    sigma: tuple[int, ...]
    sign: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(self.t))
        object.__setattr__(self, "epsilon", tuple(self.epsilon))
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "sign", permutation_sign(self.sigma) * math.prod(self.epsilon))

    @classmethod
    def identity(cls, n: int) -> SignedGroupElement:
        return cls((0,) * n, (1,) * n, tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.sigma)

    def is_identity(self) -> bool:
        return self == SignedGroupElement.identity(self.n)

    def valid_for(self, chamber: ChamberSpec) -> bool:
        return (
            self.n == chamber.n
            and sorted(self.sigma) == list(range(self.n))
            and all(e in (1, -1) for e in self.epsilon)
            and chamber.signs_allowed(self.epsilon)
            and chamber.translation_allowed(self.t)
        )

    def compose(self, other: SignedGroupElement, chamber: ChamberSpec) -> SignedGroupElement:
        """The element acting as ``self`` after ``other``."""
        T = chamber.translation_unit_doubled
        sigma = tuple(other.sigma[self.sigma[i]] for i in range(self.n))
        eps = tuple(self.epsilon[i] * other.epsilon[self.sigma[i]] for i in range(self.n))
        shift = [self.epsilon[i] * other.t[self.sigma[i]] * T + self.t[i] * T for i in range(self.n)]
        t = tuple(s // T if T else 0 for s in shift)
        return SignedGroupElement(t, eps, sigma)


def apply(element: SignedGroupElement, point, chamber: ChamberSpec) -> LatticePoint:
    """Image of ``point`` under ``element``: coordinates ``eps_i*x_{sigma(i)} + T*t_i``."""
    point = as_point(point)
    if point.n != chamber.n or element.n != chamber.n:
        raise PreconditionError(f"dimension mismatch: point has n={point.n}, chamber n={chamber.n}")
    T = chamber.translation_unit_doubled
    x = point.doubled
    return LatticePoint(
        tuple(element.epsilon[i] * x[element.sigma[i]] + T * element.t[i] for i in range(chamber.n))
    )


def _dot(root: Sequence[int], doubled: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(root, doubled))


def in_interior(point, chamber: ChamberSpec) -> bool:
    point = as_point(point)
    if point.n != chamber.n:
        raise PreconditionError(f"dimension mismatch: point has n={point.n}, chamber n={chamber.n}")
    x = point.doubled
    for wall in chamber.walls:
        value = _dot(wall.root, x)
        if wall.level is None:
            if value <= 0:
                return False
        elif value >= 2 * wall.level:
            return False
    return True


def _translation_range(offset: int, reach: int, T: int) -> range:
    # t with |offset + T*t| <= reach, all in doubled units
    lo = -((reach + offset) // T)
    hi = (reach - offset) // T
    return range(lo, hi + 1)


def enumerate_elements(
    chamber: ChamberSpec,
    eta,
    lam,
    k: int,
    steps: StepSet | None = None,
) -> Iterator[SignedGroupElement]:
    """Group elements ``w`` whose displacement ``w(lam) - eta`` is within ``k`` steps' reach.

    Every omitted element has ``max_i |(w(lam) - eta)_i| > k * s_max`` (``s_max = 1``
    unless ``steps`` says otherwise), so its unconstrained count vanishes.
    Yields in lexicographic order of ``(t, epsilon, sigma)``.
    """
    eta, lam = as_point(eta), as_point(lam)
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    n = chamber.n
    if eta.n != n or lam.n != n:
        raise PreconditionError("dimension mismatch between points and chamber")
    reach = k * (steps.reach_doubled if steps is not None else 2)
    T = chamber.translation_unit_doubled
    x, y = lam.doubled, eta.doubled

    found = []
    for sigma in itertools.permutations(range(n)):
        for eps in chamber.sign_vectors():
            ranges = []
            for i in range(n):
                offset = eps[i] * x[sigma[i]] - y[i]
                if T == 0:
                    ranges.append(range(0, 1) if abs(offset) <= reach else range(0))
                else:
                    ranges.append(_translation_range(offset, reach, T))
            for t in itertools.product(*ranges):
                if chamber.translation_allowed(t):
                    found.append(SignedGroupElement(t, eps, sigma))
    found.sort()
    return iter(found)


@dataclass(frozen=True)
class Reflectability:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _reflect(root: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    norm = sum(a * a for a in root)
    coef = Fraction(2 * _dot(root, v), norm)
    out = [Fraction(c) - coef * a for c, a in zip(v, root)]
    if any(c.denominator != 1 for c in out):
        raise AssertionError("simple reflection left the doubled lattice")
    return tuple(int(c) for c in out)


def is_reflectable(steps: StepSet, chamber: ChamberSpec, eta=None) -> Reflectability:
    """Check the reflectability conditions for ``steps`` in ``chamber``.

    The steps must be symmetric under the finite Weyl group; for every wall
    ``(alpha, x) = level`` the step inner products with ``alpha`` must take only
    the values ``0, +-k``, the lattice through ``eta`` (origin by default) must
    have ``(alpha, x)`` in ``k*Z``, and an affine level must itself lie in ``k*Z``.
    """
    if steps.n != chamber.n:
        return Reflectability(False, f"step set has n={steps.n}, chamber has n={chamber.n}")
    base = as_point(eta).doubled if eta is not None else (0,) * chamber.n
    if len(base) != chamber.n:
        return Reflectability(False, "starting point has the wrong dimension")
    vectors = set(steps.vectors)
    for wall in chamber.walls:
        if wall.level is None and set(_reflect(wall.root, v) for v in vectors) != vectors:
            return Reflectability(
                False, f"step set not symmetric under the reflection in {_root_name(wall.root)}"
            )
    for wall in chamber.walls:
        products = {abs(_dot(wall.root, v)) for v in vectors} - {0}
        if len(products) > 1:
            return Reflectability(
                False, f"steps meet root {_root_name(wall.root)} at several distances {sorted(products)}"
            )
        if not products:
            continue
        k2 = products.pop()  # doubled step reach across this wall
        if _dot(wall.root, base) % k2:
            return Reflectability(
                False, f"lattice through the start is off the grid of wall {wall.name}"
            )
        if wall.level is not None and (2 * wall.level) % k2:
            return Reflectability(
                False, f"wall {wall.name} is not a multiple of the step size {Fraction(k2, 2)}"
            )
    return Reflectability(True)


def interior_points(chamber: ChamberSpec, steps: StepSet | None = None) -> list[LatticePoint]:
    """All lattice points strictly inside a bounded alcove, sorted.

    With diagonal steps both parity classes (all-integer and all-half-integer)
    are returned; otherwise only integer points.
    """
    if not chamber.is_bounded:
        raise PreconditionError(f"{chamber.family.value} has no finite interior")
    bound = int(4 * chamber.m)
    parities = (0, 1) if steps is not None and steps.kind is StepKind.DIAGONAL else (0,)
    out = []
    for parity in parities:
        axis = [c for c in range(-bound, bound + 1) if c % 2 == parity]
        for coords in itertools.product(axis, repeat=chamber.n):
            p = LatticePoint(coords)
            if in_interior(p, chamber):
                out.append(p)
    out.sort(key=lambda p: p.doubled)
    return out


# Reflectable step sets are Weyl images of these coweights (Bourbaki numbering).
# Entries with scale 1/2 need steps multiplied by 1/(2t); no counting formulas use them.
_CATALOG = {
    "A": lambda n: [(i, Fraction(1)) for i in range(1, n + 1)],
    "B": lambda n: [(1, Fraction(1)), (n, Fraction(1, 2))],
    "C": lambda n: [(1, Fraction(1, 2)), (n, Fraction(1))],
    "D": lambda n: [(1, Fraction(1)), (n - 1, Fraction(1)), (n, Fraction(1))],
    "E": lambda n: {6: [(1, Fraction(1)), (6, Fraction(1))], 7: [(7, Fraction(1))]}.get(n, []),
    "F": lambda n: [],
    "G": lambda n: [],
}


def coweight_catalog(letter: str, n: int) -> list[dict]:
    """Coweights whose Weyl orbit is a reflectable step set for type ``letter``_n.

    Each entry reports the coweight index, the step scale needed for the affine
    alcove, and whether the counters in this package accept that step family.
    """
    key = letter.upper()
    if key not in _CATALOG:
        raise UnsupportedFamilyError(f"unknown root system type {letter!r}")
    return [
        {"coweight": i, "scale": scale, "counted": key in "ABCD" and scale == 1}
        for i, scale in _CATALOG[key](n)
    ]
