"""Finite sums ``sum_j c_j * exp(a_j * x)`` used as exponential generating functions."""

from __future__ import annotations

import math
from numbers import Number
from typing import Iterable, Sequence

from ._linalg import leibniz_det
from .errors import ConsistencyError, PreconditionError

__all__ = ["ExpPoly", "COALESCE_TOL", "expoly_det", "MAX_DET_SIZE"]

COALESCE_TOL = 1e-9
MAX_DET_SIZE = 8


def _coalesce(pairs: Iterable[tuple[float, complex]]) -> tuple[tuple[float, complex], ...]:
    items = sorted(pairs, key=lambda p: p[0])
    out: list[list] = []
    for freq, coef in items:
        if out and abs(freq - out[-1][0]) <= COALESCE_TOL:
            out[-1][1] += coef
        else:
            out.append([freq, coef])
    return tuple((f, c) for f, c in out if c != 0)


class ExpPoly:
    """An exponential polynomial with real frequencies and real or complex coefficients.

    ``k``-th coefficient extraction of the EGF is ``sum c_j a_j**k``
    (see :meth:`extract`).  Frequencies within ``COALESCE_TOL`` are merged.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[float, complex]] = ()):
        self.terms = _coalesce((float(f), c) for f, c in terms)

    @classmethod
    def constant(cls, c) -> ExpPoly:
        return cls([(0.0, c)])

    @classmethod
    def exp(cls, freq: float, coef=1.0) -> ExpPoly:
        return cls([(freq, coef)])

    @classmethod
    def from_coefficients(cls, coef_by_freq: dict) -> ExpPoly:
        return cls(coef_by_freq.items())

    def __add__(self, other):
        if isinstance(other, Number):
            other = ExpPoly.constant(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return ExpPoly(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly((f, -c) for f, c in self.terms)

    def __sub__(self, other):
        if isinstance(other, Number):
            other = ExpPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return ExpPoly((f, c * other) for f, c in self.terms)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return ExpPoly((fa + fb, ca * cb) for fa, ca in self.terms for fb, cb in other.terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return ExpPoly((f, c / scalar) for f, c in self.terms)

    def __call__(self, x: float):
        return sum(c * math.exp(f * x) for f, c in self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        body = " + ".join(f"({c:.6g})e^({f:.6g}x)" for f, c in self.terms) or "0"
        return f"ExpPoly[{body}]"

    @property
    def frequencies(self) -> list[float]:
        return [f for f, _ in self.terms]

    def extract(self, k: int):
        """``k! [x^k]`` of the function, i.e. ``sum_j c_j * a_j**k``."""
        if k < 0:
            raise PreconditionError("k must be nonnegative")
        return sum(c * f**k for f, c in self.terms)

    def max_imag(self) -> float:
        return max((abs(complex(c).imag) for _, c in self.terms), default=0.0)

    def real(self, tol: float = 1e-9) -> ExpPoly:
        """Drop imaginary parts, which must all be below ``tol``."""
        worst = self.max_imag()
        if worst >= tol:
            raise ConsistencyError(f"residual imaginary coefficient {worst:.3g} exceeds {tol:g}")
        return ExpPoly((f, complex(c).real) for f, c in self.terms)

    def chop(self, tol: float = 1e-12) -> ExpPoly:
        """Remove terms whose coefficients are below ``tol`` in magnitude."""
        return ExpPoly((f, c) for f, c in self.terms if abs(c) >= tol)

    def isclose(self, other: ExpPoly, tol: float = 1e-9) -> bool:
        diff = (self - other).terms
        return all(abs(c) < tol for _, c in diff)


def expoly_det(matrix: Sequence[Sequence[ExpPoly]]) -> ExpPoly:
    """Determinant by permutation expansion; entries form a ring, not a field."""
    n = len(matrix)
    if n > MAX_DET_SIZE:
        raise PreconditionError(f"ExpPoly determinants are limited to n <= {MAX_DET_SIZE}, got {n}")
    return leibniz_det(matrix, ExpPoly.constant(1.0))
