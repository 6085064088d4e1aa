"""Exact determinants."""

from __future__ import annotations

import itertools
from typing import Callable, Sequence, TypeVar

from .weyl_core import permutation_sign

R = TypeVar("R")


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leibniz_det(
    matrix: Sequence[Sequence[R]],
    one: R,
    mul: Callable[[R, R], R] = lambda a, b: a * b,
) -> R:
    """Determinant over a commutative ring given by ``one`` and ``mul``; uses ``+``, ``-``."""
    n = len(matrix)
    total = None
    for perm in itertools.permutations(range(n)):
        term = one
        for i in range(n):
            term = mul(term, matrix[i][perm[i]])
        if permutation_sign(perm) < 0:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else one
