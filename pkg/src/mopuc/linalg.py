"""Dense determinants and linear solves over the two scalar fields.

Exact matrices use fraction-free (Bareiss) elimination; float matrices go
through numpy's LU.  Both return the determinant together with the solution
so callers can judge normality from the same pass.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .scalars import is_exact

__all__ = ["bareiss", "det", "solve", "float_singular", "FLOAT_DET_RTOL"]

FLOAT_DET_RTOL = 1e-9


def _is_exact_matrix(A) -> bool:
    return all(is_exact(x) for row in A for x in row)


def bareiss(A: Sequence[Sequence], rhs: Sequence[Sequence] = ()):
    """Fraction-free elimination of ``A`` augmented by the columns in ``rhs``.

    Returns ``(det, solutions)`` where ``solutions[i]`` solves ``A x = rhs[i]``,
    or ``None`` for every solution when ``det == 0``.  Entries may be any
    exact scalars (ints, Fractions, GaussianRationals).
    """
    n = len(A)
    ncols = n + len(rhs)
    M = [list(A[i]) + [b[i] for b in rhs] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0, [None] * len(rhs)
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, ncols):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) / prev
            row_i[k] = 0
        prev = pivot
    d = M[n - 1][n - 1] * sign if n else 1
    sols = []
    for b in range(len(rhs)):
        col = n + b
        x = [0] * n
        for i in range(n - 1, -1, -1):
            acc = M[i][col]
            for j in range(i + 1, n):
                acc = acc - M[i][j] * x[j]
            x[i] = acc / M[i][i]
        sols.append(x)
    return d, sols


def float_singular(d: complex, n: int, scale: float) -> bool:
    """Float-path normality test: ``|det| <= 1e-9 * max(1, scale)^n``."""
    return abs(d) <= FLOAT_DET_RTOL * max(1.0, scale) ** n


def _float_solve(A, rhs, scale):
    n = len(A)
    if n == 0:
        return 1.0 + 0j, [[] for _ in rhs]
    arr = np.array([[complex(x) for x in row] for row in A], dtype=complex)
    d = complex(np.linalg.det(arr))
    if float_singular(d, n, scale):
        return d, [None] * len(rhs)
    sols = []
    for b in rhs:
        x = np.linalg.solve(arr, np.array([complex(v) for v in b], dtype=complex))
        sols.append([complex(v) for v in x])
    return d, sols


def solve(A, rhs: Sequence[Sequence] = (), scale: float = 1.0):
    """Determinant and solutions of ``A x = b`` for each ``b`` in ``rhs``.

    Dispatches on the scalar field of the entries.  A singular (or, in the
    float field, numerically singular) matrix yields ``None`` solutions.
    """
    if _is_exact_matrix(A) and all(is_exact(x) for b in rhs for x in b):
        return bareiss(A, rhs)
    return _float_solve(A, rhs, scale)


def det(A, scale: float = 1.0):
    d, _ = solve(A, (), scale)
    return d
