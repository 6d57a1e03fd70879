"""Exact inertia (Sylvester signature) of rational symmetric and Hermitian matrices."""

from fractions import Fraction
from typing import List, Sequence, Tuple

from .chern_ring import to_rational

Inertia = Tuple[int, int, int]


def symmetric_inertia(matrix: Sequence[Sequence[object]]) -> Inertia:
    """(n_plus, n_zero, n_minus) of a rational symmetric matrix by congruence elimination.

    Each step either pivots on a non-zero diagonal entry or, when the whole
    diagonal vanishes, adds row/column j to row/column i so that the new
    diagonal entry 2*a_ij is non-zero. Both steps are congruences, so the
    pivot signs are the inertia.
    """
    size = len(matrix)
    a: List[List[Fraction]] = [[to_rational(matrix[i][j]) for j in range(size)] for i in range(size)]
    for i in range(size):
        if len(a[i]) != size:
            raise ValueError("Matrix is not square")
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError(f"Matrix is not symmetric at ({i}, {j})")

    plus = minus = 0
    while a:
        n = len(a)
        pivot = next((i for i in range(n) if a[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            pivot = i
        p = a[pivot][pivot]
        if p > 0:
            plus += 1
        else:
            minus += 1
        rest = [k for k in range(n) if k != pivot]
        a = [
            [a[r][c] - a[r][pivot] * a[pivot][c] / p for c in rest]
            for r in rest
        ]
    return plus, size - plus - minus, minus


def hermitian_inertia(real: Sequence[Sequence[object]], imag: Sequence[Sequence[object]]) -> Inertia:
    """Inertia of H = real + i*imag via the real symmetric embedding [[A, -B], [B, A]].

    The embedding has every eigenvalue of H with doubled multiplicity.
    """
    n = len(real)
    embedded = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for j in range(n):
        for k in range(n):
            re = to_rational(real[j][k])
            im = to_rational(imag[j][k])
            embedded[j][k] = re
            embedded[j + n][k + n] = re
            embedded[j][k + n] = -im
            embedded[j + n][k] = im
    plus, zero, minus = symmetric_inertia(embedded)
    return plus // 2, zero // 2, minus // 2
