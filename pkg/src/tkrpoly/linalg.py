"""Fraction-free integer linear algebra used by the rank oracle and the Laplacian."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by Bareiss elimination (all intermediate values are integers)."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][c]
        top = M[rank]
        for i in range(rank + 1, len(M)):
            row = M[i]
            a = row[c]
            for t in range(c + 1, ncols):
                row[t] = (row[t] * p - top[t] * a) // prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == len(M):
            break
    return rank


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    M = [list(r) for r in matrix]
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        p = M[k][k]
        for i in range(k + 1, n):
            for t in range(k + 1, n):
                M[i][t] = (M[i][t] * p - M[k][t] * M[i][k]) // prev
            M[i][k] = 0
        prev = p
    return sign * M[n - 1][n - 1]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def transpose(A: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(c) for c in zip(*A)]


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Primitive integer vectors spanning the rational kernel of ``rows``."""
    M = [[Fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(M, pivots):
            v[pc] = -row[free]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        basis.append([x // g for x in ints])
    return basis
