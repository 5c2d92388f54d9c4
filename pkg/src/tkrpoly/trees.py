"""Cellular spanning trees, their counts, and the weighted matrix-tree determinant.

A spanning subcomplex ``K_(j-1) <= S <= K_(j)`` is a ``j``-dimensional
cellular spanning tree (CST) when

1. ``H~_j(S) = 0``,
2. ``b~_{j-1}(S) = 0``,
3. ``f_j(S) = f_j(K) - b~_j(K_(j)) + b~_{j-1}(K_(j))``.

Any two of these imply the third.  CSTs exist in every degree exactly when
``K`` is acyclic in positive codimension (APC); on other inputs the counting
functions still run but emit :class:`NonApcWarning`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .complex import DEFAULT_CAP, CellComplex, SpanningSubcomplex, check_cap, skeleton, spanning_subcomplexes
from .errors import NonApcWarning, NotACst, NotApc, OutOfRange
from .homology import betti, homology
from .linalg import determinant, integer_rank, matmul, transpose
from .tkr import _sum_terms


def is_apc(K: CellComplex) -> bool:
    """True when every reduced Betti number below the top dimension vanishes."""
    return all(betti(K, j, reduced=True) == 0 for j in range(K.dim))


@dataclass(frozen=True)
class CstVerdict:
    cond1: bool
    cond2: bool
    cond3: bool

    @property
    def is_cst(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3

    def conditions(self) -> tuple[bool, bool, bool]:
        return (self.cond1, self.cond2, self.cond3)


def cst_size(K: CellComplex, j: int) -> int:
    """The number of ``j``-cells every ``j``-CST of ``K`` has."""
    Kj = skeleton(K, j)
    return K.f(j) - betti(Kj, j, reduced=True) + betti(Kj, j - 1, reduced=True)


def cst_verdict(S: SpanningSubcomplex, target: int | None = None) -> CstVerdict:
    """Evaluate the three tree conditions independently.

    ``target`` is :func:`cst_size` of the parent; pass it when scanning many
    subcomplexes of the same complex.
    """
    j = S.j
    if target is None:
        target = cst_size(S.parent, j)
    return CstVerdict(
        cond1=homology(S, j, reduced=True).is_trivial,
        cond2=betti(S, j - 1, reduced=True) == 0,
        cond3=S.size == target,
    )


def _check(K: CellComplex, j: int, cap: int | None) -> None:
    if not 0 <= j <= K.dim:
        raise OutOfRange(f"dimension {j} outside 0..{K.dim} for {K.name}")
    check_cap(K.f(j), cap)
    if not is_apc(K):
        warnings.warn(f"{K.name} is not acyclic in positive codimension; "
                      f"it may have no {j}-dimensional spanning trees", NonApcWarning, stacklevel=3)


def _count_terms(K: CellComplex, j: int, start: int, stop: int) -> dict:
    target = cst_size(K, j)
    plain = weighted = 0
    for S in spanning_subcomplexes(K, j, cap=None, start=start, stop=stop):
        if S.size != target or not homology(S, j, reduced=True).is_trivial:
            continue
        low = homology(S, j - 1, reduced=True) if j >= 1 else None
        if low is not None and low.betti:
            continue
        plain += 1
        weighted += low.torsion_order ** 2 if low is not None else 1
    return {"tau": plain, "weighted": weighted}


def enumerate_csts(K: CellComplex, j: int, cap: int | None = DEFAULT_CAP) -> list[SpanningSubcomplex]:
    """All ``j``-CSTs of ``K`` in binary counting order of their masks."""
    _check(K, j, cap)
    target = cst_size(K, j)
    return [S for S in spanning_subcomplexes(K, j, cap=None) if cst_verdict(S, target).is_cst]


def tau(K: CellComplex, j: int, cap: int | None = DEFAULT_CAP, threads: int = 1) -> int:
    _check(K, j, cap)
    return _sum_terms(_count_terms, (K, j), 1 << K.f(j), threads)["tau"]


def weighted_tau(K: CellComplex, j: int, cap: int | None = DEFAULT_CAP, threads: int = 1) -> int:
    """Sum of ``|H~_{j-1}(S)|**2`` over the ``j``-CSTs ``S``."""
    _check(K, j, cap)
    return _sum_terms(_count_terms, (K, j), 1 << K.f(j), threads)["weighted"]


def find_cst(K: CellComplex, j: int) -> SpanningSubcomplex:
    """A ``j``-CST found greedily: keep each ``j``-cell whose column is independent of those kept.

    Raises :class:`NotApc` if the greedy choice is not a tree, which happens
    exactly when ``K`` has no ``j``-CST.
    """
    if not 0 <= j <= K.dim:
        raise OutOfRange(f"dimension {j} outside 0..{K.dim} for {K.name}")
    if j == 0:
        if K.f(0) == 0:
            raise NotApc(f"{K.name} has no vertices")
        S = SpanningSubcomplex(K, 0, 1)
    else:
        cols = K.boundary_columns(j)
        kept: list[int] = []
        for i, col in enumerate(cols):
            if integer_rank([cols[t] for t in kept] + [col]) == len(kept) + 1:
                kept.append(i)
        S = SpanningSubcomplex(K, j, sum(1 << i for i in kept))
    if not cst_verdict(S).is_cst:
        raise NotApc(f"{K.name} has no {j}-dimensional spanning tree")
    return S


@dataclass(frozen=True)
class MatrixTreeResult:
    """``weighted = determinant * |tor H~_{j-2}(K)|**2 / |tor H~_{j-2}(Gamma)|**2``."""

    determinant: int
    torsion_complex: int
    torsion_gamma: int
    weighted: int


def matrix_tree(K: CellComplex, j: int, gamma: SpanningSubcomplex | None = None) -> MatrixTreeResult:
    """Weighted CST count from a reduced Laplacian determinant.

    The up-down Laplacian ``D_j D_j^T`` is restricted to the ``(j-1)``-cells not
    in ``gamma`` (a ``(j-1)``-CST, found greedily when omitted), and the
    determinant is rescaled by the torsion of ``H~_{j-2}`` of ``K`` and of
    ``gamma``.
    """
    if not 1 <= j <= K.dim:
        raise OutOfRange(f"dimension {j} outside 1..{K.dim} for {K.name}")
    if not is_apc(K):
        raise NotApc(f"{K.name} is not acyclic in positive codimension")
    if gamma is None:
        gamma = find_cst(K, j - 1)
    if gamma.parent != K or gamma.j != j - 1:
        raise NotACst(f"expected a {j - 1}-dimensional spanning subcomplex of {K.name}")
    if not cst_verdict(gamma).is_cst:
        raise NotACst(f"{{{', '.join(gamma.cell_ids())}}} is not a {j - 1}-dimensional spanning tree")
    rows = [r for r in range(K.f(j - 1)) if r not in gamma]
    M = [[col[r] for col in K.boundary_columns(j)] for r in rows]
    det = determinant(matmul(M, transpose(M)))
    if j >= 2:
        tk = homology(K, j - 2, reduced=True).torsion_order
        tg = homology(gamma, j - 2, reduced=True).torsion_order
    else:
        tk = tg = 1
    value = Fraction(det * tk * tk, tg * tg)
    if value.denominator != 1:
        raise ArithmeticError(f"matrix-tree value {value} is not an integer")
    return MatrixTreeResult(det, tk, tg, int(value))


def matrix_tree_weighted(K: CellComplex, j: int, gamma: SpanningSubcomplex | None = None) -> int:
    return matrix_tree(K, j, gamma).weighted
