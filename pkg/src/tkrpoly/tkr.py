"""The TKR polynomial, its torsion-weighted variant, and the Bott polynomial.

``tkr(K, j)`` sums ``X**(b_{j-1}(S) - b_{j-1}(K)) * Y**b_j(S)`` over the
``2**f_j`` spanning subcomplexes ``S``; ``modified_tkr`` weights each term by
``|tor H_{j-1}(S)|**2``.  Degree 0 is also accepted: there reduced Betti
numbers are used, which is what makes the sphere duality
``T^j_K(X, Y) = T^{k-j}_{K*}(Y, X)`` hold at ``j = k``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .complex import DEFAULT_CAP, CellComplex, check_cap, spanning_subcomplexes
from .errors import OutOfRange
from .homology import homology, smith_normal_form, torsion_weight
from .linalg import integer_rank
from .polynomial import BiPoly, UniPoly, to_bott_substitution

CLOSED_ORIENTABLE = "closed-orientable"
OTHER = "other"


def _check_dim(K: CellComplex, j: int, lowest: int = 0) -> None:
    if not lowest <= j <= K.dim:
        raise OutOfRange(f"dimension {j} outside {lowest}..{K.dim} for {K.name}")


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _tkr_terms(K: CellComplex, j: int, modified: bool, start: int, stop: int) -> dict:
    """Terms for the subsets with masks in ``[start, stop)``.

    For ``j >= 1`` only the restricted map ``D_j|S`` varies: with ``r(S)`` its
    rank, ``b_{j-1}(S) - b_{j-1}(K) = rank D_j - r(S)`` (the ``(j-1)``-cycles
    are shared) and ``b_j(S) = |S| - r(S)`` (``S`` has no ``(j+1)``-cells).
    The torsion of ``H_{j-1}(S)`` is that of the cokernel of ``D_j|S``.
    """
    acc: dict[tuple[int, int], int] = {}
    if j == 0:
        base = int(K.f(0) == 0)
        for S in spanning_subcomplexes(K, 0, cap=None, start=start, stop=stop):
            x = int(S.size == 0) - base  # reduced Betti numbers in degree -1
            y = homology(S, 0, reduced=True).betti
            w = torsion_weight(S) if modified else 1
            acc[(x, y)] = acc.get((x, y), 0) + w
        return acc
    cols = K.boundary_columns(j)
    full = integer_rank(cols)
    for mask in range(start, stop):
        chosen = [cols[i] for i in _bits(mask)]
        if modified:
            snf = smith_normal_form(chosen)
            r, w = snf.rank, snf.torsion_order ** 2
        else:
            r, w = integer_rank(chosen), 1
        key = (full - r, len(chosen) - r)
        acc[key] = acc.get(key, 0) + w
    return acc


def _bott_terms(K: CellComplex, start: int, stop: int) -> dict:
    k = K.dim
    cols = K.boundary_columns(k)
    acc: dict[tuple[int], int] = {}
    for mask in range(start, stop):
        chosen = [cols[i] for i in _bits(mask)]
        sign = -1 if (K.f(k) - len(chosen)) % 2 else 1
        e = (len(chosen) - integer_rank(chosen),)
        acc[e] = acc.get(e, 0) + sign
    return acc


def _chunked(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(s, min(s + step, total)) for s in range(0, total, step)]


def _sum_terms(worker: Callable[..., dict], args: tuple, total: int, threads: int) -> dict:
    if threads <= 1 or total < 64:
        return worker(*args, 0, total)
    acc: dict = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, *args, s, e) for s, e in _chunked(total, threads * 4)]
        for fut in futures:
            for key, c in fut.result().items():
                acc[key] = acc.get(key, 0) + c
    return acc


def tkr(K: CellComplex, j: int, cap: int | None = DEFAULT_CAP, threads: int = 1) -> BiPoly:
    _check_dim(K, j)
    check_cap(K.f(j), cap)
    return BiPoly(_sum_terms(_tkr_terms, (K, j, False), 1 << K.f(j), threads))


def modified_tkr(K: CellComplex, j: int, cap: int | None = DEFAULT_CAP, threads: int = 1) -> BiPoly:
    _check_dim(K, j)
    check_cap(K.f(j), cap)
    return BiPoly(_sum_terms(_tkr_terms, (K, j, True), 1 << K.f(j), threads))


def bott_direct(K: CellComplex, cap: int | None = DEFAULT_CAP, threads: int = 1) -> UniPoly:
    """``R_K(lambda)``: signed sum of ``lambda**b_k(S)`` over top spanning subcomplexes."""
    _check_dim(K, K.dim, lowest=1)
    check_cap(K.f(K.dim), cap)
    return UniPoly(_sum_terms(_bott_terms, (K,), 1 << K.f(K.dim), threads))


def bott_via_tkr(K: CellComplex, cap: int | None = DEFAULT_CAP, threads: int = 1) -> UniPoly:
    """``(-1)**b_k(K) * T^k_K(-1, -lambda)``."""
    _check_dim(K, K.dim, lowest=1)
    return to_bott_substitution(tkr(K, K.dim, cap, threads), homology(K, K.dim).betti)


def manifold_closed_form(f_k: int, kind: str) -> BiPoly:
    """Top TKR polynomial of a connected compact manifold with ``f_k`` top cells."""
    if f_k < 1:
        raise ValueError("a manifold cell structure has at least one top cell")
    one_plus_x = BiPoly.X() + 1
    if kind == CLOSED_ORIENTABLE:
        return BiPoly.Y() + (one_plus_x ** f_k - 1).divide_by_monomial(1, 0)
    if kind == OTHER:
        return one_plus_x ** f_k
    raise ValueError(f"unknown manifold kind {kind!r}")
