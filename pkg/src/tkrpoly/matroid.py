"""The column matroid of a boundary map, its Tutte polynomial, and basis activities.

Subsets of the ground set are bit masks over positions ``0..n-1``.  Position
``p`` holds the ``j``-cell ``order[p]``; the default order is the cell order
of the complex, and activities depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complex import DEFAULT_CAP, CellComplex, SpanningSubcomplex, check_cap
from .errors import NotABasis, OutOfRange
from .homology import torsion_weight
from .linalg import integer_rank
from .polynomial import BiPoly
from .tkr import tkr
from .trees import enumerate_csts, is_apc


def _bits(mask: int) -> Iterable[int]:
    p = 0
    while mask:
        if mask & 1:
            yield p
        mask >>= 1
        p += 1


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class ColumnMatroid:
    """Matroid of linear dependencies among integer columns, over the rationals.

    ``source`` and ``order`` remember where the columns came from (a complex
    and degree, and which cell sits at each position); matroids built by
    :meth:`contract` or :meth:`delete` have no source.
    """

    def __init__(self, columns: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 source: tuple[CellComplex, int] | None = None, order: Sequence[int] | None = None):
        self.columns = tuple(tuple(int(v) for v in c) for c in columns)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(len(self.columns)))
        self.source = source
        self.order = tuple(order) if order is not None else tuple(range(len(self.columns)))
        self._rank: dict[int, int] = {}
        self.full_rank = self.rank(self.full)

    @property
    def size(self) -> int:
        return len(self.columns)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def mask(self, elements: Iterable[int]) -> int:
        m = 0
        for e in elements:
            if not 0 <= e < self.size:
                raise OutOfRange(f"element {e} outside 0..{self.size - 1}")
            m |= 1 << e
        return m

    def rank(self, subset: int | Iterable[int]) -> int:
        m = subset if isinstance(subset, int) else self.mask(subset)
        r = self._rank.get(m)
        if r is None:
            r = integer_rank([self.columns[p] for p in _bits(m)])
            self._rank[m] = r
        return r

    def is_independent(self, subset: int) -> bool:
        return self.rank(subset) == _popcount(subset)

    def is_basis(self, subset: int) -> bool:
        return _popcount(subset) == self.full_rank and self.rank(subset) == self.full_rank

    def bases(self, cap: int | None = DEFAULT_CAP) -> list[int]:
        check_cap(self.size, cap)
        return [m for m in range(1 << self.size) if self.is_basis(m)]

    def is_loop(self, e: int) -> bool:
        return self.rank(1 << e) == 0

    def is_coloop(self, e: int) -> bool:
        return self.rank(self.full & ~(1 << e)) == self.full_rank - 1

    def closure(self, subset: int) -> int:
        r = self.rank(subset)
        out = subset
        for p in range(self.size):
            if not subset >> p & 1 and self.rank(subset | 1 << p) == r:
                out |= 1 << p
        return out

    def delete(self, e: int) -> ColumnMatroid:
        keep = [p for p in range(self.size) if p != e]
        return ColumnMatroid([self.columns[p] for p in keep], [self.labels[p] for p in keep])

    def contract(self, e: int) -> ColumnMatroid:
        """Quotient by the span of column ``e`` (one fraction-free elimination step)."""
        pivot = self.columns[e]
        keep = [p for p in range(self.size) if p != e]
        row = next((i for i, v in enumerate(pivot) if v), None)
        if row is None:
            cols = [self.columns[p] for p in keep]
        else:
            a = pivot[row]
            cols = [tuple(a * v - c[row] * w for v, w in zip(c, pivot)) for c in (self.columns[p] for p in keep)]
        return ColumnMatroid(cols, [self.labels[p] for p in keep])

    def names(self, subset: int) -> tuple[str, ...]:
        return tuple(self.labels[p] for p in _bits(subset))

    def __repr__(self) -> str:
        return f"ColumnMatroid(size={self.size}, rank={self.full_rank})"


def column_matroid(K: CellComplex, j: int, order: Sequence[int] | None = None) -> ColumnMatroid:
    """Matroid of the columns of ``D[j]``; ``order`` permutes the ground set."""
    if not 1 <= j <= K.dim:
        raise OutOfRange(f"dimension {j} outside 1..{K.dim} for {K.name}")
    order = tuple(range(K.f(j))) if order is None else tuple(order)
    if sorted(order) != list(range(K.f(j))):
        raise ValueError("order must be a permutation of the cell indices")
    cols = K.boundary_columns(j)
    return ColumnMatroid([cols[i] for i in order], [K.cells[j][i] for i in order], (K, j), order)


def cells_mask(M: ColumnMatroid, subset: int) -> int:
    """Translate a ground-set mask to a mask over the ``j``-cells of the source complex."""
    out = 0
    for p in _bits(subset):
        out |= 1 << M.order[p]
    return out


def tutte(M: ColumnMatroid, cap: int | None = DEFAULT_CAP) -> BiPoly:
    """``T_M(x, y)`` by memoized deletion-contraction (``X``, ``Y`` stand for ``x``, ``y``).

    A minor is described by the elements still present and the flat spanned
    by those contracted so far, which is all its rank function depends on.
    """
    check_cap(M.size, cap)
    memo: dict[tuple[int, int], BiPoly] = {}
    x, y = BiPoly.X(), BiPoly.Y()

    def go(rest: int, flat: int) -> BiPoly:
        if not rest:
            return BiPoly.one()
        key = (rest, flat)
        hit = memo.get(key)
        if hit is not None:
            return hit
        e = (rest & -rest).bit_length() - 1
        others = rest & ~(1 << e)
        base = M.rank(flat)
        if M.rank(flat | 1 << e) == base:
            value = y * go(others, flat)
        elif M.rank(rest | flat) > M.rank(others | flat):
            value = x * go(others, M.closure(flat | 1 << e))
        else:
            value = go(others, flat) + go(others, M.closure(flat | 1 << e))
        memo[key] = value
        return value

    return go(M.full, M.closure(0))


def tutte_corank_nullity(M: ColumnMatroid, cap: int | None = DEFAULT_CAP) -> BiPoly:
    """``sum_A (x-1)**(r(E)-r(A)) * (y-1)**(|A|-r(A))``."""
    check_cap(M.size, cap)
    acc: dict[tuple[int, int], int] = {}
    for A in range(1 << M.size):
        r = M.rank(A)
        key = (M.full_rank - r, _popcount(A) - r)
        acc[key] = acc.get(key, 0) + 1
    return BiPoly(acc).shift(-1, -1)


def activities(M: ColumnMatroid, basis: int) -> tuple[int, int]:
    """``(internal, external)`` activity counts of a basis for the ground order."""
    if not M.is_basis(basis):
        raise NotABasis(f"{{{', '.join(M.names(basis))}}} is not a basis")
    internal = 0
    for e in _bits(basis):
        cut = [f for f in range(M.size) if not basis >> f & 1 and M.is_basis(basis & ~(1 << e) | 1 << f)]
        if all(e < f for f in cut):
            internal += 1
    external = 0
    for f in range(M.size):
        if basis >> f & 1:
            continue
        cyc = [e for e in _bits(basis) if M.is_basis(basis & ~(1 << e) | 1 << f)]
        if all(f < e for e in cyc):
            external += 1
    return internal, external


def tutte_from_activities(M: ColumnMatroid, cap: int | None = DEFAULT_CAP) -> BiPoly:
    acc: dict[tuple[int, int], int] = {}
    for B in M.bases(cap):
        key = activities(M, B)
        acc[key] = acc.get(key, 0) + 1
    return BiPoly(acc)


def multiplicity(M: ColumnMatroid, subset: int) -> int:
    """``|tor H_{j-1}(S)|**2`` for the spanning subcomplex with these top cells."""
    if M.source is None:
        raise ValueError("multiplicity needs a matroid built from a complex")
    K, j = M.source
    return torsion_weight(SpanningSubcomplex(K, j, cells_mask(M, subset)))


@dataclass
class CorrespondenceReport:
    tkr: BiPoly
    tutte: BiPoly
    activities: BiPoly
    tkr_matches_tutte: bool
    bases_are_csts: bool | None
    activities_match: bool
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.tkr_matches_tutte and self.bases_are_csts is not False and self.activities_match

    def failures(self) -> list[str]:
        out = []
        if not self.tkr_matches_tutte:
            out.append("a")
        if self.bases_are_csts is False:
            out.append("b")
        if not self.activities_match:
            out.append("c")
        return out


def check_matroid_correspondence(K: CellComplex, j: int, cap: int | None = DEFAULT_CAP) -> CorrespondenceReport:
    """(a) ``T^j_K(X, Y) = T_M(X+1, Y+1)``; (b) bases are the CSTs when ``K`` is APC;
    (c) the activity expansion equals ``T^j_K(X-1, Y-1)``.  (b) is ``None`` off APC.
    """
    M = column_matroid(K, j)
    poly = tkr(K, j, cap)
    t = tutte(M, cap)
    act = tutte_from_activities(M, cap)
    a = poly == t.shift(1, 1)
    b = None
    details = []
    if is_apc(K):
        bases = {cells_mask(M, B) for B in M.bases(cap)}
        csts = {S.mask for S in enumerate_csts(K, j, cap)}
        b = bases == csts
        if not b:
            details.append(f"bases without tree: {len(bases - csts)}, trees without basis: {len(csts - bases)}")
    c = act == poly.shift(-1, -1)
    if not a:
        details.append(f"T^{j} = {poly} but T_M(X+1, Y+1) = {t.shift(1, 1)}")
    if not c:
        details.append(f"activity expansion {act} differs from T^{j}(X-1, Y-1) = {poly.shift(-1, -1)}")
    return CorrespondenceReport(poly, t, act, a, b, c, details)
