"""Integral homology through Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Protocol, Sequence, Union

from .complex import CellComplex, Column, SpanningSubcomplex
from .errors import OutOfRange


class ChainData(Protocol):
    """Anything exposing cell counts and boundary columns per degree."""

    @property
    def dim(self) -> int: ...

    def f(self, j: int) -> int: ...

    def boundary_columns(self, j: int, reduced: bool = False) -> tuple[Column, ...]: ...


Chain = Union[CellComplex, SpanningSubcomplex]


@dataclass(frozen=True)
class SmithForm:
    rank: int
    invariant_factors: tuple[int, ...]

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)

    @property
    def torsion_order(self) -> int:
        return prod(self.invariant_factors)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    """Rank and invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    The input may be given row- or column-major; both describe matrices with
    the same Smith form.  Pivots are chosen of minimal absolute value.
    """
    return _snf(tuple(tuple(int(v) for v in row) for row in matrix))


@lru_cache(maxsize=1 << 16)
def _snf(matrix: tuple[tuple[int, ...], ...]) -> SmithForm:
    A = [list(r) for r in matrix if any(r)]
    diag: list[int] = []
    while True:
        A = [r for r in A if any(r)]
        if not A:
            break
        live = [c for c in range(len(A[0])) if any(r[c] for r in A)]
        A = [[r[c] for c in live] for r in A]
        pi, pj = min(
            ((i, j) for i, r in enumerate(A) for j, v in enumerate(r) if v),
            key=lambda ij: abs(A[ij[0]][ij[1]]),
        )
        p = A[pi][pj]
        clean = True
        for i, row in enumerate(A):
            if i != pi and row[pj]:
                q, rem = divmod(row[pj], p)
                prow = A[pi]
                A[i] = [a - q * b for a, b in zip(row, prow)]
                clean = clean and rem == 0
        prow = A[pi]
        for j in range(len(prow)):
            if j != pj and prow[j]:
                q, rem = divmod(prow[j], p)
                for row in A:
                    row[j] -= q * row[pj]
                clean = clean and rem == 0
        if not clean:
            continue
        # row pi and column pj are now clear apart from the pivot
        bad = next((i for i, row in enumerate(A) if i != pi
                    and any(v % p for j, v in enumerate(row) if j != pj)), None)
        if bad is not None:
            A[pi] = [a + b for a, b in zip(A[pi], A[bad])]
            continue
        diag.append(abs(p))
        del A[pi]
        for row in A:
            del row[pj]
    return SmithForm(len(diag), tuple(diag))


@dataclass(frozen=True)
class HomologySummary:
    degree: int
    betti: int
    torsion_factors: tuple[int, ...]
    reduced: bool = False

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion_factors)

    @property
    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion_factors

    def __str__(self) -> str:
        parts = ["Z" if self.betti == 1 else f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{d}" for d in self.torsion_factors]
        return " + ".join(parts) or "0"


def homology(S: Chain, j: int, reduced: bool = False) -> HomologySummary:
    """``H_j`` (or reduced ``H~_j``) of a complex or spanning subcomplex."""
    if not 0 <= j <= S.dim:
        raise OutOfRange(f"degree {j} outside 0..{S.dim}")
    out = smith_normal_form(S.boundary_columns(j, reduced))
    into = smith_normal_form(S.boundary_columns(j + 1))
    betti = S.f(j) - out.rank - into.rank
    return HomologySummary(j, betti, into.torsion, reduced)


def betti(S: Chain, j: int, reduced: bool = False) -> int:
    """Betti number; in degree -1 only the reduced group of the empty complex is nonzero."""
    if j == -1:
        return int(reduced and S.f(0) == 0)
    return homology(S, j, reduced).betti


def torsion_weight(S: SpanningSubcomplex) -> int:
    """``|tor H_{j-1}(S)|**2``, the multiplicity of a spanning subcomplex."""
    if S.j < 1:
        return 1
    return homology(S, S.j - 1, reduced=True).torsion_order ** 2


def euler_characteristic(S: Chain) -> int:
    by_cells = sum((-1) ** j * S.f(j) for j in range(S.dim + 1))
    by_betti = sum((-1) ** j * homology(S, j).betti for j in range(S.dim + 1))
    if by_cells != by_betti:
        raise ArithmeticError(f"Euler characteristic mismatch: cells {by_cells}, Betti {by_betti}")
    return by_cells
