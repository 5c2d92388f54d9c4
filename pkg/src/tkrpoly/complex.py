"""Finite CW complexes stored as integer boundary data.

A :class:`CellComplex` keeps, for every dimension ``j``, an ordered tuple of
cell identifiers and, for every ``j >= 1``, the boundary of each ``j``-cell as
an integer column over the ``(j-1)``-cells.  Cell order is fixed at
construction and is never changed by any operation here, because matroid
activities downstream depend on it.

Incidence numbers alone cannot describe every attaching map: the 2-cell of the
pinched sphere runs over its edge twice with opposite orientations, so its
boundary column is zero although the edge lies in its closure.  Each cell
therefore also records its *geometric faces*, a set of lower-dimensional
:class:`CellRef` s that always contains the support of its boundary column.
Closures follow these faces transitively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    BoundarySquareNonzero,
    DimensionMismatch,
    InvalidComplex,
    NotDeletable,
    NotFreeFace,
    OutOfRange,
    TooLarge,
    UnknownName,
)

DEFAULT_CAP = 24

Column = tuple[int, ...]


class CellRef(NamedTuple):
    dim: int
    index: int


def _support(column: Sequence[int], dim: int) -> frozenset[CellRef]:
    return frozenset(CellRef(dim - 1, r) for r, v in enumerate(column) if v)


@dataclass(frozen=True)
class CellComplex:
    """An immutable finite CW complex.

    ``columns[j][i]`` is the boundary of the ``i``-th ``j``-cell as a tuple of
    length ``f(j-1)``; ``columns[0]`` holds empty tuples.  ``faces`` defaults to
    the supports of the columns.
    """

    name: str
    cells: tuple[tuple[str, ...], ...]
    columns: tuple[tuple[Column, ...], ...]
    faces: tuple[tuple[frozenset[CellRef], ...], ...] | None = None
    labels: tuple[tuple[CellRef, str], ...] = field(default=())

    def __post_init__(self) -> None:
        cells = tuple(tuple(c) for c in self.cells)
        if not cells:
            raise DimensionMismatch("a complex needs at least the 0-cell list")
        object.__setattr__(self, "cells", cells)
        columns = tuple(tuple(tuple(int(v) for v in col) for col in cols) for cols in self.columns)
        if len(columns) != len(cells):
            raise DimensionMismatch(
                f"{len(cells)} cell lists but {len(columns)} boundary blocks"
            )
        for j, (ids, cols) in enumerate(zip(cells, columns)):
            if len(set(ids)) != len(ids):
                raise InvalidComplex(f"duplicate cell identifier in dimension {j}")
            if len(cols) != len(ids):
                raise DimensionMismatch(
                    f"D[{j}] has {len(cols)} columns but there are {len(ids)} {j}-cells"
                )
            rows = len(cells[j - 1]) if j > 0 else 0
            for i, col in enumerate(cols):
                if len(col) != rows:
                    raise DimensionMismatch(
                        f"D[{j}] column {i} ({ids[i]}) has {len(col)} rows, expected {rows}"
                    )
        object.__setattr__(self, "columns", columns)

        if self.faces is None:
            faces = tuple(
                tuple(_support(col, j) for col in cols) for j, cols in enumerate(columns)
            )
        else:
            faces = tuple(tuple(frozenset(CellRef(*r) for r in fs) for fs in per) for per in self.faces)
            if len(faces) != len(cells) or any(len(a) != len(b) for a, b in zip(faces, cells)):
                raise DimensionMismatch("face data does not match the cell lists")
            for j, per in enumerate(faces):
                for i, fs in enumerate(per):
                    for ref in fs:
                        if not (0 <= ref.dim < j and 0 <= ref.index < len(cells[ref.dim])):
                            raise InvalidComplex(f"cell {cells[j][i]} has invalid face {ref}")
                    if not _support(columns[j][i], j) <= fs:
                        raise InvalidComplex(
                            f"faces of {cells[j][i]} miss part of its boundary support"
                        )
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "labels", tuple(sorted((CellRef(*r), str(t)) for r, t in self.labels)))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_matrices(
        cls,
        name: str,
        cells: Sequence[Sequence[str]],
        matrices: dict[int, Sequence[Sequence[int]]] | Sequence[Sequence[Sequence[int]]],
        faces: dict[tuple[int, int], Iterable[tuple[int, int]]] | None = None,
    ) -> CellComplex:
        """Build from row-major matrices ``D[j]`` of shape ``f(j-1) x f(j)``.

        ``matrices`` is either a dict keyed by ``j`` or a sequence whose entry
        ``j - 1`` is ``D[j]``.  ``faces`` adds extra geometric faces (with zero
        incidence) keyed by ``(dim, index)``.
        """
        if not isinstance(matrices, dict):
            matrices = {j + 1: m for j, m in enumerate(matrices)}
        k = len(cells) - 1
        columns: list[tuple[Column, ...]] = [tuple(() for _ in cells[0])]
        for j in range(1, k + 1):
            rows = [tuple(r) for r in matrices.get(j, [[0] * len(cells[j])] * len(cells[j - 1]))]
            if len(rows) != len(cells[j - 1]) or any(len(r) != len(cells[j]) for r in rows):
                raise DimensionMismatch(
                    f"D[{j}] must be {len(cells[j - 1])} x {len(cells[j])}"
                )
            columns.append(tuple(tuple(r[i] for r in rows) for i in range(len(cells[j]))))
        face_data = None
        if faces:
            face_data = tuple(
                tuple(
                    _support(columns[j][i], j)
                    | frozenset(CellRef(*r) for r in faces.get((j, i), ()))
                    for i in range(len(cells[j]))
                )
                for j in range(k + 1)
            )
        return cls(name, tuple(tuple(c) for c in cells), tuple(columns), face_data)

    def renamed(self, name: str) -> CellComplex:
        return CellComplex(name, self.cells, self.columns, self.faces, self.labels)

    # -- basic queries --------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def f(self, j: int) -> int:
        return len(self.cells[j]) if 0 <= j <= self.dim else 0

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    @property
    def num_cells(self) -> int:
        return sum(self.f_vector)

    def refs(self) -> Iterator[CellRef]:
        for j, ids in enumerate(self.cells):
            for i in range(len(ids)):
                yield CellRef(j, i)

    def ref(self, cell_id: str, dim: int | None = None) -> CellRef:
        """Look up a cell by identifier, optionally restricted to one dimension."""
        dims = range(self.dim + 1) if dim is None else [dim]
        found = [CellRef(j, self.cells[j].index(cell_id)) for j in dims
                 if 0 <= j <= self.dim and cell_id in self.cells[j]]
        if not found:
            raise UnknownName(f"no cell {cell_id!r} in {self.name}")
        if len(found) > 1:
            raise UnknownName(
                f"cell id {cell_id!r} occurs in dimensions {[r.dim for r in found]}; "
                "qualify it as id@dim"
            )
        return found[0]

    def cell_id(self, ref: CellRef) -> str:
        return self.cells[ref.dim][ref.index]

    def column(self, j: int, i: int) -> Column:
        return self.columns[j][i]

    def boundary_columns(self, j: int, reduced: bool = False) -> tuple[Column, ...]:
        """Columns of the boundary map out of degree ``j``.

        In degree 0 this is the zero map, or the augmentation (all ones) when
        ``reduced`` is set.  Above the top dimension it is empty.
        """
        if j == 0:
            return ((1,),) * self.f(0) if reduced else ((),) * self.f(0)
        if 1 <= j <= self.dim:
            return self.columns[j]
        return ()

    def matrix(self, j: int) -> tuple[tuple[int, ...], ...]:
        """Row-major ``D[j]``."""
        cols = self.boundary_columns(j)
        return tuple(tuple(c[r] for c in cols) for r in range(self.f(j - 1)))

    def cofaces(self, ref: CellRef) -> list[CellRef]:
        return [CellRef(j, i) for j in range(ref.dim + 1, self.dim + 1)
                for i, fs in enumerate(self.faces[j]) if ref in fs]

    def signature(self) -> tuple:
        """Name-free content key: f-vector, boundary columns and face data."""
        return (self.columns, self.faces)

    # -- derived complexes ----------------------------------------------------

    def subcomplex(self, refs: Iterable[CellRef], name: str | None = None) -> CellComplex:
        """The subcomplex on ``refs``, which must be closed under taking faces."""
        keep = set(refs)
        for r in keep:
            if not self.faces[r.dim][r.index] <= keep:
                raise InvalidComplex(f"cell set is not closed: {self.cell_id(r)} has a missing face")
        return _restrict(self, [sorted(i for (d, i) in keep if d == j) for j in range(self.dim + 1)],
                         name or f"{self.name}|sub")


def _restrict(K: CellComplex, keep: Sequence[Sequence[int]], name: str) -> CellComplex:
    """Keep the listed cells (in their original order) and drop all others.

    Dropped rows are discarded from the boundary columns, so callers must make
    sure no kept cell has a nonzero coefficient on a dropped one unless that is
    what they mean.
    """
    new_index = [{old: new for new, old in enumerate(idx)} for idx in keep]
    top = len(keep) - 1
    cells = tuple(tuple(K.cells[j][i] for i in keep[j]) for j in range(top + 1))
    columns = []
    faces = []
    for j in range(top + 1):
        rows = keep[j - 1] if j > 0 else []
        columns.append(tuple(tuple(K.columns[j][i][r] for r in rows) for i in keep[j]))
        faces.append(tuple(
            frozenset(CellRef(r.dim, new_index[r.dim][r.index]) for r in K.faces[j][i]
                      if r.index in new_index[r.dim])
            for i in keep[j]
        ))
    labels = tuple((CellRef(r.dim, new_index[r.dim][r.index]), t) for r, t in K.labels
                   if r.dim <= top and r.index in new_index[r.dim])
    return CellComplex(name, cells, tuple(columns), tuple(faces), labels)


def _check_ref(K: CellComplex, ref: CellRef) -> CellRef:
    ref = CellRef(*ref)
    if not (0 <= ref.dim <= K.dim and 0 <= ref.index < K.f(ref.dim)):
        raise OutOfRange(f"{ref} is not a cell of {K.name}")
    return ref


def validate(K: CellComplex) -> None:
    """Raise unless every boundary composite vanishes.

    Shapes are checked at construction.  Here we check ``D[j-1] D[j] = 0`` for
    ``j >= 2`` and that every 1-cell boundary has coefficient sum zero (the
    augmentation composite), which reduced homology relies on.
    """
    for i, col in enumerate(K.boundary_columns(1)):
        if sum(col):
            raise BoundarySquareNonzero(1, 0, i, sum(col))
    for j in range(2, K.dim + 1):
        lower = K.columns[j - 1]
        for i, col in enumerate(K.columns[j]):
            acc = [0] * K.f(j - 2)
            for r, c in enumerate(col):
                if c:
                    for s, v in enumerate(lower[r]):
                        acc[s] += c * v
            for s, v in enumerate(acc):
                if v:
                    raise BoundarySquareNonzero(j, s, i, v)


def skeleton(K: CellComplex, j: int) -> CellComplex:
    if not 0 <= j <= K.dim:
        raise OutOfRange(f"skeleton dimension {j} outside 0..{K.dim}")
    if j == K.dim:
        return K
    return _restrict(K, [range(K.f(i)) for i in range(j + 1)], f"{K.name}_({j})")


@dataclass(frozen=True)
class SpanningSubcomplex:
    """``K_(j-1) <= S <= K_(j)``, encoded by a bit mask over the ``j``-cells."""

    parent: CellComplex
    j: int
    mask: int

    @classmethod
    def from_ids(cls, parent: CellComplex, j: int, ids: Iterable[str]) -> SpanningSubcomplex:
        mask = 0
        for cid in ids:
            mask |= 1 << parent.ref(cid, j).index
        return cls(parent, j, mask)

    @property
    def dim(self) -> int:
        return self.j

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.parent.f(self.j)) if self.mask >> i & 1)

    def cell_ids(self) -> tuple[str, ...]:
        return tuple(self.parent.cells[self.j][i] for i in self.indices())

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def f(self, i: int) -> int:
        if i < self.j:
            return self.parent.f(i)
        return self.size if i == self.j else 0

    def boundary_columns(self, i: int, reduced: bool = False) -> tuple[Column, ...]:
        if i < self.j:
            return self.parent.boundary_columns(i, reduced)
        if i == self.j:
            cols = self.parent.boundary_columns(i, reduced)
            return tuple(cols[t] for t in self.indices())
        return ()

    def as_complex(self, name: str | None = None) -> CellComplex:
        keep = [range(self.parent.f(i)) for i in range(self.j)] + [self.indices()]
        keep += [[] for _ in range(self.j + 1, self.parent.dim + 1)]
        ids = ",".join(self.cell_ids())
        return _restrict(self.parent, keep, name or f"{self.parent.name}[{self.j}:{{{ids}}}]")

    def __repr__(self) -> str:
        return f"SpanningSubcomplex({self.parent.name}, j={self.j}, {{{', '.join(self.cell_ids())}}})"


def spanning_subcomplexes(
    K: CellComplex,
    j: int,
    cap: int | None = DEFAULT_CAP,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[SpanningSubcomplex]:
    """All ``2**f_j`` spanning subcomplexes, in binary counting order.

    ``start``/``stop`` select a range of masks so that disjoint ranges can be
    handed to separate workers.
    """
    if not 0 <= j <= K.dim:
        raise OutOfRange(f"dimension {j} outside 0..{K.dim}")
    check_cap(K.f(j), cap)
    total = 1 << K.f(j)
    for mask in range(start, total if stop is None else min(stop, total)):
        yield SpanningSubcomplex(K, j, mask)


def check_cap(n: int, cap: int | None) -> None:
    if cap is not None and n > cap:
        raise TooLarge(f"enumeration over {n} cells exceeds the cap {cap} (raise it with --cap)")


def closure(K: CellComplex, sigma: CellRef) -> frozenset[CellRef]:
    """Smallest subcomplex containing ``sigma``, following geometric faces."""
    sigma = _check_ref(K, sigma)
    seen = {sigma}
    stack = [sigma]
    while stack:
        r = stack.pop()
        for face in K.faces[r.dim][r.index]:
            if face not in seen:
                seen.add(face)
                stack.append(face)
    return frozenset(seen)


def delete_cell(K: CellComplex, sigma: CellRef) -> CellComplex:
    """``K`` minus the open cell ``sigma``; only allowed when nothing is attached to it."""
    sigma = _check_ref(K, sigma)
    above = K.cofaces(sigma)
    if above:
        raise NotDeletable(
            f"{K.cell_id(sigma)} lies in the boundary of {', '.join(K.cell_id(r) for r in above)}"
        )
    keep = [[i for i in range(K.f(j)) if (j, i) != tuple(sigma)] for j in range(K.dim + 1)]
    return _restrict(K, keep, f"{K.name}\\{K.cell_id(sigma)}")


def _fresh_id(taken: Iterable[str], base: str) -> str:
    taken = set(taken)
    name = base
    while name in taken:
        name += "'"
    return name


def contract_closure(K: CellComplex, sigma: CellRef) -> CellComplex:
    """The quotient ``K / closure(sigma)``.

    The closure collapses to a new basepoint, placed first among the 0-cells.
    Coefficients on collapsed cells are dropped, except that a 1-cell sends
    the total weight of its collapsed endpoints to the basepoint, so its
    boundary still has coefficient sum zero.
    """
    sigma = _check_ref(K, sigma)
    A = closure(K, sigma)
    keep = [[i for i in range(K.f(j)) if CellRef(j, i) not in A] for j in range(K.dim + 1)]
    new_index = [{old: new for new, old in enumerate(idx)} for idx in keep]
    for old in new_index[0]:
        new_index[0][old] += 1
    base = CellRef(0, 0)
    basepoint = _fresh_id(K.cells[0], "*")

    cells = [(basepoint,) + tuple(K.cells[0][i] for i in keep[0])]
    cells += [tuple(K.cells[j][i] for i in keep[j]) for j in range(1, K.dim + 1)]
    columns = [((),) * len(cells[0])]
    faces = [(frozenset(),) * len(cells[0])]
    for j in range(1, K.dim + 1):
        cols = []
        for i in keep[j]:
            col = K.columns[j][i]
            kept = tuple(col[r] for r in keep[j - 1])
            if j == 1:
                kept = (sum(col[r] for r in range(K.f(0)) if CellRef(0, r) in A),) + kept
            cols.append(kept)
        columns.append(tuple(cols))
        faces.append(tuple(
            frozenset(base if r in A else CellRef(r.dim, new_index[r.dim][r.index])
                      for r in K.faces[j][i])
            for i in keep[j]
        ))
    labels = tuple((CellRef(r.dim, new_index[r.dim][r.index]), t) for r, t in K.labels if r not in A)
    return CellComplex(f"{K.name}/{K.cell_id(sigma)}", tuple(cells), tuple(columns), tuple(faces), labels)


def is_free_face(K: CellComplex, sigma: CellRef, tau: CellRef) -> bool:
    """``tau`` is a codimension-one face of ``sigma`` with incidence +-1 lying in no other closure."""
    sigma = _check_ref(K, sigma)
    tau = _check_ref(K, tau)
    if tau.dim != sigma.dim - 1 or abs(K.columns[sigma.dim][sigma.index][tau.index]) != 1:
        return False
    for r in K.refs():
        if r != sigma and r != tau and r.dim > tau.dim and tau in closure(K, r):
            return False
    return True


def collapse(K: CellComplex, sigma: CellRef, tau: CellRef) -> CellComplex:
    """Remove ``sigma`` together with its free face ``tau``.

    One step of integer elimination with the unit pivot ``D[d][tau, sigma]``:
    every other ``d``-cell ``x`` gets ``D x - (D[tau, x] / pivot) D sigma``
    restricted away from ``tau``.  The free-face condition makes the
    correction vanish, but it is applied anyway.
    """
    sigma = _check_ref(K, sigma)
    tau = _check_ref(K, tau)
    if not is_free_face(K, sigma, tau):
        raise NotFreeFace(f"{K.cell_id(tau)} is not a free face of {K.cell_id(sigma)}")
    d = sigma.dim
    pivot_col = K.columns[d][sigma.index]
    pivot = pivot_col[tau.index]
    cols = list(K.columns[d])
    for i, col in enumerate(cols):
        if i != sigma.index and col[tau.index]:
            q = col[tau.index] * pivot  # pivot is its own inverse
            cols[i] = tuple(v - q * p for v, p in zip(col, pivot_col))
    adjusted = CellComplex(K.name, K.cells, K.columns[:d] + (tuple(cols),) + K.columns[d + 1:],
                           K.faces, K.labels)
    keep = [[i for i in range(K.f(j)) if CellRef(j, i) not in (sigma, tau)] for j in range(K.dim + 1)]
    return _restrict(adjusted, keep, f"{K.name}~{K.cell_id(sigma)}/{K.cell_id(tau)}")


def disjoint_union(K: CellComplex, L: CellComplex, name: str | None = None) -> CellComplex:
    """``K`` followed by ``L``; ids of ``L`` that clash with ``K`` get a trailing ``'``."""
    k = max(K.dim, L.dim)
    cells, columns, faces = [], [], []
    for j in range(k + 1):
        left, right = K.cells[j] if j <= K.dim else (), L.cells[j] if j <= L.dim else ()
        taken = set(left)
        renamed = []
        for cid in right:
            cid = _fresh_id(taken, cid)
            taken.add(cid)
            renamed.append(cid)
        cells.append(tuple(left) + tuple(renamed))
        lrows, rrows = K.f(j - 1), L.f(j - 1)
        cols = [tuple(c) + (0,) * rrows for c in (K.columns[j] if j <= K.dim else ())]
        cols += [(0,) * lrows + tuple(c) for c in (L.columns[j] if j <= L.dim else ())]
        columns.append(tuple(cols) if j else ((),) * len(cells[0]))
        shifted = [frozenset(CellRef(r.dim, r.index + K.f(r.dim)) for r in fs)
                   for fs in (L.faces[j] if j <= L.dim else ())]
        faces.append(tuple(K.faces[j] if j <= K.dim else ()) + tuple(shifted))
    return CellComplex(name or f"{K.name}+{L.name}", tuple(cells), tuple(columns), tuple(faces))
