"""Loops, bridges, boundary regularity, and skein relations for the top TKR polynomial.

For a top-dimensional cell ``s`` of a ``k``-complex ``K``:

* a *loop* has zero boundary column, and ``T_K = (Y + 1) T_{K - s}``;
* a *bridge* raises ``b_{k-1}`` by one when deleted; if it is also boundary
  regular (``H~_{k-1}`` of its boundary is ``Z``) then ``T_K = (X + 1) T_{K/s}``,
  where ``K/s`` contracts the closure of ``s`` to a point;
* a boundary regular cell that is neither gives ``T_K = T_{K/s} + T_{K - s}``.

A bridge with a free face may instead be collapsed across that face, which
gives ``T_K = (X + 1) T_{K~s}`` without any regularity assumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import (
    DEFAULT_CAP,
    CellComplex,
    CellRef,
    closure,
    collapse,
    contract_closure,
    delete_cell,
    is_free_face,
)
from .errors import NotApplicable, NotTopCell, OutOfRange
from .homology import homology
from .linalg import integer_rank
from .polynomial import BiPoly
from .tkr import tkr

LOOP = "loop"
BRIDGE = "bridge"
REGULAR = "regular"
COLLAPSE = "collapse"
DIRECT = "direct"
EMPTY = "empty"

CASE_NAMES = {
    LOOP: "(ii) loop: (Y+1) * T(K - s)",
    BRIDGE: "(iii) bridge: (X+1) * T(K / s)",
    REGULAR: "(i) regular: T(K / s) + T(K - s)",
    COLLAPSE: "(iii') collapse: (X+1) * T(K ~ s)",
}


@dataclass(frozen=True)
class CellClass:
    cell: CellRef
    is_loop: bool
    is_bridge: bool
    boundary_regular: bool
    free_faces: tuple[CellRef, ...]


def _top_cell(K: CellComplex, sigma: CellRef) -> CellRef:
    if K.dim < 1:
        raise OutOfRange(f"{K.name} has no cells of positive dimension")
    sigma = CellRef(*sigma)
    if not 0 <= sigma.dim <= K.dim or not 0 <= sigma.index < K.f(sigma.dim):
        raise OutOfRange(f"{sigma} is not a cell of {K.name}")
    if sigma.dim != K.dim:
        raise NotTopCell(f"{K.cell_id(sigma)} has dimension {sigma.dim}, not {K.dim}")
    return sigma


def boundary_of(K: CellComplex, sigma: CellRef) -> CellComplex:
    """The closure of ``sigma`` with ``sigma`` itself removed."""
    refs = closure(K, sigma) - {CellRef(*sigma)}
    return K.subcomplex(refs, f"boundary({K.cell_id(sigma)})")


def is_boundary_regular(K: CellComplex, sigma: CellRef) -> bool:
    sigma = CellRef(*sigma)
    h = homology(boundary_of(K, sigma), sigma.dim - 1, reduced=True)
    return h.betti == 1 and not h.torsion_factors


def is_bridge(K: CellComplex, sigma: CellRef) -> bool:
    cols = K.columns[sigma.dim]
    others = [c for i, c in enumerate(cols) if i != sigma.index]
    return integer_rank(others) == integer_rank(cols) - 1


def classify_cell(K: CellComplex, sigma: CellRef) -> CellClass:
    sigma = _top_cell(K, sigma)
    col = K.columns[sigma.dim][sigma.index]
    free = tuple(CellRef(sigma.dim - 1, r) for r, v in enumerate(col)
                 if abs(v) == 1 and is_free_face(K, sigma, CellRef(sigma.dim - 1, r)))
    return CellClass(
        cell=sigma,
        is_loop=not any(col),
        is_bridge=is_bridge(K, sigma),
        boundary_regular=is_boundary_regular(K, sigma),
        free_faces=free,
    )


def applicable_case(c: CellClass) -> str | None:
    """Which relation applies to a classified cell, collapse preferred for bridges."""
    if c.is_loop:
        return LOOP
    if c.is_bridge and c.free_faces:
        return COLLAPSE
    if c.is_bridge and c.boundary_regular:
        return BRIDGE
    if c.boundary_regular and not c.is_bridge:
        return REGULAR
    return None


@dataclass(frozen=True)
class SkeinReport:
    cell: str
    classification: CellClass
    case: str | None
    lhs: BiPoly
    rhs: BiPoly | None
    deleted: BiPoly | None
    contracted: BiPoly | None
    collapsed: BiPoly | None = None

    @property
    def holds(self) -> bool:
        return self.rhs is not None and self.lhs == self.rhs

    @property
    def applicable(self) -> bool:
        return self.case is not None


def verify_skein(K: CellComplex, sigma: CellRef, cap: int | None = DEFAULT_CAP) -> SkeinReport:
    """Compute both sides of the relation that applies to ``sigma``.

    When no relation applies, ``case`` and ``rhs`` are ``None`` and the report
    still carries ``T(K - s)`` and ``T(K / s)`` so the failure of the plain
    sum can be inspected.
    """
    c = classify_cell(K, sigma)
    k = K.dim
    lhs = tkr(K, k, cap)
    deleted = tkr(delete_cell(K, c.cell), k, cap)
    contracted = None if c.is_loop else tkr(contract_closure(K, c.cell), k, cap)
    collapsed = tkr(collapse(K, c.cell, c.free_faces[0]), k, cap) if c.free_faces else None
    case = applicable_case(c)
    x1, y1 = BiPoly.X() + 1, BiPoly.Y() + 1
    rhs = {
        LOOP: lambda: y1 * deleted,
        COLLAPSE: lambda: x1 * collapsed,
        BRIDGE: lambda: x1 * contracted,
        REGULAR: lambda: contracted + deleted,
        None: lambda: None,
    }[case]()
    return SkeinReport(K.cell_id(c.cell), c, case, lhs, rhs, deleted, contracted, collapsed)


def require_case(report: SkeinReport) -> SkeinReport:
    if report.case is None:
        raise NotApplicable(
            f"no skein relation applies to {report.cell}: it is not a loop, not a bridge with a free "
            f"face, and not boundary regular; T(K - s) = {report.deleted}, T(K / s) = {report.contracted}"
        )
    return report


@dataclass
class SkeinStep:
    """One node of the rewrite tree."""

    complex_name: str
    case: str
    cell: str | None = None
    result: BiPoly | None = None
    cached: bool = False
    children: list[SkeinStep] = field(default_factory=list)

    def lines(self, depth: int = 0) -> list[str]:
        pad = "  " * depth
        what = self.case if self.cell is None else f"{self.case} on {self.cell}"
        tag = " [cached]" if self.cached else ""
        out = [f"{pad}{self.complex_name}: {what} -> {self.result}{tag}"]
        for child in self.children:
            out += child.lines(depth + 1)
        return out

    def render(self) -> str:
        return "\n".join(self.lines())


class SkeinEvaluator:
    """Top TKR polynomial by recursive skein rewriting.

    At each step the first top cell (in index order, or reversed with
    ``order="highest"``) that admits a relation is rewritten.  Complexes with
    no top cells give 1; complexes where no cell qualifies are enumerated
    directly, subject to ``cap``.  Results are cached by boundary data.
    """

    def __init__(self, order: str = "lowest", cap: int | None = DEFAULT_CAP):
        if order not in ("lowest", "highest"):
            raise ValueError(f"order must be 'lowest' or 'highest', not {order!r}")
        self.order = order
        self.cap = cap
        self.cache: dict = {}

    def _pick(self, K: CellComplex) -> tuple[CellRef, str] | None:
        idx = range(K.f(K.dim))
        if self.order == "highest":
            idx = reversed(idx)
        for i in idx:
            case = applicable_case(classify_cell(K, CellRef(K.dim, i)))
            if case is not None:
                return CellRef(K.dim, i), case
        return None

    def evaluate(self, K: CellComplex) -> tuple[BiPoly, SkeinStep]:
        if K.dim < 1:
            raise OutOfRange(f"{K.name} has no cells of positive dimension")
        key = K.signature()
        if key in self.cache:
            return self.cache[key], SkeinStep(K.name, "reuse", result=self.cache[key], cached=True)
        step = SkeinStep(K.name, EMPTY)
        if K.f(K.dim) == 0:
            result = BiPoly.one()
        else:
            picked = self._pick(K)
            if picked is None:
                step.case = DIRECT
                result = tkr(K, K.dim, self.cap)
            else:
                sigma, case = picked
                step.case, step.cell = case, K.cell_id(sigma)
                result = self._apply(K, sigma, case, step.children)
        step.result = result
        self.cache[key] = result
        return result, step

    def _apply(self, K: CellComplex, sigma: CellRef, case: str, children: list) -> BiPoly:
        def sub(L: CellComplex) -> BiPoly:
            value, child = self.evaluate(L)
            children.append(child)
            return value

        if case == LOOP:
            return (BiPoly.Y() + 1) * sub(delete_cell(K, sigma))
        if case == COLLAPSE:
            tau = classify_cell(K, sigma).free_faces[0]
            return (BiPoly.X() + 1) * sub(collapse(K, sigma, tau))
        if case == BRIDGE:
            return (BiPoly.X() + 1) * sub(contract_closure(K, sigma))
        return sub(contract_closure(K, sigma)) + sub(delete_cell(K, sigma))


def skein_evaluate(K: CellComplex, order: str = "lowest", cap: int | None = DEFAULT_CAP) -> BiPoly:
    return SkeinEvaluator(order, cap).evaluate(K)[0]


def skein_trace(K: CellComplex, order: str = "lowest", cap: int | None = DEFAULT_CAP) -> tuple[BiPoly, SkeinStep]:
    return SkeinEvaluator(order, cap).evaluate(K)
