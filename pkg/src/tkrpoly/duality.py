"""Paired dual cell decompositions of a sphere, and the checks they support.

A :class:`DualPair` holds two cell structures ``K`` and ``K*`` of ``S^k``
with a bijection from the ``j``-cells of ``K`` to the ``(k-j)``-cells of
``K*`` for every ``j``.  The pairing is input data; nothing here derives it
from geometry.

Pair files look like::

    dual cube-surface octahedron-surface
    x0 ~ xm
    v000 ~ fmmm
    v000-v001 ~ ym-zm     # ids may be qualified as id@dim

Complex names resolve as builtins first and then as paths relative to the
pair file.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .catalog import builtin, resolve_complex
from .complex import DEFAULT_CAP, CellComplex, CellRef, SpanningSubcomplex, check_cap
from .errors import InvalidDualPair, ParseError, RangeError, UnknownName
from .homology import homology
from .polynomial import BiPoly
from .tkr import modified_tkr, tkr


@dataclass(frozen=True)
class DualPair:
    """``corr[j][i]`` is the index of the ``(k-j)``-cell of ``K_star`` paired with ``K.cells[j][i]``."""

    name: str
    K: CellComplex
    K_star: CellComplex
    corr: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        k = self.K.dim
        if self.K_star.dim != k:
            raise InvalidDualPair(f"{self.K.name} has dimension {k} but {self.K_star.name} has {self.K_star.dim}")
        if len(self.corr) != k + 1:
            raise InvalidDualPair("the correspondence needs one bijection per dimension")
        for j, m in enumerate(self.corr):
            if self.K.f(j) != self.K_star.f(k - j):
                raise InvalidDualPair(
                    f"{self.K.name} has {self.K.f(j)} {j}-cells but {self.K_star.name} "
                    f"has {self.K_star.f(k - j)} {k - j}-cells"
                )
            if sorted(m) != list(range(self.K.f(j))):
                raise InvalidDualPair(f"the pairing of {j}-cells is not a bijection")

    @property
    def k(self) -> int:
        return self.K.dim

    def dual_cell(self, ref: CellRef) -> CellRef:
        return CellRef(self.k - ref.dim, self.corr[ref.dim][ref.index])

    def reversed(self) -> DualPair:
        inv = []
        for j in range(self.k + 1):
            m = self.corr[self.k - j]
            back = [0] * len(m)
            for i, t in enumerate(m):
                back[t] = i
            inv.append(tuple(back))
        return DualPair(f"{self.name}-reversed", self.K_star, self.K, tuple(inv))

    def lines(self) -> list[tuple[str, str]]:
        return [(self.K.cells[j][i], self.K_star.cells[self.k - j][t])
                for j in range(self.k + 1) for i, t in enumerate(self.corr[j])]


def sphere_defects(K: CellComplex) -> list[str]:
    """Why ``K`` does not have the integral homology of ``S^k`` (empty when it does)."""
    out = []
    for j in range(K.dim + 1):
        h = homology(K, j, reduced=True)
        want = 1 if j == K.dim else 0
        if h.betti != want or h.torsion_factors:
            out.append(f"reduced H_{j}({K.name}) = {h}")
    return out


def validate_pair(P: DualPair) -> None:
    problems = sphere_defects(P.K) + sphere_defects(P.K_star)
    if problems:
        raise InvalidDualPair("not a homology sphere: " + "; ".join(problems))


# -- pair files ---------------------------------------------------------------


def _lookup(K: CellComplex, token: str, dim: int, lineno: int, column: int) -> int:
    cid, at, d = token.partition("@")
    if at:
        if not d.isdigit():
            raise ParseError(f"bad dimension in {token!r}", lineno, column)
        if int(d) != dim:
            raise InvalidDualPair(f"line {lineno}: {token} should be a {dim}-cell")
    if not 0 <= dim <= K.dim or cid not in K.cells[dim]:
        raise UnknownName(f"line {lineno}: no {dim}-cell {cid!r} in {K.name}")
    return K.cells[dim].index(cid)


def _dimension_of(K: CellComplex, token: str, lineno: int, column: int) -> int:
    cid, at, d = token.partition("@")
    if at:
        if not d.isdigit():
            raise ParseError(f"bad dimension in {token!r}", lineno, column)
        return int(d)
    dims = [j for j in range(K.dim + 1) if cid in K.cells[j]]
    if not dims:
        raise UnknownName(f"line {lineno}: no cell {cid!r} in {K.name}")
    if len(dims) > 1:
        raise ParseError(f"cell id {cid!r} occurs in dimensions {dims}; qualify it as id@dim", lineno, column)
    return dims[0]


def parse_pair(text: str, base_dir: str | os.PathLike | None = None,
               resolve: Callable[[str], CellComplex] | None = None) -> DualPair:
    """Read a pair file; every cell of ``K`` must be paired exactly once."""
    if resolve is None:
        def resolve(spec: str) -> CellComplex:
            return resolve_complex(spec, base_dir)

    K = K_star = None
    corr: list[dict[int, int]] = []
    used: list[set[int]] = []
    name = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        column = raw.index(line[0]) + 1
        if K is None:
            words = line.split()
            if len(words) != 3 or words[0] != "dual":
                raise ParseError("expected 'dual <complex> <dual complex>'", lineno, column)
            K, K_star = resolve(words[1]), resolve(words[2])
            if K.dim != K_star.dim:
                raise InvalidDualPair(f"{K.name} and {K_star.name} have different dimensions")
            corr = [dict() for _ in range(K.dim + 1)]
            used = [set() for _ in range(K.dim + 1)]
            name = f"{K.name}~{K_star.name}"
            continue
        left, tilde, right = line.partition("~")
        left, right = left.strip(), right.strip()
        if not tilde or not left or not right or len(left.split()) != 1 or len(right.split()) != 1:
            raise ParseError("expected '<cell> ~ <dual cell>'", lineno, column)
        j = _dimension_of(K, left, lineno, column)
        if not 0 <= j <= K.dim:
            raise InvalidDualPair(f"line {lineno}: {left} has no dimension in {K.name}")
        i = _lookup(K, left, j, lineno, column)
        t = _lookup(K_star, right, K.dim - j, lineno, raw.index("~") + 2)
        if i in corr[j]:
            raise InvalidDualPair(f"line {lineno}: {left} is paired twice")
        if t in used[j]:
            raise InvalidDualPair(f"line {lineno}: {right} is paired twice")
        corr[j][i] = t
        used[j].add(t)
    if K is None:
        raise ParseError("empty pair file", 1, 1)
    for j in range(K.dim + 1):
        missing = [K.cells[j][i] for i in range(K.f(j)) if i not in corr[j]]
        if missing:
            raise InvalidDualPair(f"unpaired {j}-cells of {K.name}: {', '.join(missing)}")
    return DualPair(name, K, K_star, tuple(tuple(c[i] for i in range(len(c))) for c in corr))


def serialize_pair(P: DualPair) -> str:
    out = [f"dual {P.K.name} {P.K_star.name}"]
    for j in range(P.k + 1):
        for i, t in enumerate(P.corr[j]):
            a, b = P.K.cells[j][i], P.K_star.cells[P.k - j][t]
            if sum(a in c for c in P.K.cells) > 1:
                a += f"@{j}"
            if sum(b in c for c in P.K_star.cells) > 1:
                b += f"@{P.k - j}"
            out.append(f"{a} ~ {b}")
    return "\n".join(out) + "\n"


def load_pair(spec: str) -> DualPair:
    """A catalog pair by name, or a pair file."""
    if spec in PAIR_CATALOG:
        return catalog_pair(spec)
    path = Path(spec)
    if not path.is_file():
        raise UnknownName(f"{spec!r} is neither a catalog pair nor a readable pair file")
    return parse_pair(path.read_text(), base_dir=path.parent)


# -- catalog pairs -------------------------------------------------------------


def _surface_pair(name: str, K: CellComplex, K_star: CellComplex,
                  vertex_to_face: dict[str, str], face_to_vertex: dict[str, str]) -> DualPair:
    """Pair two surfaces from their vertex/face pairing; edges follow by adjacency.

    Each edge of ``K`` lies on (at most) two faces; its dual is the edge of
    ``K*`` joining the duals of those faces.
    """
    def adjacent_faces(L: CellComplex, e: int) -> frozenset[int]:
        return frozenset(f for f in range(L.f(2)) if CellRef(1, e) in L.faces[2][f])

    def ends(L: CellComplex, e: int) -> frozenset[int]:
        return frozenset(r.index for r in L.faces[1][e])

    star_edges: dict[frozenset[int], list[int]] = {}
    for e in range(K_star.f(1)):
        star_edges.setdefault(ends(K_star, e), []).append(e)
    edges = []
    for e in range(K.f(1)):
        duals = frozenset(K_star.cells[0].index(face_to_vertex[K.cells[2][f]]) for f in adjacent_faces(K, e))
        options = star_edges.get(duals, [])
        if len(options) != 1:
            raise InvalidDualPair(f"cannot pair edge {K.cells[1][e]} by adjacency")
        edges.append(options[0])
    corr = (
        tuple(K_star.cells[2].index(vertex_to_face[v]) for v in K.cells[0]),
        tuple(edges),
        tuple(K_star.cells[0].index(face_to_vertex[f]) for f in K.cells[2]),
    )
    return DualPair(name, K, K_star, corr)


def _tetrahedron_pair() -> DualPair:
    K = builtin("tetrahedron-boundary")
    every = set("0123")

    def opposite(s: str) -> str:
        return "".join(sorted(every - set(s)))

    corr = tuple(tuple(K.cells[2 - j].index(opposite(c)) for c in K.cells[j]) for j in range(3))
    return DualPair("tetrahedron-self-dual", K, K, corr)


def _cube_octahedron_pair() -> DualPair:
    K, K_star = builtin("cube-surface"), builtin("octahedron-surface")
    sign = {"0": "m", "1": "p"}
    faces = {f"{a}{v}": f"{a}{sign[v]}" for a in "xyz" for v in "01"}
    verts = {v: "f" + "".join(sign[b] for b in v[1:]) for v in K.cells[0]}
    return _surface_pair("cube-octahedron", K, K_star, verts, faces)


def _prism_bipyramid_pair() -> DualPair:
    K, K_star = builtin("prism-surface"), builtin("bipyramid-surface")
    faces = {"bottom": "s", "top": "n", **{f"side{i}": f"e{i}" for i in range(3)}}
    verts = {**{f"a{i}": f"l{i}" for i in range(3)}, **{f"b{i}": f"u{i}" for i in range(3)}}
    return _surface_pair("prism-bipyramid", K, K_star, verts, faces)


_THREE_CELLS_TEXT = """\
dual sphere-three-cells sphere-three-cells-star
p ~ Fp
q ~ Fq
a ~ A
b ~ B
c ~ C
s1 ~ P1
s2 ~ P2
sinf ~ Pinf
"""


PAIR_CATALOG: dict[str, Callable[[], DualPair]] = {
    "tetrahedron-self-dual": _tetrahedron_pair,
    "cube-octahedron": _cube_octahedron_pair,
    "octahedron-cube": lambda: _cube_octahedron_pair().reversed(),
    "prism-bipyramid": _prism_bipyramid_pair,
    "sphere-three-cells-dual": lambda: parse_pair(_THREE_CELLS_TEXT, resolve=builtin),
}


def catalog_pair(name: str) -> DualPair:
    try:
        build = PAIR_CATALOG[name]
    except KeyError:
        raise UnknownName(f"no catalog dual pair {name!r}") from None
    P = build()
    return DualPair(name, P.K, P.K_star, P.corr)


# -- checks ----------------------------------------------------------------------


def dual_subcomplex(P: DualPair, S: SpanningSubcomplex) -> SpanningSubcomplex:
    """The ``(k-j)``-subcomplex of ``K*`` whose top cells dualize the ``j``-cells missing from ``S``."""
    if S.parent != P.K:
        raise InvalidDualPair("the subcomplex does not belong to the first complex of the pair")
    mask = 0
    for i, t in enumerate(P.corr[S.j]):
        if i not in S:
            mask |= 1 << t
    return SpanningSubcomplex(P.K_star, P.k - S.j, mask)


@dataclass(frozen=True)
class DualityReport:
    j: int
    modified: bool
    left: BiPoly
    right: BiPoly

    @property
    def holds(self) -> bool:
        return self.left == self.right.swap()


def check_duality(P: DualPair, j: int, modified: bool = False, cap: int | None = DEFAULT_CAP,
                  threads: int = 1) -> DualityReport:
    """Compare ``T^j_K(X, Y)`` with ``T^{k-j}_{K*}(Y, X)`` (or the modified versions).

    The plain identity is checked for ``0 <= j <= k`` (degree 0 uses reduced
    Betti numbers); the modified one only for ``1 <= j <= k-1``.
    """
    k = P.k
    lo, hi = (1, k - 1) if modified else (0, k)
    if not lo <= j <= hi:
        kind = "modified" if modified else "plain"
        raise RangeError(f"{kind} duality is defined for {lo} <= j <= {hi}, got j = {j}")
    poly = modified_tkr if modified else tkr
    return DualityReport(j, modified, poly(P.K, j, cap, threads), poly(P.K_star, k - j, cap, threads))


IDENTITIES = ("betti_top", "betti_below", "torsion")


@dataclass
class AlexanderReport:
    j: int
    checked: int = 0
    strict: bool = False
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures


def check_alexander_identities(
    P: DualPair,
    j: int,
    cap: int | None = DEFAULT_CAP,
    masks: Iterable[int] | None = None,
    samples: int | None = None,
    seed: int = 0,
    strict: bool = False,
) -> AlexanderReport:
    """Check, for each spanning ``S`` at degree ``j`` and its dual ``S*``,

    * ``b_j(S) = b~_{k-j-1}(S*)``,
    * ``b~_{j-1}(S) = b_{k-j}(S*)``,
    * ``|tor H~_{j-1}(S)| = |tor H~_{k-j-1}(S*)|`` (invariant factors when ``strict``).

    All ``2**f_j`` subsets by default; ``masks`` or ``samples`` restrict that.
    """
    k = P.k
    if not 1 <= j <= k - 1:
        raise RangeError(f"the identities need 1 <= j <= {k - 1}, got j = {j}")
    total = 1 << P.K.f(j)
    if masks is None:
        if samples is not None and samples < total:
            masks = random.Random(seed).sample(range(total), samples)
        else:
            check_cap(P.K.f(j), cap)
            masks = range(total)
    report = AlexanderReport(j, strict=strict)
    for mask in masks:
        S = SpanningSubcomplex(P.K, j, mask)
        D = dual_subcomplex(P, S)
        low = homology(S, j - 1, reduced=True)
        dual_low = homology(D, k - j - 1, reduced=True)
        if homology(S, j).betti != dual_low.betti:
            report.failures.append((mask, "betti_top"))
        if low.betti != homology(D, k - j).betti:
            report.failures.append((mask, "betti_below"))
        same = (low.torsion_factors == dual_low.torsion_factors if strict
                else low.torsion_order == dual_low.torsion_order)
        if not same:
            report.failures.append((mask, "torsion"))
        report.checked += 1
    return report
