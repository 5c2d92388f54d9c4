"""Builtin complexes and the name/path resolver.

Hand-drawn examples are stored in the text format; regular families are
generated.  Sign conventions for incidence numbers are fixed per entry; any
consistent choice gives the same homology and polynomials.

Catalog (``manifold`` column: ``closed-orientable`` / ``other`` for connected
manifolds, blank otherwise)::

    point                       single vertex
    theta                       2 vertices, 3 parallel edges
    sphere                      S^2 as one 0-cell and one 2-cell      closed-orientable
    s2vs1                       S^2 with two points identified: s / e / p
    s2vs2                       s2vs1 plus a 2-cell sp glued along e
    sphere-three-cells          S^2: s1 s2 sinf / a b c / p q         closed-orientable
                                (a loop at p, c loop at q, b from p to q;
                                 d s1 = a, d s2 = c, d sinf = -a - c)
    sphere-three-cells-deleted  the above minus s1 and s2 (an annulus) other
    sphere-three-cells-star     planar dual of sphere-three-cells     closed-orientable
    rp2                         one cell per dimension, d2 = 2        other
    rp2-6                       6-vertex triangulation of RP^2        other
    rp3                         one cell per dimension, d2 = 2, d3 = 0 closed-orientable
    torus                       p / a b / s with d s = 0              closed-orientable
    klein-bottle                p / a b / s with d s = 2b             other
    disc                        p / e / s with d s = e                other
    tetrahedron-boundary        boundary of the 3-simplex             closed-orientable
    cube-surface                boundary of the cube                  closed-orientable
    octahedron-surface          boundary of the octahedron            closed-orientable
    prism-surface               boundary of the triangular prism      closed-orientable
    bipyramid-surface           boundary of the triangular bipyramid  closed-orientable
    simplex-skeleton(n,k)       k-skeleton of the simplex on n vertices
    torus-grid(m,n)             m x n square grid on the torus        closed-orientable
    klein-grid(m,n)             m x n square grid on the Klein bottle other
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from pathlib import Path
from typing import Callable, Sequence

from .complex import CellComplex, CellRef
from .errors import AmbiguousName, UnknownName
from .textformat import parse

CLOSED_ORIENTABLE = "closed-orientable"
OTHER = "other"

_TEXT = {
    "point": """
complex point dim=0
cells 0: p
""",
    "theta": """
complex theta dim=1
cells 0: p q
cells 1: a b c
boundary 1:
a = -1*p + 1*q
b = -1*p + 1*q
c = -1*p + 1*q
""",
    "sphere": """
complex sphere dim=2
cells 0: p
cells 1:
cells 2: s
boundary 1:
boundary 2:
s = 0*p@0
""",
    "s2vs1": """
complex s2vs1 dim=2
cells 0: p
cells 1: e
cells 2: s
boundary 1:
e = 0*p
boundary 2:
s = 0*e
""",
    "s2vs2": """
complex s2vs2 dim=2
cells 0: p
cells 1: e
cells 2: s sp
boundary 1:
e = 0*p
boundary 2:
s = 0*e
sp = 1*e
""",
    "sphere-three-cells": """
complex sphere-three-cells dim=2
cells 0: p q
cells 1: a b c
cells 2: s1 s2 sinf
boundary 1:
a = 0*p
b = -1*p + 1*q
c = 0*q
boundary 2:
s1 = 1*a
s2 = 1*c
sinf = -1*a + 0*b + -1*c
""",
    "sphere-three-cells-deleted": """
complex sphere-three-cells-deleted dim=2
cells 0: p q
cells 1: a b c
cells 2: sinf
boundary 1:
a = 0*p
b = -1*p + 1*q
c = 0*q
boundary 2:
sinf = -1*a + 0*b + -1*c
""",
    "sphere-three-cells-star": """
complex sphere-three-cells-star dim=2
cells 0: P1 P2 Pinf
cells 1: A B C
cells 2: Fp Fq
boundary 1:
A = -1*P1 + 1*Pinf
B = 0*Pinf
C = -1*P2 + 1*Pinf
boundary 2:
Fp = 0*A + 1*B
Fq = -1*B + 0*C
""",
    "rp2": """
complex rp2 dim=2
cells 0: p
cells 1: e
cells 2: s
boundary 1:
e = 0*p
boundary 2:
s = 2*e
""",
    "rp3": """
complex rp3 dim=3
cells 0: p
cells 1: e
cells 2: s
cells 3: t
boundary 1:
e = 0*p
boundary 2:
s = 2*e
boundary 3:
t = 0*s
""",
    "torus": """
complex torus dim=2
cells 0: p
cells 1: a b
cells 2: s
boundary 1:
a = 0*p
b = 0*p
boundary 2:
s = 0*a + 0*b
""",
    "klein-bottle": """
complex klein-bottle dim=2
cells 0: p
cells 1: a b
cells 2: s
boundary 1:
a = 0*p
b = 0*p
boundary 2:
s = 0*a + 2*b
""",
    "disc": """
complex disc dim=2
cells 0: p
cells 1: e
cells 2: s
boundary 1:
e = 0*p
boundary 2:
s = 1*e
""",
}

# six-vertex real projective plane (hemi-icosahedron)
RP2_6_FACETS = (
    (1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5),
    (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 6), (4, 5, 6),
)


def simplicial_complex(name: str, facets: Sequence[Sequence], vertices: Sequence | None = None) -> CellComplex:
    """Oriented simplicial chain complex generated by ``facets``.

    Simplices are sorted tuples of vertices, ordered by dimension and then
    lexicographically; cell ids join the vertex names (with ``-`` when any
    name is longer than one character).
    """
    verts = sorted({v for f in facets for v in f} | set(vertices or ()))
    order = {v: i for i, v in enumerate(verts)}
    simplices: set[tuple] = set()
    for f in facets:
        f = tuple(sorted(f, key=order.__getitem__))
        for r in range(1, len(f) + 1):
            simplices.update(combinations(f, r))
    simplices.update((v,) for v in verts)
    k = max(len(s) for s in simplices) - 1 if simplices else 0
    by_dim = [sorted((s for s in simplices if len(s) == j + 1), key=lambda s: [order[v] for v in s])
              for j in range(k + 1)]
    sep = "" if all(len(str(v)) == 1 for v in verts) else "-"
    ids = [tuple(sep.join(str(v) for v in s) for s in cells) for cells in by_dim]
    index = [{s: i for i, s in enumerate(cells)} for cells in by_dim]
    columns = [((),) * len(by_dim[0])]
    for j in range(1, k + 1):
        cols = []
        for s in by_dim[j]:
            col = [0] * len(by_dim[j - 1])
            for t in range(len(s)):
                col[index[j - 1][s[:t] + s[t + 1:]]] = (-1) ** t
            cols.append(tuple(col))
        columns.append(tuple(cols))
    return CellComplex(name, tuple(ids), tuple(columns))


def polygon_complex(
    name: str,
    vertices: Sequence[str],
    polygons: Sequence[tuple[str, Sequence[str]]],
    sep: str = "-",
) -> CellComplex:
    """2-complex from named polygons given as vertex cycles.

    An edge is determined by its two endpoints and is oriented from the
    earlier to the later vertex; it is named ``u<sep>v``.
    """
    order = {v: i for i, v in enumerate(vertices)}
    edges: set[tuple[str, str]] = set()
    for _, cyc in polygons:
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            edges.add((u, v) if order[u] < order[v] else (v, u))
    edges_sorted = sorted(edges, key=lambda e: (order[e[0]], order[e[1]]))
    eindex = {e: i for i, e in enumerate(edges_sorted)}
    d1 = []
    for u, v in edges_sorted:
        col = [0] * len(vertices)
        col[order[u]] -= 1
        col[order[v]] += 1
        d1.append(tuple(col))
    d2 = []
    for _, cyc in polygons:
        col = [0] * len(edges_sorted)
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            if order[u] < order[v]:
                col[eindex[(u, v)]] += 1
            else:
                col[eindex[(v, u)]] -= 1
        d2.append(tuple(col))
    cells = (tuple(vertices), tuple(f"{u}{sep}{v}" for u, v in edges_sorted), tuple(n for n, _ in polygons))
    return CellComplex(name, cells, (((),) * len(vertices), tuple(d1), tuple(d2)))


def cube_surface() -> CellComplex:
    vertices = ["".join(map(str, b)) for b in product((0, 1), repeat=3)]
    polygons = []
    for axis, val in product(range(3), (0, 1)):
        others = [a for a in range(3) if a != axis]
        cyc = []
        for u, v in ((0, 0), (1, 0), (1, 1), (0, 1)):
            bits = [0, 0, 0]
            bits[axis], bits[others[0]], bits[others[1]] = val, u, v
            cyc.append("".join(map(str, bits)))
        polygons.append((f"{'xyz'[axis]}{val}", cyc))
    return polygon_complex("cube-surface", ["v" + v for v in vertices],
                           [(n, ["v" + v for v in c]) for n, c in polygons])


def octahedron_surface() -> CellComplex:
    vertices = [f"{a}{s}" for a in "xyz" for s in "mp"]
    polygons = []
    for signs in product("mp", repeat=3):
        polygons.append(("f" + "".join(signs), [f"{a}{s}" for a, s in zip("xyz", signs)]))
    return polygon_complex("octahedron-surface", vertices, polygons)


def prism_surface() -> CellComplex:
    """Triangles ``bottom``/``top`` and squares ``side0..side2``; vertices ``a0..a2`` below ``b0..b2``."""
    polygons = [("bottom", ["a0", "a2", "a1"]), ("top", ["b0", "b1", "b2"])]
    polygons += [(f"side{i}", [f"a{i}", f"a{(i + 1) % 3}", f"b{(i + 1) % 3}", f"b{i}"]) for i in range(3)]
    return polygon_complex("prism-surface", ["a0", "a1", "a2", "b0", "b1", "b2"], polygons)


def bipyramid_surface() -> CellComplex:
    """Apexes ``n``/``s`` over the triangle ``e0 e1 e2``; face ``ui``/``li`` spans ``e(i-1) ei``."""
    polygons = [(f"l{i}", ["s", f"e{i}", f"e{(i - 1) % 3}"]) for i in range(3)]
    polygons += [(f"u{i}", ["n", f"e{(i - 1) % 3}", f"e{i}"]) for i in range(3)]
    return polygon_complex("bipyramid-surface", ["n", "s", "e0", "e1", "e2"], polygons)


def grid_surface(m: int, n: int, twisted: bool) -> CellComplex:
    """``m x n`` square grid on the torus, or on the Klein bottle when ``twisted``."""
    if m < 3 or n < 3:
        raise ValueError("grid surfaces need m, n >= 3")

    def vert(i: int, j: int) -> str:
        if j == n:
            i, j = ((-i) % m if twisted else i % m), 0
        return f"v{i % m}_{j}"

    vertices = [f"v{i}_{j}" for j in range(n) for i in range(m)]
    polygons = [(f"f{i}_{j}", [vert(i, j), vert(i + 1, j), vert(i + 1, j + 1), vert(i, j + 1)])
                for j in range(n) for i in range(m)]
    kind = "klein-grid" if twisted else "torus-grid"
    return polygon_complex(f"{kind}({m},{n})", vertices, polygons, sep="~")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], CellComplex]
    manifold: str | None = None


def _text_entry(name: str, manifold: str | None = None) -> CatalogEntry:
    return CatalogEntry(name, lambda: parse(_TEXT[name]), manifold)


def _tetrahedron() -> CellComplex:
    return simplicial_complex("tetrahedron-boundary", list(combinations(range(4), 3)))


_ENTRIES = [
    _text_entry("point"),
    _text_entry("theta"),
    _text_entry("sphere", CLOSED_ORIENTABLE),
    _text_entry("s2vs1"),
    _text_entry("s2vs2"),
    _text_entry("sphere-three-cells", CLOSED_ORIENTABLE),
    _text_entry("sphere-three-cells-deleted", OTHER),
    _text_entry("sphere-three-cells-star", CLOSED_ORIENTABLE),
    _text_entry("rp2", OTHER),
    CatalogEntry("rp2-6", lambda: simplicial_complex("rp2-6", RP2_6_FACETS), OTHER),
    _text_entry("rp3", CLOSED_ORIENTABLE),
    _text_entry("torus", CLOSED_ORIENTABLE),
    _text_entry("klein-bottle", OTHER),
    _text_entry("disc", OTHER),
    CatalogEntry("tetrahedron-boundary", _tetrahedron, CLOSED_ORIENTABLE),
    CatalogEntry("cube-surface", cube_surface, CLOSED_ORIENTABLE),
    CatalogEntry("octahedron-surface", octahedron_surface, CLOSED_ORIENTABLE),
    CatalogEntry("prism-surface", prism_surface, CLOSED_ORIENTABLE),
    CatalogEntry("bipyramid-surface", bipyramid_surface, CLOSED_ORIENTABLE),
]
CATALOG = {e.name: e for e in _ENTRIES}

_FAMILY_RE = re.compile(r"^(?P<family>simplex-skeleton|torus-grid|klein-grid)\((?P<a>\d+),(?P<b>\d+)\)$")

# parameterised members exercised by tests and listed by the CLI
FAMILY_EXAMPLES = ("simplex-skeleton(4,1)", "simplex-skeleton(5,2)", "torus-grid(3,3)", "klein-grid(3,3)")


def simplex_skeleton(n: int, k: int) -> CellComplex:
    if not 0 <= k < n:
        raise UnknownName(f"simplex-skeleton({n},{k}) needs 0 <= k < n")
    return simplicial_complex(f"simplex-skeleton({n},{k})", list(combinations(range(n), k + 1)))


def builtin_names() -> list[str]:
    return list(CATALOG) + list(FAMILY_EXAMPLES)


def is_builtin(name: str) -> bool:
    return name.replace(" ", "") in CATALOG or _FAMILY_RE.match(name.replace(" ", "")) is not None


@lru_cache(maxsize=None)
def builtin(name: str) -> CellComplex:
    key = name.replace(" ", "")
    if key in CATALOG:
        return CATALOG[key].build()
    m = _FAMILY_RE.match(key)
    if m:
        a, b = int(m["a"]), int(m["b"])
        if m["family"] == "simplex-skeleton":
            return simplex_skeleton(a, b)
        try:
            return grid_surface(a, b, twisted=m["family"] == "klein-grid")
        except ValueError as exc:
            raise UnknownName(f"{name}: {exc}") from None
    raise UnknownName(f"unknown builtin complex {name!r}")


def manifold_kind(name: str) -> str | None:
    """Manifold flag of a builtin: closed-orientable, other, or None."""
    key = name.replace(" ", "")
    if key in CATALOG:
        return CATALOG[key].manifold
    m = _FAMILY_RE.match(key)
    if not m:
        raise UnknownName(f"unknown builtin complex {name!r}")
    a, b = int(m["a"]), int(m["b"])
    if m["family"] == "torus-grid":
        return CLOSED_ORIENTABLE
    if m["family"] == "klein-grid":
        return OTHER
    if b >= 1 and a == b + 2:
        return CLOSED_ORIENTABLE
    if b >= 1 and a == b + 1:
        return OTHER
    return None


def resolve_complex(spec: str, base_dir: str | os.PathLike | None = None) -> CellComplex:
    """A builtin name or a path to a complex file; a name that is both is an error."""
    path = Path(base_dir or ".") / spec
    builtin_hit = is_builtin(spec)
    file_hit = path.is_file()
    if builtin_hit and file_hit:
        raise AmbiguousName(f"{spec!r} is both a builtin name and a file")
    if builtin_hit:
        return builtin(spec)
    if file_hit:
        return parse(path.read_text(encoding="utf-8"))
    raise UnknownName(f"{spec!r} is neither a builtin complex nor a readable file")


def cell(K: CellComplex, spec: str) -> CellRef:
    """Resolve ``id`` or ``id@dim``."""
    cid, at, dim = spec.partition("@")
    if at and not dim.isdigit():
        raise UnknownName(f"bad cell reference {spec!r}; use id or id@dim")
    return K.ref(cid, int(dim) if at else None)
