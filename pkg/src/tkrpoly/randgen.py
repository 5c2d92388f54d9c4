"""Seeded random complexes for property tests and the acceptance suite.

Two families: cell complexes built level by level (every new boundary is a
random integer combination of cycles of the level below, so torsion and zero
incidences appear often), and random simplicial complexes.
"""

from __future__ import annotations

import random
from itertools import combinations

from .catalog import simplicial_complex
from .complex import CellComplex, CellRef
from .linalg import nullspace


def _cycles(columns: list[tuple[int, ...]], rows: int) -> list[list[int]]:
    """Integer cycles spanning the kernel of the map with these columns."""
    return nullspace([[col[r] for col in columns] for r in range(rows)], len(columns))


def random_cell_complex(
    rng: random.Random,
    dim: int = 2,
    max_cells: tuple[int, ...] = (4, 5, 5, 3),
    coef: int = 2,
    name: str = "random",
) -> CellComplex:
    """A random CW chain complex of the given dimension with small coefficients.

    Each 1-cell joins two random vertices (possibly the same one).  Each
    higher cell gets a random combination, with coefficients in
    ``-coef..coef``, of a basis of cycles one level down.  Cells whose boundary
    comes out zero are attached at a vertex.
    """
    f0 = rng.randint(1, max_cells[0])
    cells = [[f"v{i}" for i in range(f0)]]
    columns: list[list[tuple[int, ...]]] = [[() for _ in range(f0)]]
    for j in range(1, dim + 1):
        n = rng.randint(1, max_cells[min(j, len(max_cells) - 1)])
        cols = []
        if j == 1:
            for _ in range(n):
                a, b = rng.randrange(f0), rng.randrange(f0)
                col = [0] * f0
                col[a] -= 1
                col[b] += 1
                cols.append(tuple(col))
        else:
            basis = _cycles(columns[j - 1], len(cells[j - 2]))
            for _ in range(n):
                col = [0] * len(cells[j - 1])
                for z in basis:
                    c = rng.randint(-coef, coef)
                    col = [x + c * y for x, y in zip(col, z)]
                cols.append(tuple(col))
        cells.append([f"{'vefgh'[min(j, 4)]}{i}" for i in range(n)])
        columns.append(cols)
    faces = []
    for j, cols in enumerate(columns):
        per = []
        for col in cols:
            fs = {CellRef(j - 1, r) for r, v in enumerate(col) if v}
            if j > 0 and not fs:
                fs = {CellRef(0, rng.randrange(f0))}
            per.append(frozenset(fs))
        faces.append(tuple(per))
    return CellComplex(name, tuple(map(tuple, cells)), tuple(map(tuple, columns)), tuple(faces))


def random_simplicial_complex(
    rng: random.Random,
    vertices: int = 5,
    dim: int = 2,
    facets: int = 4,
    name: str = "random-simplicial",
) -> CellComplex:
    """The closure of ``facets`` random ``dim``-simplices on ``vertices`` vertices."""
    pool = list(combinations(range(vertices), dim + 1))
    chosen = rng.sample(pool, min(facets, len(pool)))
    return simplicial_complex(name, chosen, range(vertices))


def random_complex(rng: random.Random, max_top: int = 8) -> CellComplex:
    """A random complex of dimension 1 to 3 with at most ``max_top`` top cells."""
    while True:
        kind = rng.random()
        if kind < 0.55:
            K = random_cell_complex(rng, dim=rng.choice((1, 2, 2, 3)))
        else:
            d = rng.choice((1, 2, 2, 3))
            K = random_simplicial_complex(rng, vertices=rng.randint(d + 1, d + 3), dim=d,
                                          facets=rng.randint(1, max_top))
        if 1 <= K.f(K.dim) <= max_top:
            return K
