"""Plain-text complex format.

::

    complex rp2 dim=2
    cells 0: p
    cells 1: e
    cells 2: s
    boundary 1:
    e = 0*p
    boundary 2:
    s = 2*e

Each boundary line lists ``<coef>*<face-id>`` terms joined by ``+`` (or
``-``); omitted faces have coefficient zero.  A term with coefficient 0
records a geometric face without algebraic incidence.  ``<face-id>@<dim>``
names a zero-coefficient face of lower dimension than ``j-1``.  A bare
``0`` (or nothing) after ``=`` is the empty boundary; ``1*0`` is vertex
``0``.  Optional ``label <j> <id> <text>`` lines follow the cell lists, and
``#`` starts a comment.
"""

from __future__ import annotations

import re

from .complex import CellComplex, CellRef
from .errors import ParseError

_ID = r"[^\s*=@#+\-][^\s*=@#+]*"
_ID_RE = re.compile(rf"^{_ID}$")
_TERM_RE = re.compile(rf"^(?:(?P<coef>[+-]?\d+)\*)?(?P<neg>-)?(?P<id>{_ID})(?:@(?P<dim>\d+))?$")
_HEADER_RE = re.compile(r"^complex\s+(?P<name>\S+)\s+dim=(?P<k>\d+)$")
_CELLS_RE = re.compile(r"^cells\s+(?P<j>\d+)\s*:(?P<ids>.*)$")
_BOUNDARY_RE = re.compile(r"^boundary\s+(?P<j>\d+)\s*:$")
_LABEL_RE = re.compile(r"^label\s+(?P<j>\d+)\s+(?P<id>\S+)\s+(?P<text>.+)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse(text: str) -> CellComplex:
    lines = [(n, _strip(raw)) for n, raw in enumerate(text.splitlines(), start=1)]
    lines = [(n, s) for n, s in lines if s]
    if not lines:
        raise ParseError("empty input", 1)
    pos = 0

    n, line = lines[pos]
    m = _HEADER_RE.match(line)
    if not m:
        raise ParseError("expected 'complex <name> dim=<k>'", n, 1)
    name, k = m["name"], int(m["k"])
    pos += 1

    cells: list[tuple[str, ...]] = []
    for j in range(k + 1):
        if pos >= len(lines):
            raise ParseError(f"missing 'cells {j}:' line", lines[-1][0] + 1)
        n, line = lines[pos]
        m = _CELLS_RE.match(line)
        if not m or int(m["j"]) != j:
            raise ParseError(f"expected 'cells {j}:'", n, 1)
        ids = tuple(m["ids"].split())
        for cid in ids:
            if not _ID_RE.match(cid):
                raise ParseError(f"invalid cell identifier {cid!r}", n, line.find(cid) + 1)
        if len(set(ids)) != len(ids):
            raise ParseError(f"duplicate cell identifier in dimension {j}", n)
        cells.append(ids)
        pos += 1

    labels: list[tuple[CellRef, str]] = []
    while pos < len(lines) and lines[pos][1].startswith("label"):
        n, line = lines[pos]
        m = _LABEL_RE.match(line)
        if not m or not 0 <= int(m["j"]) <= k or m["id"] not in cells[int(m["j"])]:
            raise ParseError("bad label line", n, 1)
        j = int(m["j"])
        labels.append((CellRef(j, cells[j].index(m["id"])), m["text"].strip()))
        pos += 1

    columns = [((),) * len(cells[0])]
    faces: list[tuple[frozenset[CellRef], ...]] = [(frozenset(),) * len(cells[0])]
    for j in range(1, k + 1):
        if pos >= len(lines):
            raise ParseError(f"missing 'boundary {j}:' block", lines[-1][0] + 1)
        n, line = lines[pos]
        m = _BOUNDARY_RE.match(line)
        if not m or int(m["j"]) != j:
            raise ParseError(f"expected 'boundary {j}:'", n, 1)
        pos += 1
        cols: dict[int, tuple[int, ...]] = {}
        fcs: dict[int, frozenset[CellRef]] = {}
        while pos < len(lines) and not _BOUNDARY_RE.match(lines[pos][1]):
            n, line = lines[pos]
            i, col, fs = _parse_boundary_line(line, n, j, cells)
            if i in cols:
                raise ParseError(f"boundary of {cells[j][i]} given twice", n, 1)
            cols[i], fcs[i] = col, fs
            pos += 1
        if len(cols) != len(cells[j]):
            missing = [cells[j][i] for i in range(len(cells[j])) if i not in cols]
            raise ParseError(
                f"boundary {j} has {len(cols)} columns but there are {len(cells[j])} "
                f"{j}-cells (missing: {' '.join(missing)})",
                n,
            )
        columns.append(tuple(cols[i] for i in range(len(cells[j]))))
        faces.append(tuple(fcs[i] for i in range(len(cells[j]))))
    if pos < len(lines):
        raise ParseError("unexpected trailing content", lines[pos][0], 1)
    return CellComplex(name, tuple(cells), tuple(columns), tuple(faces), tuple(labels))


def _parse_boundary_line(line: str, n: int, j: int, cells: list[tuple[str, ...]]):
    if "=" not in line:
        raise ParseError("expected '<cell-id> = <terms>'", n, 1)
    lhs, rhs = line.split("=", 1)
    cid = lhs.strip()
    if cid not in cells[j]:
        raise ParseError(f"{cid!r} is not a {j}-cell", n, 1)
    i = cells[j].index(cid)
    col = [0] * len(cells[j - 1])
    faces: set[CellRef] = set()
    tokens = rhs.split()
    if tokens in ([], ["0"]):
        return i, tuple(col), frozenset()
    sign = 1
    expect_term = True
    col_offset = len(lhs) + 2
    for tok in tokens:
        column = col_offset + rhs.find(tok) if tok in rhs else None
        if not expect_term:
            if tok not in "+-":
                raise ParseError(f"expected '+' or '-' before {tok!r}", n, column)
            sign = 1 if tok == "+" else -1
            expect_term = True
            continue
        m = _TERM_RE.match(tok)
        if not m:
            raise ParseError(f"cannot read term {tok!r}", n, column)
        coef = sign * int(m["coef"] or 1) * (-1 if m["neg"] else 1)
        dim = int(m["dim"]) if m["dim"] is not None else j - 1
        if not 0 <= dim < j or m["id"] not in cells[dim]:
            raise ParseError(f"{m['id']!r} is not a {dim}-cell", n, column)
        ref = CellRef(dim, cells[dim].index(m["id"]))
        if ref in faces:
            raise ParseError(f"face {m['id']!r} listed twice", n, column)
        if dim != j - 1:
            if coef:
                raise ParseError("only zero coefficients are allowed on lower-dimensional faces", n, column)
        else:
            col[ref.index] = coef
        faces.add(ref)
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError("dangling operator", n, len(line))
    return i, tuple(col), frozenset(faces)


def serialize(K: CellComplex) -> str:
    out = [f"complex {K.name} dim={K.dim}"]
    for j, ids in enumerate(K.cells):
        out.append(f"cells {j}:" + "".join(" " + c for c in ids))
    for ref, text in K.labels:
        out.append(f"label {ref.dim} {K.cell_id(ref)} {text}")
    for j in range(1, K.dim + 1):
        out.append(f"boundary {j}:")
        for i, cid in enumerate(K.cells[j]):
            col = K.columns[j][i]
            fs = K.faces[j][i]
            terms = [f"{col[r]}*{K.cells[j - 1][r]}" for r in range(len(col))
                     if col[r] or CellRef(j - 1, r) in fs]
            lower = sorted((r for r in fs if r.dim < j - 1), key=lambda r: (-r.dim, r.index))
            terms += [f"0*{K.cell_id(r)}@{r.dim}" for r in lower]
            out.append(f"{cid} = " + (" + ".join(terms) if terms else "0"))
    return "\n".join(out) + "\n"
