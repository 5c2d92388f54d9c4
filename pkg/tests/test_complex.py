from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tkrpoly.catalog import builtin, builtin_names, cell, resolve_complex, simplicial_complex
from tkrpoly.complex import (
    CellComplex,
    CellRef,
    SpanningSubcomplex,
    closure,
    collapse,
    contract_closure,
    delete_cell,
    disjoint_union,
    is_free_face,
    skeleton,
    spanning_subcomplexes,
    validate,
)
from tkrpoly.errors import (
    AmbiguousName,
    BoundarySquareNonzero,
    DimensionMismatch,
    NotDeletable,
    NotFreeFace,
    OutOfRange,
    TooLarge,
    UnknownName,
)
from tkrpoly.homology import homology
from tkrpoly.randgen import random_complex

from oracles import rank_q, row_major

ALL = builtin_names()


def all_homology(K, reduced=False):
    return [(h.betti, h.torsion_factors) for h in (homology(K, j, reduced) for j in range(K.dim + 1))]


@pytest.mark.parametrize("name", ALL)
def test_builtins_validate(name):
    validate(builtin(name))


def test_validate_rejects_nonzero_square():
    K = CellComplex.from_matrices("bad", [["p", "q"], ["e"], ["s"]], [[[-1], [1]], [[1]]])
    with pytest.raises(BoundarySquareNonzero) as info:
        validate(K)
    assert info.value.degree == 2 and info.value.value == -1


def test_validate_rejects_nonzero_augmentation():
    K = CellComplex.from_matrices("bad", [["p", "q"], ["e"]], [[[1], [1]]])
    with pytest.raises(BoundarySquareNonzero):
        validate(K)


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        CellComplex.from_matrices("bad", [["p"], ["e", "f"]], [[[0]]])
    with pytest.raises(DimensionMismatch):
        CellComplex("bad", (("p",), ("e",)), (((),), ((0, 0),)))


def test_rp2_catalog_convention():
    K = builtin("rp2")
    assert K.f_vector == (1, 1, 1)
    assert K.matrix(1) == ((0,),) and K.matrix(2) == ((2,),)


def test_sphere_three_cells_shape():
    K = builtin("sphere-three-cells")
    assert K.f_vector == (2, 3, 3)
    assert K.cells == (("p", "q"), ("a", "b", "c"), ("s1", "s2", "sinf"))


def test_simplex_skeleton_is_complete_graph():
    K = builtin("simplex-skeleton(4,1)")
    assert K.f_vector == (4, 6)
    assert sorted(K.cells[1]) == ["01", "02", "03", "12", "13", "23"]


def test_skeleton_examples():
    K = builtin("tetrahedron-boundary")
    assert skeleton(K, 2) is K
    G = skeleton(K, 1)
    assert G.dim == 1 and G.cells == K.cells[:2] and G.columns == K.columns[:2]
    S = skeleton(builtin("sphere-three-cells"), 1)
    assert S.cells == (("p", "q"), ("a", "b", "c"))
    assert [homology(S, j).betti for j in range(2)] == [1, 2]
    with pytest.raises(OutOfRange):
        skeleton(K, 3)


def test_spanning_subcomplexes_counts_and_order():
    K = builtin("sphere-three-cells")
    subs = list(spanning_subcomplexes(K, 2))
    assert [S.mask for S in subs] == list(range(8))
    assert subs[0].cell_ids() == () and subs[7].cell_ids() == ("s1", "s2", "sinf")
    rp2 = [S.cell_ids() for S in spanning_subcomplexes(builtin("rp2"), 2)]
    assert rp2 == [(), ("s",)]
    assert len(list(spanning_subcomplexes(builtin("sphere"), 1))) == 1


def test_spanning_cap():
    with pytest.raises(TooLarge):
        list(spanning_subcomplexes(builtin("torus-grid(3,3)"), 1, cap=17))
    assert sum(1 for _ in spanning_subcomplexes(builtin("torus-grid(3,3)"), 2, cap=9)) == 512


def test_spanning_from_ids():
    K = builtin("sphere-three-cells")
    S = SpanningSubcomplex.from_ids(K, 2, ["sinf", "s1"])
    assert S.mask == 0b101 and S.size == 2 and 0 in S and 1 not in S


def test_delete_examples():
    K = builtin("sphere-three-cells")
    D = delete_cell(K, cell(K, "sinf"))
    assert D.cells[2] == ("s1", "s2")
    # two discs joined by the segment b: contractible
    assert all_homology(D, reduced=True) == [(0, ()), (0, ()), (0, ())]
    circle = delete_cell(builtin("rp2"), CellRef(2, 0))
    assert all_homology(circle) == [(1, ()), (1, ()), (0, ())]
    with pytest.raises(NotDeletable):
        delete_cell(K, cell(K, "a"))


def test_contract_examples():
    s2vs2 = builtin("s2vs2")
    Q = contract_closure(s2vs2, cell(s2vs2, "sp"))
    assert Q.f_vector == (1, 0, 1)
    K = builtin("sphere-three-cells")
    W = contract_closure(K, cell(K, "sinf"))
    assert all_homology(W) == [(1, ()), (0, ()), (2, ())]  # wedge of two spheres
    for name in ("tetrahedron-boundary", "rp2", "torus", "cube-surface"):
        L = builtin(name)
        P = contract_closure(L, CellRef(L.dim, 0))
        validate(P)
        assert all(h == (0, ()) for h in all_homology(P, reduced=True)[1:]) or L.f(L.dim) > 1


def test_contract_single_top_cell_gives_point():
    for name in ("sphere", "rp2", "torus", "klein-bottle", "disc", "s2vs1"):
        K = builtin(name)
        P = contract_closure(K, CellRef(K.dim, 0))
        assert P.num_cells == 1


def relative_homology(K, A):
    """Homology of the chains of K modulo the chains of the subcomplex A."""
    keep = [[i for i in range(K.f(j)) if CellRef(j, i) not in A] for j in range(K.dim + 1)]
    out = []
    for j in range(K.dim + 1):
        def block(d):
            if d < 1 or d > K.dim:
                return []
            return [[K.columns[d][i][r] for i in keep[d]] for r in keep[d - 1]]
        r_out = rank_q(block(j)) if j >= 1 and keep[j] and keep[j - 1] else 0
        r_in = rank_q(block(j + 1)) if j + 1 <= K.dim and keep[j + 1] and keep[j] else 0
        out.append(len(keep[j]) - r_out - r_in)
    return out


@pytest.mark.parametrize("name", ["sphere-three-cells", "s2vs2", "tetrahedron-boundary", "rp2-6",
                                  "cube-surface", "simplex-skeleton(5,2)", "klein-grid(3,3)"])
def test_contract_is_relative_homology(name):
    K = builtin(name)
    for i in range(K.f(K.dim)):
        sigma = CellRef(K.dim, i)
        Q = contract_closure(K, sigma)
        validate(Q)
        assert [homology(Q, j, reduced=True).betti for j in range(Q.dim + 1)] == \
            relative_homology(K, closure(K, sigma))


def test_contract_degree_one_rule():
    K = builtin("theta")
    Q = contract_closure(K, cell(K, "a"))
    # b and c had one endpoint each in the closure: both become loops at the basepoint
    assert Q.cells[0] == ("*",) and Q.columns[1] == ((0,), (0,))
    G = simplicial_complex("path", [(0, 1), (1, 2)])
    Q = contract_closure(G, cell(G, "01"))
    assert Q.cells[0] == ("*", "2") and Q.columns[1] == ((-1, 1),)


def test_collapse_examples():
    K = builtin("sphere-three-cells-deleted")
    sigma, c = cell(K, "sinf"), cell(K, "c")
    assert is_free_face(K, sigma, c)
    L = collapse(K, sigma, c)
    assert L.cells == (("p", "q"), ("a", "b"), ())
    assert all_homology(L) == all_homology(K)
    disc = builtin("disc")
    P = collapse(disc, CellRef(2, 0), CellRef(1, 0))
    assert P.f_vector == (1, 0, 0) and all_homology(P) == all_homology(disc)
    with pytest.raises(NotFreeFace):
        collapse(builtin("rp2"), CellRef(2, 0), CellRef(1, 0))
    full = builtin("sphere-three-cells")
    with pytest.raises(NotFreeFace):
        collapse(full, cell(full, "sinf"), cell(full, "c"))


@pytest.mark.parametrize("name", ALL)
def test_operations_preserve_boundary_square(name):
    K = builtin(name)
    if K.dim == 0:
        return
    for i in range(K.f(K.dim)):
        sigma = CellRef(K.dim, i)
        for L in (delete_cell(K, sigma), contract_closure(K, sigma)):
            validate(L)
            assert L.num_cells < K.num_cells
        col = K.columns[K.dim][i]
        for r, v in enumerate(col):
            tau = CellRef(K.dim - 1, r)
            if is_free_face(K, sigma, tau):
                L = collapse(K, sigma, tau)
                validate(L)
                assert all_homology(L) == all_homology(K)


def test_collapse_on_simplicial_balls():
    # a triangulated disc collapses face by face down to a point
    K = simplicial_complex("fan", [(0, 1, 2), (0, 2, 3), (0, 3, 4)])
    start = all_homology(K)
    while K.num_cells > 1:
        for ref in list(K.refs()):
            if ref.dim == 0:
                continue
            faces = [CellRef(ref.dim - 1, r) for r, v in enumerate(K.columns[ref.dim][ref.index]) if v]
            free = next((t for t in faces if is_free_face(K, ref, t)), None)
            if free is not None and not K.cofaces(ref):
                K = collapse(K, ref, free)
                validate(K)
                assert all_homology(K)[1:] == start[1:len(all_homology(K))]
                break
        else:
            pytest.fail("stuck before reaching a point")
    assert K.f(0) == 1


def test_disjoint_union():
    K = disjoint_union(builtin("rp2"), builtin("theta"))
    validate(K)
    assert K.f_vector == (3, 4, 1)
    assert homology(K, 0).betti == 2 and homology(K, 1).betti == 2 and homology(K, 1).torsion_factors == (2,)


def test_resolver(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "mine.cx").write_text("complex mine dim=1\ncells 0: p\ncells 1: e\nboundary 1:\ne = 0\n")
    assert resolve_complex("mine.cx").name == "mine"
    assert resolve_complex("rp2").name == "rp2"
    (tmp_path / "rp2").write_text("complex other dim=0\ncells 0: p\n")
    with pytest.raises(AmbiguousName):
        resolve_complex("rp2")
    with pytest.raises(UnknownName):
        resolve_complex("no-such-thing")
    with pytest.raises(UnknownName):
        builtin("simplex-skeleton(3,7)")


def test_cell_lookup():
    K = simplicial_complex("t", [(0, 1)])
    assert cell(K, "01") == CellRef(1, 0)
    assert cell(K, "0@0") == CellRef(0, 0)
    with pytest.raises(UnknownName):
        cell(K, "9")
    with pytest.raises(UnknownName):
        cell(K, "0@x")


def flip_signs(K: CellComplex, rng: random.Random) -> CellComplex:
    """Reverse the orientation of a random set of cells of positive dimension."""
    signs = [[rng.choice((1, -1)) if j else 1 for _ in ids] for j, ids in enumerate(K.cells)]
    columns = [K.columns[0]]
    for j in range(1, K.dim + 1):
        columns.append(tuple(tuple(signs[j][i] * signs[j - 1][r] * v for r, v in enumerate(col))
                             for i, col in enumerate(K.columns[j])))
    return CellComplex(K.name, K.cells, tuple(columns), K.faces)


@given(st.integers(0, 10 ** 6))
def test_orientation_flips_change_nothing(s):
    from tkrpoly.tkr import modified_tkr, tkr
    rng = random.Random(s)
    K = random_complex(rng, max_top=6)
    L = flip_signs(K, rng)
    validate(L)
    assert all_homology(L) == all_homology(K)
    assert tkr(L, L.dim) == tkr(K, K.dim)
    assert modified_tkr(L, L.dim) == modified_tkr(K, K.dim)


@given(st.integers(0, 10 ** 6))
def test_random_constructions_stay_valid(s):
    rng = random.Random(s)
    K = random_complex(rng, max_top=6)
    validate(K)
    assert rank_q(row_major(K.columns[1], K.f(0))) <= K.f(1)
    for i in range(K.f(K.dim)):
        sigma = CellRef(K.dim, i)
        validate(delete_cell(K, sigma))
        validate(contract_closure(K, sigma))
