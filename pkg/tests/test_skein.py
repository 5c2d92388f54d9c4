from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tkrpoly.catalog import builtin, builtin_names, cell
from tkrpoly.complex import CellRef, SpanningSubcomplex, contract_closure, spanning_subcomplexes
from tkrpoly.errors import NotApplicable, NotTopCell
from tkrpoly.homology import homology
from tkrpoly.linalg import integer_rank
from tkrpoly.matroid import column_matroid
from tkrpoly.polynomial import BiPoly
from tkrpoly.randgen import random_complex
from tkrpoly.skein import (
    BRIDGE,
    COLLAPSE,
    DIRECT,
    LOOP,
    REGULAR,
    applicable_case,
    classify_cell,
    require_case,
    skein_evaluate,
    skein_trace,
    verify_skein,
)
from tkrpoly.textformat import parse
from tkrpoly.tkr import tkr

X, Y = BiPoly.X(), BiPoly.Y()
TOPS = [n for n in builtin_names() if builtin(n).dim >= 1 and builtin(n).f(builtin(n).dim) <= 12]
SMALL_TOPS = [n for n in TOPS if builtin(n).f(builtin(n).dim) <= 6]


def top_cells(K):
    return [CellRef(K.dim, i) for i in range(K.f(K.dim))]


def test_classification_examples():
    K = builtin("s2vs1")
    c = classify_cell(K, cell(K, "s"))
    assert c.is_loop and c.boundary_regular and not c.is_bridge
    K = builtin("sphere-three-cells")
    c = classify_cell(K, cell(K, "sinf"))
    assert not c.is_loop and not c.is_bridge and not c.boundary_regular
    assert homology(contract_closure(K, cell(K, "s1")), 2).betti == 1
    K = builtin("rp2")
    c = classify_cell(K, cell(K, "s"))
    assert c.is_bridge and c.boundary_regular and not c.is_loop and c.free_faces == ()


def test_free_faces():
    K = builtin("sphere-three-cells-deleted")
    c = classify_cell(K, cell(K, "sinf"))
    assert [K.cell_id(t) for t in c.free_faces] == ["a", "c"]
    assert applicable_case(c) == COLLAPSE
    assert classify_cell(builtin("disc"), CellRef(2, 0)).free_faces == (CellRef(1, 0),)


def test_not_top_cell():
    K = builtin("rp2")
    with pytest.raises(NotTopCell):
        classify_cell(K, cell(K, "e"))


def test_verify_cases():
    K = builtin("s2vs2")
    r = verify_skein(K, cell(K, "sp"))
    assert r.case == BRIDGE and r.holds
    assert r.contracted == Y + 1 and r.rhs == (X + 1) * (Y + 1)
    r = verify_skein(K, cell(K, "s"))
    assert r.case == LOOP and r.holds and r.deleted == X + 1
    K = builtin("sphere-three-cells")
    for name in ("s1", "s2"):
        r = verify_skein(K, cell(K, name))
        assert r.case == REGULAR and r.holds
    r = verify_skein(K, cell(K, "sinf"))
    assert r.case is None and not r.holds
    assert r.deleted == X ** 2 + 2 * X + 1
    assert r.contracted == Y ** 2 + 2 * Y + 1
    assert r.deleted + r.contracted != r.lhs
    with pytest.raises(NotApplicable):
        require_case(r)


def test_collapse_case():
    K = builtin("sphere-three-cells-deleted")
    r = verify_skein(K, cell(K, "sinf"))
    assert r.case == COLLAPSE and r.holds and r.lhs == X + 1


@pytest.mark.parametrize("name", TOPS)
def test_every_applicable_relation_holds(name):
    K = builtin(name)
    for s in top_cells(K):
        r = verify_skein(K, s)
        assert r.holds == r.applicable


@given(st.integers(0, 10 ** 6))
def test_relations_hold_on_random(s):
    K = random_complex(random.Random(s), max_top=6)
    for sigma in top_cells(K):
        r = verify_skein(K, sigma)
        assert r.holds == r.applicable


@pytest.mark.parametrize("name", TOPS)
def test_loop_is_never_bridge(name):
    K = builtin(name)
    for s in top_cells(K):
        c = classify_cell(K, s)
        assert not (c.is_loop and c.is_bridge)


@pytest.mark.parametrize("name", TOPS)
def test_loops_and_bridges_are_matroid_loops_and_coloops(name):
    K = builtin(name)
    M = column_matroid(K, K.dim)
    for s in top_cells(K):
        c = classify_cell(K, s)
        assert c.is_loop == M.is_loop(s.index)
        assert c.is_bridge == M.is_coloop(s.index)


@pytest.mark.parametrize("name", SMALL_TOPS)
def test_bridges_stay_bridges_in_spanning_subcomplexes(name):
    K = builtin(name)
    k = K.dim
    cols = K.columns[k]
    for s in top_cells(K):
        if not classify_cell(K, s).is_bridge:
            continue
        for S in spanning_subcomplexes(K, k):
            if s.index not in S.indices():
                continue
            inside = [cols[i] for i in S.indices()]
            without = [cols[i] for i in S.indices() if i != s.index]
            assert integer_rank(without) == integer_rank(inside) - 1


@pytest.mark.parametrize("name", SMALL_TOPS)
def test_contraction_preserves_betti_numbers(name):
    """For boundary-regular non-loops, S and S/closure(s) have the same top Betti
    number and the same codimension-one Betti excess."""
    K = builtin(name)
    k = K.dim
    for s in top_cells(K):
        c = classify_cell(K, s)
        if c.is_loop or not c.boundary_regular:
            continue
        Q = contract_closure(K, s)
        others = [i for i in range(K.f(k)) if i != s.index]
        base_K, base_Q = homology(K, k - 1).betti, homology(Q, k - 1).betti
        for sub in range(1 << len(others)):
            idx = [others[t] for t in range(len(others)) if sub >> t & 1]
            S = SpanningSubcomplex(K, k, sum(1 << i for i in idx) | 1 << s.index)
            T = SpanningSubcomplex(Q, k, sub)
            assert homology(S, k).betti == homology(T, k).betti
            assert homology(S, k - 1).betti - base_K == homology(T, k - 1).betti - base_Q


@pytest.mark.parametrize("name", SMALL_TOPS)
def test_loop_splits_off(name):
    K = builtin(name)
    k = K.dim
    for s in top_cells(K):
        if not classify_cell(K, s).is_loop:
            continue
        for S in spanning_subcomplexes(K, k):
            if s.index in S.indices():
                T = SpanningSubcomplex(K, k, S.mask & ~(1 << s.index))
                assert homology(S, k).betti == homology(T, k).betti + 1
                assert homology(S, k - 1).betti == homology(T, k - 1).betti


def test_evaluate_examples():
    assert skein_evaluate(builtin("s2vs2")) == X * Y + X + Y + 1
    value, trace = skein_trace(builtin("sphere-three-cells"))
    assert value == X ** 2 + 3 * X + 3 + Y
    assert trace.case == REGULAR and trace.cell == "s1"
    value, trace = skein_trace(builtin("sphere-three-cells-deleted"))
    assert value == X + 1 and trace.case == COLLAPSE
    assert "collapse on sinf" in trace.render()


@pytest.mark.parametrize("name", TOPS)
def test_evaluate_matches_enumeration(name):
    K = builtin(name)
    expected = tkr(K, K.dim)
    assert skein_evaluate(K) == expected
    assert skein_evaluate(K, order="highest") == expected


@given(st.integers(0, 10 ** 6))
def test_evaluate_random(s):
    K = random_complex(random.Random(s), max_top=8)
    expected = tkr(K, K.dim)
    assert skein_evaluate(K) == expected
    assert skein_evaluate(K, order="highest") == expected


TWIN_DISCS = """complex twin-discs dim=2
cells 0: p
cells 1: a b
cells 2: f g
boundary 1:
a = 0*p
b = 0*p
boundary 2:
f = 1*a + 1*b
g = 1*a + 1*b
"""


def test_direct_fallback():
    # both discs are glued along a wedge of two circles, so neither is boundary regular
    K = parse(TWIN_DISCS)
    for s in top_cells(K):
        c = classify_cell(K, s)
        assert not (c.is_loop or c.is_bridge or c.boundary_regular)
    value, trace = skein_trace(K)
    assert trace.case == DIRECT and value == X + Y + 2 == tkr(K, 2)


def test_bad_order():
    with pytest.raises(ValueError):
        skein_evaluate(builtin("rp2"), order="random")
