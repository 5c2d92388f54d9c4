from __future__ import annotations

import pytest

from tkrpoly.catalog import builtin
from tkrpoly.complex import SpanningSubcomplex
from tkrpoly.duality import (
    PAIR_CATALOG,
    DualPair,
    catalog_pair,
    check_alexander_identities,
    check_duality,
    dual_subcomplex,
    load_pair,
    parse_pair,
    serialize_pair,
    sphere_defects,
    validate_pair,
)
from tkrpoly.errors import InvalidDualPair, ParseError, RangeError, UnknownName
from tkrpoly.matroid import column_matroid, tutte
from tkrpoly.tkr import tkr

PAIRS = sorted(PAIR_CATALOG)


@pytest.mark.parametrize("name", PAIRS)
def test_catalog_pairs_are_valid(name):
    P = catalog_pair(name)
    validate_pair(P)
    assert sphere_defects(P.K) == [] and sphere_defects(P.K_star) == []
    for j in range(P.k + 1):
        assert P.K.f(j) == P.K_star.f(P.k - j)


@pytest.mark.parametrize("name", PAIRS)
@pytest.mark.parametrize("modified", [False, True])
def test_duality_every_degree(name, modified):
    P = catalog_pair(name)
    lo, hi = (1, P.k - 1) if modified else (0, P.k)
    for j in range(lo, hi + 1):
        r = check_duality(P, j, modified)
        assert r.holds, (j, r.left, r.right)


def test_duality_examples():
    P = catalog_pair("tetrahedron-self-dual")
    r = check_duality(P, 1)
    assert r.left == r.right.swap()
    t = tkr(P.K, 1)
    assert t == t.swap()
    assert tkr(P.K, 2) == tkr(P.K_star, 0).swap()
    k4 = tutte(column_matroid(P.K, 1))
    assert k4 == k4.swap()
    cube = catalog_pair("cube-octahedron")
    assert tkr(cube.K, 1) == tkr(cube.K_star, 1).swap()
    assert tkr(cube.K, 2) == tkr(cube.K_star, 0).swap()


def test_planar_graph_duality():
    for name in ("cube-octahedron", "prism-bipyramid", "tetrahedron-self-dual"):
        P = catalog_pair(name)
        G, H = column_matroid(P.K, 1), column_matroid(P.K_star, 1)
        assert tutte(G) == tutte(H).swap()


def test_range_errors():
    P = catalog_pair("cube-octahedron")
    with pytest.raises(RangeError):
        check_duality(P, 2, modified=True)
    with pytest.raises(RangeError):
        check_duality(P, 0, modified=True)
    with pytest.raises(RangeError):
        check_duality(P, 3)
    with pytest.raises(RangeError):
        check_alexander_identities(P, 2)


def test_dual_subcomplex_examples():
    P = catalog_pair("tetrahedron-self-dual")
    full = SpanningSubcomplex(P.K, 1, (1 << 6) - 1)
    assert dual_subcomplex(P, full).size == 0
    tree = SpanningSubcomplex.from_ids(P.K, 1, ["01", "02", "03"])
    D = dual_subcomplex(P, tree)
    assert D.j == 1 and D.cell_ids() == ("01", "02", "03")  # complements of 23, 13, 12
    cube = catalog_pair("cube-octahedron")
    D = dual_subcomplex(cube, SpanningSubcomplex(cube.K, 1, 0))
    assert D.j == 1 and D.size == cube.K_star.f(1)
    with pytest.raises(InvalidDualPair):
        dual_subcomplex(P, SpanningSubcomplex(builtin("rp2"), 1, 0))


def test_dual_subcomplex_is_an_involution():
    P = catalog_pair("cube-octahedron")
    Q = P.reversed()
    for mask in range(0, 1 << 12, 37):
        S = SpanningSubcomplex(P.K, 1, mask)
        back = dual_subcomplex(Q, dual_subcomplex(P, S))
        assert back.mask == mask and back.j == 1


def test_alexander_exhaustive():
    for name in ("tetrahedron-self-dual", "prism-bipyramid", "sphere-three-cells-dual"):
        P = catalog_pair(name)
        r = check_alexander_identities(P, 1, strict=True)
        assert r.holds and r.checked == 1 << P.K.f(1)
    r = check_alexander_identities(catalog_pair("tetrahedron-self-dual"), 1)
    assert r.checked == 64


def test_alexander_sampled_and_full_skeleton():
    P = catalog_pair("cube-octahedron")
    r = check_alexander_identities(P, 1, samples=300, seed=3)
    assert r.holds and r.checked == 300
    r = check_alexander_identities(P, 1, masks=[(1 << 12) - 1])
    assert r.holds and r.checked == 1


def test_alexander_detects_a_broken_pairing():
    P = catalog_pair("cube-octahedron")
    corr = list(P.corr)
    edges = list(corr[1])
    edges[0], edges[5] = edges[5], edges[0]
    corr[1] = tuple(edges)
    bad = DualPair("scrambled", P.K, P.K_star, tuple(corr))
    assert not check_alexander_identities(bad, 1, samples=400, seed=1).holds


def test_pair_text_round_trip():
    for name in PAIRS:
        P = catalog_pair(name)
        Q = parse_pair(serialize_pair(P), resolve=builtin)
        assert Q.K == P.K and Q.K_star == P.K_star and Q.corr == P.corr


def test_pair_file_loading(tmp_path):
    P = catalog_pair("tetrahedron-self-dual")
    path = tmp_path / "tet.pair"
    path.write_text("# a comment\n" + serialize_pair(P))
    assert load_pair(str(path)).corr == P.corr
    assert load_pair("cube-octahedron").name == "cube-octahedron"
    with pytest.raises(UnknownName):
        load_pair(str(tmp_path / "missing.pair"))


def test_pair_parse_errors():
    with pytest.raises(ParseError):
        parse_pair("", resolve=builtin)
    with pytest.raises(ParseError):
        parse_pair("pair rp2 rp2\n", resolve=builtin)
    with pytest.raises(ParseError) as err:
        parse_pair("dual tetrahedron-boundary tetrahedron-boundary\n0 123\n", resolve=builtin)
    assert err.value.line == 2
    head = "dual tetrahedron-boundary tetrahedron-boundary\n"
    with pytest.raises(InvalidDualPair):
        parse_pair(head + "0 ~ 123\n", resolve=builtin)
    with pytest.raises(UnknownName):
        parse_pair(head + "9 ~ 123\n", resolve=builtin)
    with pytest.raises(UnknownName):
        parse_pair(head + "0 ~ 12\n", resolve=builtin)
    with pytest.raises(InvalidDualPair):
        parse_pair(head + "0 ~ 123@1\n", resolve=builtin)
    text = serialize_pair(catalog_pair("tetrahedron-self-dual")).replace("1 ~ 023", "1 ~ 123")
    with pytest.raises(InvalidDualPair):
        parse_pair(text, resolve=builtin)
    with pytest.raises(InvalidDualPair):
        parse_pair("dual rp2 theta\n", resolve=builtin)


def test_non_sphere_is_rejected():
    K = builtin("rp2")
    P = DualPair("rp2-fake", K, K, ((0,), (0,), (0,)))
    with pytest.raises(InvalidDualPair):
        validate_pair(P)
    with pytest.raises(InvalidDualPair):
        DualPair("mismatch", K, builtin("torus"), ((0,), (0,), (0,)))
    with pytest.raises(UnknownName):
        catalog_pair("dodecahedron-icosahedron")
