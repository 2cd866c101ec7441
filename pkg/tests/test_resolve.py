import pytest
from hypothesis import given, strategies as st

from susplink.errors import FibrednessError, InputError, MonodromyError, NotATreeError
from susplink.graphs import ResolutionGraph, ResVertex
from susplink.resolve import (
    check_fibred,
    multiplicity_diffs,
    normalize_signed,
    parse_resolution,
    product_multiplicity_tree,
    signed_mults,
    solve_monodromical,
    subtract_and_normalize,
    verify_multiplicity_system,
)
from conftest import read_input


def test_parse_ex1_weights(ex1_graph):
    assert [v.weight for v in ex1_graph.vertices] == [-2, -1, -3, -2, -3, -3, -1, -2]
    assert [a.side for a in ex1_graph.arrows] == ["f", "g"]
    assert [a.mult for a in ex1_graph.arrows] == [1, -1]


def test_parse_errors():
    with pytest.raises(InputError):
        parse_resolution("")  # empty vertex set
    with pytest.raises(NotATreeError):
        parse_resolution(
            "vertex 1 weight=-2\nvertex 2 weight=-2\nvertex 3 weight=-2\n"
            "edge 1 2\nedge 2 3\nedge 3 1\n")
    with pytest.raises(InputError, match="line 2"):
        parse_resolution("vertex 1 weight=-2\nvortex 2 weight=-2\n")
    with pytest.raises(InputError):
        parse_resolution("vertex 1 weight=-2\narrow 5 side=f\n")
    with pytest.raises(InputError):
        parse_resolution("vertex 1 weight=-2\nvertex 1 weight=-3\n")
    with pytest.raises(InputError, match="mult"):
        parse_resolution("vertex 1 weight=-1\narrow 1 side=f mult=-1\n")


def test_all_or_none_multiplicities():
    with pytest.raises(InputError, match="every vertex"):
        parse_resolution(
            "vertex 1 weight=-2 mf=1 mg=0\nvertex 2 weight=-2\nedge 1 2\n")


def test_solve_single_vertex():
    graph = parse_resolution("vertex 1 weight=-1\narrow 1 side=f\n")
    assert solve_monodromical(graph, "f") == [1]
    assert solve_monodromical(graph, "g") == [0]


def test_solve_ex1_both_sides(ex1_graph):
    assert solve_monodromical(ex1_graph, "f") == [7, 14, 6, 4, 2, 2, 4, 2]
    assert solve_monodromical(ex1_graph, "g") == [2, 4, 2, 2, 2, 4, 10, 5]


def test_solve_ex2_derives_decorations(ex2_graph):
    # ex2.txt carries no decorations; the solver must reproduce the
    # differences (1, 2, 0, -2, -1)
    assert solve_monodromical(ex2_graph, "f") == [3, 6, 2, 4, 2]
    assert solve_monodromical(ex2_graph, "g") == [2, 4, 2, 6, 3]
    diffs = multiplicity_diffs(ex2_graph)
    assert [diffs[i] for i in ex2_graph.ids] == [1, 2, 0, -2, -1]


def test_supplied_multiplicities_are_verified():
    bad = read_input("ex1.txt").replace("mf=14", "mf=13")
    with pytest.raises(MonodromyError, match="inconsistent arrow data"):
        solve_monodromical(parse_resolution(bad), "f")


def test_degenerate_system():
    graph = parse_resolution("vertex 1 weight=0\narrow 1 side=f\n")
    with pytest.raises(MonodromyError, match="singular"):
        solve_monodromical(graph, "f")


def test_check_fibred(ex1_graph, ex2_graph):
    ok, bad = check_fibred(ex1_graph, multiplicity_diffs(ex1_graph))
    assert ok and bad == ()
    ok, bad = check_fibred(ex2_graph, multiplicity_diffs(ex2_graph))
    assert ok
    # same branch on both sides: node difference vanishes
    square = parse_resolution(
        "vertex 1 weight=-1\nvertex 2 weight=-2\nedge 1 2\n"
        "arrow 1 side=f\narrow 1 side=g\n")
    diffs = multiplicity_diffs(square)
    ok, bad = check_fibred(square, diffs)
    assert not ok and bad == (1,)
    with pytest.raises(FibrednessError):
        subtract_and_normalize(square)


def test_subtract_and_normalize_ex1(ex1_graph):
    mp = subtract_and_normalize(ex1_graph)
    assert [v.m for v in mp.vertices] == [5, 10, 4, 2, 0, 2, 6, 3]
    assert [v.flipped for v in mp.vertices] == [False] * 5 + [True] * 3
    negative = [(e.u, e.v) for e in mp.edges if e.sign == -1]
    assert negative == [(5, 6)]
    assert all(a.mult == 1 for a in mp.arrows)
    verify_multiplicity_system(mp)


def test_subtract_and_normalize_ex3(ex3_graph):
    mp = subtract_and_normalize(ex3_graph)
    assert [v.m for v in mp.vertices] == [3, 9, 5, 1, 1, 3, 8, 4]
    negative = [(e.u, e.v) for e in mp.edges if e.sign == -1]
    assert negative == [(4, 5)]


def test_holomorphic_case_no_flips(cusp_graph):
    mp = subtract_and_normalize(cusp_graph)
    assert [v.m for v in mp.vertices] == [3, 6, 2]
    assert not any(v.flipped for v in mp.vertices)
    assert all(e.sign == 1 for e in mp.edges)


def test_side_selection(ex1_graph):
    mp_f = subtract_and_normalize(ex1_graph, side="f")
    assert [v.m for v in mp_f.vertices] == [7, 14, 6, 4, 2, 2, 4, 2]
    assert not any(v.flipped for v in mp_f.vertices)
    mp_g = subtract_and_normalize(ex1_graph, side="g")
    assert [v.m for v in mp_g.vertices] == [2, 4, 2, 2, 2, 4, 10, 5]


def test_normalize_idempotent(ex1_graph, ex3_graph):
    for graph in (ex1_graph, ex3_graph):
        mp = subtract_and_normalize(graph)
        again = normalize_signed(graph, signed_mults(mp))
        assert again == mp


def test_flip_parity_property(ex1_graph, ex3_graph, ex2_graph):
    for graph in (ex1_graph, ex2_graph, ex3_graph):
        mp = subtract_and_normalize(graph)
        flipped = {v.id: v.flipped for v in mp.vertices}
        for e in mp.edges:
            assert (e.sign == -1) == (flipped[e.u] != flipped[e.v])


@given(st.lists(st.integers(-9, -1), min_size=2, max_size=7),
       st.integers(0, 6))
def test_flip_parity_on_random_paths(weights, flip_start):
    # normalize_signed on a path with an arbitrary sign pattern: the -1
    # edges are exactly the flip boundaries
    n = len(weights)
    vertices = tuple(ResVertex(i + 1, w) for i, w in enumerate(weights))
    edges = tuple((i + 1, i + 2) for i in range(n - 1))
    graph = ResolutionGraph(vertices, edges, ())
    signed = {i + 1: (i + 1) * (-1 if i >= flip_start % n else 1)
              for i in range(n)}
    mp = normalize_signed(graph, signed)
    flipped = {v.id: v.flipped for v in mp.vertices}
    crossings = sum(1 for e in mp.edges if flipped[e.u] != flipped[e.v])
    assert sum(1 for e in mp.edges if e.sign == -1) == crossings


def test_product_multiplicity_tree(ex2_graph):
    mp = product_multiplicity_tree(ex2_graph)
    assert [v.m for v in mp.vertices] == [5, 10, 4, 10, 5]
    assert not any(v.flipped for v in mp.vertices)
    assert [a.mult for a in mp.arrows] == [1, 1]
