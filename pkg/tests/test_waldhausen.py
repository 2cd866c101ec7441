from fractions import Fraction

import pytest

from susplink.errors import NormalizationError, UnsupportedError
from susplink.graphs import (
    BoundaryStalk,
    NielsenGraph,
    NielsenVertex,
    Stalk,
)
from susplink.nielsen import build_nielsen
from susplink.power import power_nielsen
from susplink.resolve import subtract_and_normalize
from susplink.waldhausen import nielsen_to_waldhausen


def waldhausen_of(graph, r):
    n = build_nielsen(subtract_and_normalize(graph))
    return nielsen_to_waldhausen(power_nielsen(n, r))


def test_ex1_step4(ex1_graph):
    w = waldhausen_of(ex1_graph, 3)
    assert [(v.id, v.e, v.genus, v.order) for v in w.vertices] == [
        (2, 1, 0, 10), (7, 2, 0, 2)]
    assert [(s.vertex, s.alpha, s.beta) for s in w.stalks] == [
        (2, 2, 1), (7, 2, 1), (7, 2, 1), (7, 2, 1)]
    assert [(a.vertex, a.alpha, a.beta) for a in w.arrows] == [
        (2, 3, 1), (7, 1, 0)]
    (e,) = w.edges
    assert (e.eps, e.alpha, e.beta_u, e.beta_v) == (-1, 31, 6, 26)


def test_ex2_step4(ex2_graph):
    w = waldhausen_of(ex2_graph, 2)
    assert [v.e for v in w.vertices] == [1, 1]
    assert w.stalks == ()
    assert [(a.alpha, a.beta) for a in w.arrows] == [(1, 0), (1, 0)]
    assert [(e.eps, e.alpha, e.beta_u, e.beta_v) for e in w.edges] == [
        (-1, 5, 4, 4), (-1, 5, 4, 4)]


def test_ex3_step4(ex3_graph):
    w = waldhausen_of(ex3_graph, 5)
    assert [(v.id, v.e, v.order) for v in w.vertices] == [(2, 2, 9), (7, 1, 8)]
    assert [(s.vertex, s.alpha, s.beta) for s in w.stalks] == [
        (2, 3, 1), (7, 2, 1)]
    assert [(a.vertex, a.alpha, a.beta) for a in w.arrows] == [
        (2, 5, 4), (7, 5, 2)]
    (e,) = w.edges
    assert (e.eps, e.alpha, e.beta_u, e.beta_v) == (-1, 145, 128, 17)


def test_unpowered_reproduces_base_gluing(ex1_graph):
    # at r = 1 the Waldhausen edge must carry the base chain fraction again
    w = waldhausen_of(ex1_graph, 1)
    (e,) = w.edges
    assert (e.alpha, e.beta_u, e.beta_v) == (31, 18, 19)
    assert [(a.alpha, a.beta) for a in w.arrows] == [(1, 0), (1, 0)]
    assert [v.e for v in w.vertices] == [1, 1]


def test_pairs_normalized_and_dual(ex1_graph, ex2_graph, ex3_graph, cusp_graph):
    for graph, r in ((ex1_graph, 3), (ex2_graph, 2), (ex3_graph, 5),
                     (cusp_graph, 5), (ex1_graph, 1), (ex3_graph, 1)):
        w = waldhausen_of(graph, r)
        for s in w.stalks:
            assert 1 <= s.beta < s.alpha
        for a in w.arrows:
            assert 0 <= a.beta < a.alpha
        for e in w.edges:
            if e.alpha == 1:
                assert e.beta_u == e.beta_v == 0
            else:
                assert 0 <= e.beta_u < e.alpha and 0 <= e.beta_v < e.alpha
                assert (e.beta_u * e.beta_v) % e.alpha == 1


def test_rejects_q_gt_1():
    n = NielsenGraph((NielsenVertex(1, 4, 0, 2),),
                     (Stalk(1, 2, 1), Stalk(1, 2, 1)))
    with pytest.raises(UnsupportedError):
        nielsen_to_waldhausen(n)


def test_normalization_failure_is_reported():
    # a twist incompatible with the vertex order leaves a fractional alpha
    # or beta for every representative choice
    n = NielsenGraph(
        (NielsenVertex(1, 6, 1, 1),),
        (Stalk(1, 6, 1),),
        (BoundaryStalk(1, 6, 5, Fraction(-1, 4)),),
        (),
    )
    with pytest.raises(NormalizationError):
        nielsen_to_waldhausen(n)


def test_lam_1_stalks_are_regular_fibres():
    # a lam = 1 stalk is a regular fibre and leaves no Seifert pair
    n = NielsenGraph(
        (NielsenVertex(1, 2, 1, 1),),
        (Stalk(1, 1, 0), Stalk(1, 2, 1), Stalk(1, 2, 1)),
    )
    w = nielsen_to_waldhausen(n)
    assert [(s.alpha, s.beta) for s in w.stalks] == [(2, 1), (2, 1)]
    assert w.vertices[0].e == 1
