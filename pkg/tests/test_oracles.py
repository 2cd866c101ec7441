"""Classical suspension oracles.

The cusp x^2 + y^3 suspended by z^r is the Brieskorn variety of type
(2, 3, r); for r = 2, 3, 4, 5 these are the A2, D4, E6 and E8 rational
double points, and r = 7 gives the (2, 3, 7) homology sphere.  Their
minimal plumbing trees and determinants are textbook data, independent of
anything this package computes, so they pin the orientation and sign
conventions of every pass at once.  The f-side of the first example gives
x^2 + y^7, whose z^2 suspension is the A6 chain.
"""

from susplink.invariants import determinant, negative_definite
from susplink.pipeline import run_pipeline
from conftest import read_input


def reduced(name, r, side="fg"):
    result = run_pipeline(read_input(name), r, side=side, reduce=True)
    return result.blowdown


def shape(tree):
    """(sorted weights, sorted valence multiset) of a reduced tree."""
    valence = {v.id: 0 for v in tree.vertices}
    for e in tree.edges:
        valence[e.u] += 1
        valence[e.v] += 1
    return (sorted(v.weight for v in tree.vertices), sorted(valence.values()))


def test_cusp_r2_is_a2():
    tree = reduced("cusp.txt", 2)
    assert shape(tree) == ([-2, -2], [1, 1])
    assert abs(determinant(tree)) == 3


def test_cusp_r3_is_d4():
    tree = reduced("cusp.txt", 3)
    assert shape(tree) == ([-2, -2, -2, -2], [1, 1, 1, 3])
    assert abs(determinant(tree)) == 4


def test_cusp_r4_is_e6():
    tree = reduced("cusp.txt", 4)
    assert shape(tree) == ([-2] * 6, [1, 1, 1, 2, 2, 3])
    assert abs(determinant(tree)) == 3


def test_cusp_r7_is_the_237_sphere():
    tree = reduced("cusp.txt", 7)
    assert shape(tree) == ([-7, -3, -2, -1], [1, 1, 1, 3])
    assert abs(determinant(tree)) == 1
    assert negative_definite(tree)


def test_ex1_f_side_r2_is_a6():
    # x^2 + y^7 suspended by z^2 is the A6 double point
    tree = reduced("ex1.txt", 2, side="f")
    assert shape(tree) == ([-2] * 6, [1, 1, 2, 2, 2, 2])
    assert abs(determinant(tree)) == 7


def test_ex1_g_side_r2_is_a4():
    # x^5 + y^2 suspended by z^2 is the A4 double point
    tree = reduced("ex1.txt", 2, side="g")
    assert shape(tree) == ([-2] * 4, [1, 1, 2, 2])
    assert abs(determinant(tree)) == 5
