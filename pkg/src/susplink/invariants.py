"""Obstruction arithmetic on resolution trees and fibres.

Canonical class and its square, the numerically-Gorenstein test, Euler
characteristics of the resolution and of the Milnor fibres, the join
formula for the suspension fibre, and the mod-12 smoothing congruence

    chi(resolution) + K^2 = chi(smoothing fibre)  (mod 12)

which obstructs the open book from arising from a smoothable Gorenstein
complex singularity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MonodromyError, PlumbingError
from .exactlinalg import determinant as _det, is_negative_definite, solve_exact
from .graphs import MultPlumbing, PlumbingTree, adjacency, intersection_matrix

__all__ = [
    "canonical_class",
    "is_num_gorenstein",
    "k_squared",
    "chi_resolution",
    "FibreData",
    "fibre_euler",
    "join_euler",
    "wedge_count",
    "LauferSteenbrink",
    "laufer_steenbrink",
    "determinant",
    "negative_definite",
    "ObstructionReport",
    "obstruction_report",
]


def canonical_class(tree: PlumbingTree) -> list[Fraction]:
    """Solution K of the adjunction system A*K = d with
    d_v = -b_v - 2 + 2*g_v, in the order of ``tree.vertices``."""
    matrix = intersection_matrix(tree)
    d = [-v.weight - 2 + 2 * v.genus for v in tree.vertices]
    try:
        return solve_exact(matrix, d)
    except MonodromyError as exc:
        raise MonodromyError(
            "canonical class undefined: singular intersection matrix") from exc


def is_num_gorenstein(K) -> bool:
    return all(Fraction(k).denominator == 1 for k in K)


def k_squared(tree: PlumbingTree, K) -> Fraction:
    """K^T A K, evaluated exactly."""
    matrix = intersection_matrix(tree)
    K = [Fraction(k) for k in K]
    return sum(
        K[i] * sum(Fraction(matrix[i][j]) * K[j] for j in range(len(K)))
        for i in range(len(K))
    )


def chi_resolution(tree: PlumbingTree) -> int:
    """chi of the exceptional divisor: sum of (2 - 2g) minus the edge count."""
    return sum(2 - 2 * v.genus for v in tree.vertices) - len(tree.edges)


@dataclass(frozen=True)
class FibreData:
    chi: int
    genus: int
    boundary: int


def fibre_euler(mp: MultPlumbing) -> FibreData:
    """Euler characteristic, genus and boundary count of the (connected)
    fibre: each piece covers its base m_v times, so
    chi = sum |m_v| * (2 - 2g_v - valence_v)."""
    adj = adjacency(mp.ids, mp.edges)
    arrow_count = {v.id: 0 for v in mp.vertices}
    for a in mp.arrows:
        arrow_count[a.vertex] += 1
    chi = sum(
        abs(v.m) * (2 - 2 * v.genus - len(adj[v.id]) - arrow_count[v.id])
        for v in mp.vertices
    )
    boundary = sum(abs(a.mult) for a in mp.arrows)
    if (2 - chi - boundary) % 2:
        raise PlumbingError(
            f"disconnected fibre suspected: chi = {chi} with {boundary} "
            "boundary components gives a fractional genus")
    return FibreData(chi, (2 - chi - boundary) // 2, boundary)


def join_euler(chi_fibre: int, r: int) -> int:
    """chi of the join of the fibre with r points:
    1 + (r - 1) * (1 - chi_fibre)."""
    return 1 + (r - 1) * (1 - chi_fibre)


def wedge_count(chi_fibre: int, r: int) -> int:
    """Number of 2-spheres in the wedge the suspension fibre is homotopy
    equivalent to."""
    return (r - 1) * (1 - chi_fibre)


@dataclass(frozen=True)
class LauferSteenbrink:
    applicable: bool
    left: int | None      # chi of the suspension fibre, mod 12 in [0, 12)
    right: int | None     # chi(resolution) + K^2, mod 12 in [0, 12)
    congruent: bool | None

    def as_tuple(self):
        return (self.left, self.right, self.congruent)


def laufer_steenbrink(tree: PlumbingTree, chi_fibre_F: int) -> LauferSteenbrink:
    """Mod-12 smoothing congruence; inapplicable when K is not integral."""
    K = canonical_class(tree)
    if not is_num_gorenstein(K):
        return LauferSteenbrink(False, None, None, None)
    right_raw = chi_resolution(tree) + k_squared(tree, K)
    left = chi_fibre_F % 12
    right = int(right_raw) % 12
    return LauferSteenbrink(True, left, right, left == right)


def determinant(tree: PlumbingTree) -> int:
    return _det(intersection_matrix(tree))


def negative_definite(tree: PlumbingTree) -> bool:
    return is_negative_definite(intersection_matrix(tree))


@dataclass(frozen=True)
class ObstructionReport:
    K: tuple[Fraction, ...]
    K_squared: Fraction
    numerically_gorenstein: bool
    chi_resolution: int
    chi_fibre_fg: int
    fibre_genus: int
    fibre_boundary: int
    chi_fibre_F: int
    wedge_spheres: int
    ls_applicable: bool
    ls_left: int | None
    ls_right: int | None
    ls_congruent: bool | None
    negative_definite: bool
    determinant: int
    # fibre of the holomorphic product germ, when both sides are known
    product_chi: int | None = None
    product_genus: int | None = None
    product_boundary: int | None = None


def obstruction_report(mp: MultPlumbing, tree: PlumbingTree, r: int,
                       product_mp: MultPlumbing | None = None) -> ObstructionReport:
    """All obstruction invariants of one pipeline run.

    ``tree`` must be the final plumbing tree (binding arrows ignored for the
    adjunction system); the suspension fibre chi uses the join formula with
    the same r that produced the tree.
    """
    K = canonical_class(tree)
    ksq = k_squared(tree, K)
    fibre = fibre_euler(mp)
    chi_F = join_euler(fibre.chi, r)
    ls = laufer_steenbrink(tree, chi_F)
    product = fibre_euler(product_mp) if product_mp is not None else None
    return ObstructionReport(
        K=tuple(K),
        K_squared=ksq,
        numerically_gorenstein=is_num_gorenstein(K),
        chi_resolution=chi_resolution(tree),
        chi_fibre_fg=fibre.chi,
        fibre_genus=fibre.genus,
        fibre_boundary=fibre.boundary,
        chi_fibre_F=chi_F,
        wedge_spheres=wedge_count(fibre.chi, r),
        ls_applicable=ls.applicable,
        ls_left=ls.left,
        ls_right=ls.right,
        ls_congruent=ls.congruent,
        negative_definite=negative_definite(tree),
        determinant=determinant(tree),
        product_chi=product.chi if product else None,
        product_genus=product.genus if product else None,
        product_boundary=product.boundary if product else None,
    )
