"""Step 1: ingest the decorated resolution tree and normalize orientations.

The input is the dual tree of a resolution of the product of the two plane
curve germs, with one boundary arrow per branch of each side.  Both
multiplicity systems

    M * (m_1, ..., m_s)^t + b(L)^t = 0

are solved (or verified, when the file already carries the decorations), the
per-vertex difference m = m^f - m^g is formed, fibredness is tested at the
nodes, and negative multiplicities are turned positive while recording a -1
edge sign wherever a flipped region meets an unflipped one.
"""

from __future__ import annotations

import shlex

from .errors import FibrednessError, InputError, MonodromyError
from .exactlinalg import solve_exact
from .graphs import (
    Arrow,
    Edge,
    MultPlumbing,
    MultVertex,
    ResArrow,
    ResolutionGraph,
    ResVertex,
    intersection_matrix,
)

_SIDES = ("fg", "f", "g")


def parse_resolution(text: str) -> ResolutionGraph:
    """Parse the line-oriented input format.

    Directives ('#' starts a comment):

        vertex <id> weight=<int> [genus=<int>] [mf=<int>] [mg=<int>]
        edge <id> <id>
        arrow <id> side=<f|g> [mult=<+-1>]
    """
    vertices: list[ResVertex] = []
    edges: list[tuple[int, int]] = []
    arrows: list[ResArrow] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            tokens = shlex.split(line)
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
        kind, args = tokens[0], tokens[1:]
        try:
            if kind == "vertex":
                vertices.append(_parse_vertex(args))
            elif kind == "edge":
                if len(args) != 2:
                    raise InputError("edge needs exactly two vertex ids")
                edges.append((int(args[0]), int(args[1])))
            elif kind == "arrow":
                arrows.append(_parse_arrow(args))
            else:
                raise InputError(f"unknown directive {kind!r}")
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    return ResolutionGraph(tuple(vertices), tuple(edges), tuple(arrows))


def _parse_vertex(args) -> ResVertex:
    if not args:
        raise InputError("vertex needs an id")
    vid = int(args[0])
    fields = {"weight": None, "genus": 0, "mf": None, "mg": None}
    seen_weight = False
    for item in args[1:]:
        if "=" not in item:
            raise InputError(f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        if key not in fields:
            raise InputError(f"unknown vertex field {key!r}")
        fields[key] = int(value)
        seen_weight = seen_weight or key == "weight"
    if not seen_weight:
        raise InputError(f"vertex {vid} is missing weight=")
    return ResVertex(vid, fields["weight"], fields["genus"], fields["mf"], fields["mg"])


def _parse_arrow(args) -> ResArrow:
    if not args:
        raise InputError("arrow needs a vertex id")
    vid = int(args[0])
    side = None
    mult = None
    for item in args[1:]:
        if "=" not in item:
            raise InputError(f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        if key == "side":
            side = value
        elif key == "mult":
            mult = int(value)
        else:
            raise InputError(f"unknown arrow field {key!r}")
    if side not in ("f", "g"):
        raise InputError("arrow needs side=f or side=g")
    want = 1 if side == "f" else -1
    if mult is not None and mult != want:
        raise InputError(
            f"arrow mult on side {side} must be {want:+d} (orientation convention)")
    return ResArrow(vid, side, want)


def arrow_counts(graph: ResolutionGraph, side: str) -> list[int]:
    """b(L_side): number of side arrows per vertex, in vertex order."""
    counts = {v.id: 0 for v in graph.vertices}
    for a in graph.arrows:
        if a.side == side:
            counts[a.vertex] += 1
    return [counts[v.id] for v in graph.vertices]


def solve_monodromical(graph: ResolutionGraph, side: str) -> list[int]:
    """Unique integer solution of M * m + b(L_side) = 0, in vertex order.

    When the input already carries multiplicities for that side they are
    verified by exact substitution and returned unchanged.
    """
    if side not in ("f", "g"):
        raise InputError(f"side must be f or g, got {side!r}")
    matrix = intersection_matrix(_as_plumbing(graph))
    b = arrow_counts(graph, side)
    if graph.has_multiplicities():
        given = [v.mf if side == "f" else v.mg for v in graph.vertices]
        residual = [
            sum(matrix[i][j] * given[j] for j in range(len(given))) + b[i]
            for i in range(len(given))
        ]
        bad = [graph.vertices[i].id for i, r in enumerate(residual) if r != 0]
        if bad:
            raise MonodromyError(
                f"inconsistent arrow data: supplied side-{side} multiplicities "
                f"do not solve the monodromical system", elements=tuple(bad))
        return list(given)
    solution = solve_exact(matrix, [-x for x in b])
    if any(x.denominator != 1 for x in solution):
        raise MonodromyError(
            f"inconsistent arrow data: side-{side} system has a non-integer solution")
    return [int(x) for x in solution]


def _as_plumbing(graph: ResolutionGraph):
    from .graphs import PlumbingTree, Vertex

    return PlumbingTree(
        vertices=tuple(Vertex(v.id, v.weight, v.genus) for v in graph.vertices),
        edges=tuple(Edge(u, v) for u, v in graph.edges),
    )


def multiplicity_diffs(graph: ResolutionGraph, side: str = "fg") -> dict[int, int]:
    """Per-vertex signed multiplicity of the requested link.

    side "fg" gives m^f - m^g (the mixed germ); "f" and "g" restrict to one
    holomorphic side, which is the classical suspension oracle case.
    """
    if side not in _SIDES:
        raise InputError(f"side must be one of {_SIDES}, got {side!r}")
    mf = solve_monodromical(graph, "f") if side in ("fg", "f") else None
    mg = solve_monodromical(graph, "g") if side in ("fg", "g") else None
    ids = graph.ids
    if side == "fg":
        return {i: a - b for i, a, b in zip(ids, mf, mg)}
    values = mf if side == "f" else mg
    return dict(zip(ids, values))


def check_fibred(graph: ResolutionGraph, diffs: dict[int, int]) -> tuple[bool, tuple[int, ...]]:
    """True iff every node has a nonzero multiplicity; also returns violators."""
    violators = tuple(n for n in graph.node_ids() if diffs[n] == 0)
    return not violators, violators


def subtract_and_normalize(graph: ResolutionGraph, side: str = "fg") -> MultPlumbing:
    """Form |m^f - m^g| with flip flags and -1 boundary edge signs.

    Vertices with m = 0 are assigned to the unflipped side, so the -1 signs
    land on the edges where a zero chain meets the flipped region; any single
    placement along such a chain gives a homeomorphic result, this one is the
    deterministic choice.

    A single side ("f" or "g") keeps only that side's branches, positively
    oriented: the classical holomorphic suspension used as an oracle.
    """
    diffs = multiplicity_diffs(graph, side)
    work = graph
    if side != "fg":
        work = ResolutionGraph(
            graph.vertices, graph.edges,
            tuple(ResArrow(a.vertex, "f", 1)
                  for a in graph.arrows if a.side == side))
    ok, violators = check_fibred(work, diffs)
    if not ok:
        raise FibrednessError(
            "link is not fibred: node multiplicities m^f = m^g",
            elements=violators)
    return normalize_signed(work, diffs)


def normalize_signed(graph: ResolutionGraph, signed: dict[int, int]) -> MultPlumbing:
    """Orientation normalization of a signed multiplicity assignment.

    Idempotent: feeding the signed multiplicities read off the result
    (negated on flipped vertices) reproduces the same tree.
    """
    flipped = {i: signed[i] < 0 for i in graph.ids}
    vertices = tuple(
        MultVertex(v.id, v.weight, v.genus, abs(signed[v.id]), flipped[v.id])
        for v in graph.vertices
    )
    edges = tuple(
        Edge(u, v, -1 if flipped[u] != flipped[v] else 1) for u, v in graph.edges
    )
    arrows = tuple(
        Arrow(a.vertex, a.mult * (-1 if flipped[a.vertex] else 1))
        for a in graph.arrows
    )
    return MultPlumbing(vertices, edges, arrows)


def signed_mults(mp: MultPlumbing) -> dict[int, int]:
    return {v.id: -v.m if v.flipped else v.m for v in mp.vertices}


def verify_multiplicity_system(mp: MultPlumbing) -> None:
    """Re-substitution check of the flip-normalized monodromical system.

    Orientation normalization conjugates the system by a diagonal sign
    matrix, so the stored nonnegative multiplicities solve it with the
    signed adjacency: b_v*m_v + sum(eps_e * m_other) + sum(arrow mults) = 0.
    """
    m = {v.id: v.m for v in mp.vertices}
    residual = {v.id: v.weight * v.m for v in mp.vertices}
    for e in mp.edges:
        residual[e.u] += e.sign * m[e.v]
        residual[e.v] += e.sign * m[e.u]
    for a in mp.arrows:
        residual[a.vertex] += a.mult
    bad = [i for i, r in residual.items() if r != 0]
    if bad:
        raise MonodromyError("multiplicities do not solve the monodromical system",
                             elements=tuple(bad))


def product_multiplicity_tree(graph: ResolutionGraph) -> MultPlumbing:
    """Multiplicity tree of the holomorphic product germ (m = m^f + m^g).

    Used to compare the fibre of the mixed germ with the fibre of the
    product, as in the genus-1 versus genus-5 contrast.
    """
    mf = solve_monodromical(graph, "f")
    mg = solve_monodromical(graph, "g")
    sums = {i: a + b for i, a, b in zip(graph.ids, mf, mg)}
    arrows = tuple(Arrow(a.vertex, 1) for a in graph.arrows)
    plain = ResolutionGraph(
        graph.vertices,
        graph.edges,
        tuple(ResArrow(a.vertex, "f", 1) for a in graph.arrows),
    )
    return normalize_signed(plain, sums)
