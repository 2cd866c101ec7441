"""Shared graph data model for every pipeline pass.

Five graph flavours move through the pipeline:

* ``ResolutionGraph``   -- decorated input tree with two-sided multiplicities,
* ``MultPlumbing``      -- orientation-normalized single-multiplicity tree,
* ``NielsenGraph``      -- combinatorial record of a quasi-periodic surface map,
* ``WaldhausenGraph``   -- Seifert pieces with gluing triplets,
* ``PlumbingTree``      -- weighted plumbing graph with intersection matrix.

All types are immutable value objects; passes are pure functions.  Vertex ids
are the small integers assigned at parse time and are preserved through the
passes wherever a vertex survives, so reports can be matched against input
figures vertex by vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InputError, NotATreeError

__all__ = [
    "Vertex",
    "Edge",
    "Arrow",
    "PlumbingTree",
    "ResVertex",
    "ResArrow",
    "ResolutionGraph",
    "MultVertex",
    "MultPlumbing",
    "NielsenVertex",
    "Stalk",
    "BoundaryStalk",
    "NielsenEdge",
    "NielsenGraph",
    "WaldVertex",
    "WaldStalk",
    "WaldArrow",
    "WaldEdge",
    "WaldhausenGraph",
    "intersection_matrix",
    "adjacency",
    "check_tree",
    "multiplicity_to_plumbing",
]


# ---------------------------------------------------------------------------
# Plumbing trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Vertex:
    id: int
    weight: int
    genus: int = 0
    mult: int | None = None
    flipped: bool = False
    origin: str = ""


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    sign: int = 1


@dataclass(frozen=True)
class Arrow:
    vertex: int
    mult: int = 1
    label: str = ""


def _ids(vertices) -> list[int]:
    ids = [v.id for v in vertices]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise InputError("duplicate vertex ids", elements=tuple(dupes))
    return ids


def _check_endpoints(ids, edges, arrows):
    known = set(ids)
    for e in edges:
        if e.u not in known or e.v not in known:
            raise InputError("edge endpoint on unknown vertex", elements=(e.u, e.v))
        if e.u == e.v:
            raise InputError("self-loop edges are not supported", elements=(e.u,))
    for a in arrows:
        if a.vertex not in known:
            raise InputError("arrow on unknown vertex", elements=(a.vertex,))


@dataclass(frozen=True)
class PlumbingTree:
    """Weighted plumbing graph.

    Parsed inputs must be trees; synthesized outputs may carry parallel
    edges (multigraph) when two Seifert pieces are glued along several tori,
    as in links with two parallel connecting chains.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        ids = _ids(self.vertices)
        _check_endpoints(ids, self.edges, self.arrows)
        for e in self.edges:
            if e.sign not in (1, -1):
                raise InputError(f"edge sign must be +-1, got {e.sign}", elements=(e.u, e.v))
        for v in self.vertices:
            if v.genus < 0:
                raise InputError("genus must be >= 0", elements=(v.id,))

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vid: int) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def is_tree(self) -> bool:
        return _is_tree(self.ids, [(e.u, e.v) for e in self.edges])

    def weight_multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in self.vertices:
            out[v.weight] = out.get(v.weight, 0) + 1
        return out


def adjacency(ids, edges) -> dict[int, list[tuple[int, int]]]:
    """id -> list of (neighbor, sign), one entry per parallel edge."""
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in ids}
    for e in edges:
        sign = getattr(e, "sign", 1)
        adj[e.u].append((e.v, sign))
        adj[e.v].append((e.u, sign))
    return adj


def _is_tree(ids, edge_pairs) -> bool:
    if not ids:
        return False
    if len(edge_pairs) != len(ids) - 1:
        return False
    adj: dict[int, list[int]] = {i: [] for i in ids}
    for u, v in edge_pairs:
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    stack = [ids[0]]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(y for y in adj[x] if y not in seen)
    return len(seen) == len(ids)


def check_tree(ids, edge_pairs, what: str = "graph"):
    if not ids:
        raise InputError(f"empty vertex set in {what}")
    if not _is_tree(list(ids), list(edge_pairs)):
        raise NotATreeError(f"not a tree: {what} must be connected and acyclic")


def intersection_matrix(tree: PlumbingTree) -> list[list[int]]:
    """Symmetric matrix with the weights on the diagonal and the signed
    edge counts off it; rows follow the order of ``tree.vertices``."""
    index = {v.id: i for i, v in enumerate(tree.vertices)}
    n = len(tree.vertices)
    m = [[0] * n for _ in range(n)]
    for i, v in enumerate(tree.vertices):
        m[i][i] = v.weight
    for e in tree.edges:
        i, j = index[e.u], index[e.v]
        m[i][j] += e.sign
        m[j][i] += e.sign
    return m


# ---------------------------------------------------------------------------
# Resolution input
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResVertex:
    id: int
    weight: int
    genus: int = 0
    mf: int | None = None
    mg: int | None = None


@dataclass(frozen=True)
class ResArrow:
    vertex: int
    side: str  # "f" or "g"
    mult: int  # +1 for side f, -1 for side g after ingestion


@dataclass(frozen=True)
class ResolutionGraph:
    """Decorated resolution tree of the product germ, with a boundary arrow
    per branch of each side."""

    vertices: tuple[ResVertex, ...]
    edges: tuple[tuple[int, int], ...]
    arrows: tuple[ResArrow, ...] = ()

    def __post_init__(self):
        ids = _ids(self.vertices)
        check_tree(ids, self.edges, "resolution graph")
        known = set(ids)
        for u, v in self.edges:
            if u == v:
                raise InputError("self-loop edge", elements=(u,))
        for a in self.arrows:
            if a.vertex not in known:
                raise InputError("arrow on unknown vertex", elements=(a.vertex,))
            if a.side not in ("f", "g"):
                raise InputError(f"arrow side must be f or g, got {a.side!r}")
            if (a.side == "f" and a.mult != 1) or (a.side == "g" and a.mult != -1):
                raise InputError(
                    "arrow mult must be +1 on side f and -1 on side g",
                    elements=(a.vertex,),
                )
        carries = [v.mf is not None or v.mg is not None for v in self.vertices]
        full = [v.mf is not None and v.mg is not None for v in self.vertices]
        if any(carries) and not all(full):
            raise InputError(
                "either every vertex carries both mf and mg or none does"
            )

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vid: int) -> ResVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def has_multiplicities(self) -> bool:
        return bool(self.vertices) and self.vertices[0].mf is not None

    def node_ids(self) -> tuple[int, ...]:
        return node_ids(self.ids, self.edges, [a.vertex for a in self.arrows],
                        {v.id: v.genus for v in self.vertices})


def node_ids(ids, edge_pairs, arrow_vertices, genus_by_id) -> tuple[int, ...]:
    """Nodes: vertices with edge-valence + arrow count >= 3, or genus >= 1."""
    valence = {i: 0 for i in ids}
    for u, v in edge_pairs:
        valence[u] += 1
        valence[v] += 1
    for a in arrow_vertices:
        valence[a] += 1
    return tuple(i for i in ids if valence[i] >= 3 or genus_by_id[i] >= 1)


# ---------------------------------------------------------------------------
# Orientation-normalized multiplicity tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultVertex:
    id: int
    weight: int
    genus: int
    m: int        # |m^f - m^g| >= 0
    flipped: bool  # True where m^f - m^g < 0


@dataclass(frozen=True)
class MultPlumbing:
    vertices: tuple[MultVertex, ...]
    edges: tuple[Edge, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        ids = _ids(self.vertices)
        check_tree(ids, [(e.u, e.v) for e in self.edges], "multiplicity tree")
        _check_endpoints(ids, self.edges, self.arrows)
        for v in self.vertices:
            if v.m < 0:
                raise InputError("multiplicities must be >= 0 after normalization",
                                 elements=(v.id,))
        flipped = {v.id: v.flipped for v in self.vertices}
        for e in self.edges:
            want = -1 if flipped[e.u] != flipped[e.v] else 1
            if e.sign != want:
                raise InputError(
                    "edge sign must be -1 exactly when one endpoint is flipped",
                    elements=(e.u, e.v),
                )

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vid: int) -> MultVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def node_ids(self) -> tuple[int, ...]:
        return node_ids(self.ids, [(e.u, e.v) for e in self.edges],
                        [a.vertex for a in self.arrows],
                        {v.id: v.genus for v in self.vertices})


def multiplicity_to_plumbing(mp: MultPlumbing) -> PlumbingTree:
    """View a multiplicity tree as a plumbing tree with signed multiplicities."""
    return PlumbingTree(
        vertices=tuple(
            Vertex(v.id, v.weight, v.genus,
                   mult=-v.m if v.flipped else v.m, flipped=v.flipped)
            for v in mp.vertices
        ),
        edges=mp.edges,
        arrows=mp.arrows,
    )


# ---------------------------------------------------------------------------
# Nielsen graphs
# ---------------------------------------------------------------------------

def _canonical(sigma: int, lam: int) -> int:
    return sigma % lam if lam > 0 else sigma


def symmetric_rep(sigma: int, lam: int) -> int:
    """Representative of sigma mod lam with the smallest absolute value
    (ties resolved to the positive one); used for figure-style display."""
    s = sigma % lam
    return s - lam if s > lam - s else s


@dataclass(frozen=True)
class NielsenVertex:
    id: int
    order: int
    genus: int
    q: int = 1


@dataclass(frozen=True)
class Stalk:
    vertex: int
    lam: int
    sigma: int


@dataclass(frozen=True)
class BoundaryStalk:
    vertex: int
    lam: int
    sigma: int
    twist: Fraction


@dataclass(frozen=True)
class NielsenEdge:
    u: int
    v: int
    twist: Fraction
    lam_u: int
    sigma_u: int
    lam_v: int
    sigma_v: int


@dataclass(frozen=True)
class NielsenGraph:
    """Nielsen graph of a quasi-periodic diffeomorphism.

    Valencies are stored with the canonical class representative
    0 <= sigma < lam.  Parallel edges are allowed (they appear when a power
    of the monodromy lifts a reduction curve to several orbits).
    """

    vertices: tuple[NielsenVertex, ...]
    stalks: tuple[Stalk, ...] = ()
    boundary_stalks: tuple[BoundaryStalk, ...] = ()
    edges: tuple[NielsenEdge, ...] = ()

    def __post_init__(self):
        ids = _ids(self.vertices)
        known = set(ids)
        order = {v.id: v.order for v in self.vertices}
        for v in self.vertices:
            if v.order < 1 or v.q < 1 or v.genus < 0:
                raise InputError("order and q must be >= 1, genus >= 0",
                                 elements=(v.id,))
        for vid, lam, sigma in self._incidences():
            if vid not in known:
                raise InputError("incidence on unknown vertex", elements=(vid,))
            if lam < 1:
                raise InputError("valency lam must be >= 1", elements=(vid,))
            if not 0 <= sigma < lam:
                raise InputError(
                    f"sigma must be the canonical representative in [0, lam), "
                    f"got ({lam}, {sigma})", elements=(vid,))
            if order[vid] % lam != 0:
                raise InputError(
                    f"lam = {lam} does not divide the order {order[vid]}",
                    elements=(vid,))
            if lam > 1 and gcd(sigma, lam) != 1:
                raise InputError(
                    f"sigma = {sigma} is not invertible mod lam = {lam}",
                    elements=(vid,))
        for b in self.boundary_stalks:
            if b.twist == 0:
                raise InputError("boundary-stalk twist must be nonzero",
                                 elements=(b.vertex,))
        for e in self.edges:
            if e.twist == 0:
                raise InputError("edge twist must be nonzero", elements=(e.u, e.v))
            if order[e.u] // e.lam_u != order[e.v] // e.lam_v:
                raise InputError(
                    "edge orbit counts disagree: m_u/lam_u != m_v/lam_v",
                    elements=(e.u, e.v))
        for v in self.vertices:
            e = self.euler_class_sum(v.id)
            if e.denominator != 1:
                raise InputError(
                    f"sum of sigma/lam at vertex {v.id} is {e}, not an integer",
                    elements=(v.id,))

    def _incidences(self):
        for s in self.stalks:
            yield s.vertex, s.lam, s.sigma
        for b in self.boundary_stalks:
            yield b.vertex, b.lam, b.sigma
        for e in self.edges:
            yield e.u, e.lam_u, e.sigma_u
            yield e.v, e.lam_v, e.sigma_v

    def incidences_at(self, vid: int) -> list[tuple[int, int]]:
        """All (lam, sigma) valencies at one vertex, stalks first."""
        return [(lam, sigma) for v, lam, sigma in self._incidences() if v == vid]

    def euler_class_sum(self, vid: int) -> Fraction:
        """Sum of sigma/lam over all incidences; its integrality is
        independent of the representative choice."""
        return sum((Fraction(s, l) for l, s in self.incidences_at(vid)),
                   Fraction(0))

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vid: int) -> NielsenVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)


# ---------------------------------------------------------------------------
# Waldhausen graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WaldVertex:
    id: int
    e: int
    genus: int
    q: int = 1
    order: int = 1  # multiplicity of the open book on this Seifert piece


@dataclass(frozen=True)
class WaldStalk:
    vertex: int
    alpha: int
    beta: int  # 1 <= beta < alpha


@dataclass(frozen=True)
class WaldArrow:
    vertex: int
    alpha: int
    beta: int  # 0 <= beta < alpha


@dataclass(frozen=True)
class WaldEdge:
    u: int
    v: int
    eps: int
    alpha: int
    beta_u: int  # triplet read from u is (eps, alpha, beta_u)
    beta_v: int  # triplet read from v is (eps, alpha, beta_v)


@dataclass(frozen=True)
class WaldhausenGraph:
    vertices: tuple[WaldVertex, ...]
    stalks: tuple[WaldStalk, ...] = ()
    arrows: tuple[WaldArrow, ...] = ()
    edges: tuple[WaldEdge, ...] = ()

    def __post_init__(self):
        ids = _ids(self.vertices)
        known = set(ids)
        for s in self.stalks:
            if s.vertex not in known:
                raise InputError("stalk on unknown vertex", elements=(s.vertex,))
            if not 1 <= s.beta < s.alpha:
                raise InputError(
                    f"stalk pair ({s.alpha}, {s.beta}) is not normalized",
                    elements=(s.vertex,))
        for a in self.arrows:
            if a.vertex not in known:
                raise InputError("arrow on unknown vertex", elements=(a.vertex,))
            if not 0 <= a.beta < a.alpha:
                raise InputError(
                    f"arrow pair ({a.alpha}, {a.beta}) is not normalized",
                    elements=(a.vertex,))
        for e in self.edges:
            if e.u not in known or e.v not in known:
                raise InputError("edge on unknown vertex", elements=(e.u, e.v))
            if e.eps not in (1, -1):
                raise InputError("edge eps must be +-1", elements=(e.u, e.v))
            if e.alpha < 1:
                raise InputError("edge alpha must be >= 1", elements=(e.u, e.v))
            if e.alpha == 1:
                if e.beta_u != 0 or e.beta_v != 0:
                    raise InputError("alpha = 1 edges need beta = beta' = 0",
                                     elements=(e.u, e.v))
            else:
                if not (0 <= e.beta_u < e.alpha and 0 <= e.beta_v < e.alpha):
                    raise InputError("edge pair is not normalized",
                                     elements=(e.u, e.v))
                if (e.beta_u * e.beta_v) % e.alpha != 1 % e.alpha:
                    raise InputError(
                        f"beta * beta' = {e.beta_u} * {e.beta_v} is not 1 mod {e.alpha}",
                        elements=(e.u, e.v))

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vid: int) -> WaldVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)
