"""Step 2: Nielsen graph of the quasi-periodic monodromy.

The multiplicity tree is cut at its nodes into node-to-leaf chains, node-to-
node chains and boundary arrows.  Each node becomes one Nielsen vertex of
order m_v; each chain contributes a valency computed from the chain's
negative continued fraction, and each inter-node chain carries a fractional
Dehn twist

    t = -eps_chain * n * alpha / (m_i * m_j) ,

where n is the (constant) gcd of consecutive multiplicities along the chain,
alpha the numerator of the chain fraction, and eps_chain the product of the
edge signs.  The unflipped (holomorphic) case therefore has negative twists
throughout, and a sign flip across the chain makes the twist positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd

from .contfrac import cf_dual, neg_cf_eval
from .errors import ChainDataError, UnsupportedError
from .graphs import (
    BoundaryStalk,
    MultPlumbing,
    NielsenEdge,
    NielsenGraph,
    NielsenVertex,
    Stalk,
    adjacency,
)

__all__ = ["StalkChain", "EdgeChain", "Decomposition", "decompose",
           "build_nielsen", "nielsen_isomorphic"]


@dataclass(frozen=True)
class StalkChain:
    node: int
    vertices: tuple[int, ...]  # ordered from the node outwards, leaf last


@dataclass(frozen=True)
class EdgeChain:
    node_u: int
    node_v: int
    vertices: tuple[int, ...]  # interior vertices ordered from node_u, may be empty
    sign: int                  # product of edge signs along the chain


@dataclass(frozen=True)
class Decomposition:
    nodes: tuple[int, ...]
    stalk_chains: tuple[StalkChain, ...]
    edge_chains: tuple[EdgeChain, ...]
    node_arrows: tuple  # Arrow instances sitting on nodes


def decompose(mp: MultPlumbing) -> Decomposition:
    """Partition the tree into nodes, stalk chains, edge chains and arrows.

    Chains are walked from the node with the smaller id, so the orientation
    of every edge chain is deterministic.
    """
    nodes = mp.node_ids()
    if not nodes:
        raise UnsupportedError(
            "no node: Seifert / unknot inputs are outside the supported family")
    node_set = set(nodes)
    for a in mp.arrows:
        if a.vertex not in node_set:
            raise UnsupportedError("arrow on non-node vertex",
                                   elements=(a.vertex,))
    mults = {v.id: v.m for v in mp.vertices}
    zero_nodes = tuple(n for n in nodes if mults[n] == 0)
    if zero_nodes:
        raise ChainDataError("m = 0 on a node", elements=zero_nodes)
    adj = adjacency(mp.ids, mp.edges)
    stalk_chains = []
    edge_chains = []
    consumed: set[tuple[int, int]] = set()  # (node, first interior/neighbor) walks done
    for node in sorted(nodes):
        for nbr, sign in sorted(adj[node]):
            if (node, nbr) in consumed:
                continue
            chain, end, total_sign = _walk(adj, node_set, node, nbr, sign)
            if end is None:
                zero = tuple(v for v in chain if mults[v] == 0)
                if zero:
                    raise ChainDataError("m = 0 inside stalk chain", elements=zero)
                stalk_chains.append(StalkChain(node, tuple(chain)))
            else:
                consumed.add((end, chain[-1] if chain else node))
                edge_chains.append(EdgeChain(node, end, tuple(chain), total_sign))
    return Decomposition(
        nodes=tuple(sorted(nodes)),
        stalk_chains=tuple(stalk_chains),
        edge_chains=tuple(edge_chains),
        node_arrows=tuple(mp.arrows),
    )


def _walk(adj, node_set, start, first, first_sign):
    """Follow the chain leaving ``start`` through ``first``; returns the
    interior vertices, the far node (or None for a leaf) and the sign product."""
    chain = []
    sign = first_sign
    prev, cur = start, first
    while cur not in node_set:
        chain.append(cur)
        nxt = [(w, s) for w, s in adj[cur] if w != prev]
        if not nxt:
            return chain, None, sign
        (cur2, s2), = nxt
        sign *= s2
        prev, cur = cur, cur2
    return chain, cur, sign


def chain_gcd(values: list[int]) -> int:
    """Constant gcd of consecutive entries along a chain (gcd(0, r) := r)."""
    gcds = {gcd(values[i], values[i + 1]) for i in range(len(values) - 1)}
    if len(gcds) != 1:
        raise ChainDataError(
            f"inconsistent chain data: consecutive multiplicity gcds {sorted(gcds)} vary")
    return gcds.pop()


def _chain_fraction(mp: MultPlumbing, vertices) -> tuple[int, int]:
    """alpha/(alpha - beta) of the chain read in the given order.

    Chains of a non-minimal resolution may pass through weights >= -1; the
    negative continued fraction value is blow-down invariant, so the result
    is still the reduced pair (degenerate chains raise).
    """
    weights = [-mp.vertex(vid).weight for vid in vertices]
    num, den = neg_cf_eval(weights)
    if num < 1 or not 1 <= den <= num:
        raise ChainDataError(
            f"chain fraction {num}/{den} along {list(vertices)} is not of "
            f"the form alpha/(alpha-beta)", elements=tuple(vertices))
    return num, den


def build_nielsen(mp: MultPlumbing) -> NielsenGraph:
    """Nielsen graph of the monodromy of the fibred multiplicity tree."""
    dec = decompose(mp)
    m = {v.id: v.m for v in mp.vertices}
    vertices = tuple(
        NielsenVertex(n, m[n], mp.vertex(n).genus, 1) for n in dec.nodes
    )

    stalks = []
    for sc in dec.stalk_chains:
        alpha, den = _chain_fraction(mp, sc.vertices)
        beta = alpha - den
        m_adj = m[sc.vertices[0]]
        expected = m[sc.node] // gcd(m[sc.node], m_adj)
        if alpha != expected:
            raise ChainDataError(
                f"inconsistent chain data: stalk fraction has alpha = {alpha} "
                f"but multiplicities force {expected}",
                elements=(sc.node, sc.vertices[0]))
        stalks.append(Stalk(sc.node, alpha, beta % alpha))

    boundary_stalks = []
    for a in dec.node_arrows:
        if abs(a.mult) != 1:
            raise UnsupportedError(
                f"arrow multiplicity {a.mult} not supported (need +-1)",
                elements=(a.vertex,))
        order = m[a.vertex]
        boundary_stalks.append(
            BoundaryStalk(a.vertex, order, (-1) % order, Fraction(-1, order)))

    edges = []
    for ec in dec.edge_chains:
        mi, mj = m[ec.node_u], m[ec.node_v]
        if ec.vertices:
            alpha, den = _chain_fraction(mp, ec.vertices)
            beta_u = alpha - den
            n = chain_gcd([mi] + [m[v] for v in ec.vertices] + [mj])
        else:
            alpha, beta_u = 1, 0
            n = gcd(mi, mj)
        if mi % n or mj % n:
            raise ChainDataError(
                "inconsistent chain data: chain gcd does not divide the node orders",
                elements=(ec.node_u, ec.node_v))
        lam_u, lam_v = mi // n, mj // n
        twist = Fraction(-ec.sign * n * alpha, mi * mj)
        s = -ec.sign  # sign of the twist
        beta_v = cf_dual(alpha, beta_u)
        sigma_u = Fraction(lam_u * beta_u + s * lam_v, alpha)
        sigma_v = Fraction(lam_v * beta_v + s * lam_u, alpha)
        if sigma_u.denominator != 1 or sigma_v.denominator != 1:
            raise ChainDataError(
                "inconsistent chain data: rotation numbers are not integral "
                "(the input does not satisfy the monodromical system)",
                elements=(ec.node_u, ec.node_v))
        edges.append(NielsenEdge(
            ec.node_u, ec.node_v, twist,
            lam_u, int(sigma_u) % lam_u,
            lam_v, int(sigma_v) % lam_v,
        ))

    return NielsenGraph(vertices, tuple(stalks), tuple(boundary_stalks), tuple(edges))


# ---------------------------------------------------------------------------
# Isomorphism of decorated Nielsen graphs
# ---------------------------------------------------------------------------

def _vertex_signature(n: NielsenGraph, vid: int):
    v = n.vertex(vid)
    stalks = sorted((s.lam, s.sigma) for s in n.stalks if s.vertex == vid)
    bnd = sorted((b.lam, b.sigma, b.twist) for b in n.boundary_stalks
                 if b.vertex == vid)
    ends = sorted(
        [(e.twist, e.lam_u, e.sigma_u) for e in n.edges if e.u == vid]
        + [(e.twist, e.lam_v, e.sigma_v) for e in n.edges if e.v == vid]
    )
    return (v.order, v.genus, v.q, tuple(stalks), tuple(bnd), tuple(ends))


def _edge_multiset(n: NielsenGraph, relabel):
    out = []
    for e in n.edges:
        a = (relabel[e.u], e.lam_u, e.sigma_u)
        b = (relabel[e.v], e.lam_v, e.sigma_v)
        out.append((e.twist,) + tuple(sorted((a, b))))
    return sorted(out)


def nielsen_isomorphic(a: NielsenGraph, b: NielsenGraph) -> bool:
    """Decoration-preserving graph isomorphism (brute force over the small
    vertex sets that occur here)."""
    if a == b:
        return True
    if len(a.vertices) != len(b.vertices):
        return False
    sig_a = {v.id: _vertex_signature(a, v.id) for v in a.vertices}
    sig_b = {v.id: _vertex_signature(b, v.id) for v in b.vertices}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return False
    ids_a = list(a.ids)
    for perm in permutations(b.ids):
        relabel = dict(zip(ids_a, perm))
        if any(sig_a[u] != sig_b[relabel[u]] for u in ids_a):
            continue
        if _edge_multiset(a, relabel) == _edge_multiset(b, {i: i for i in b.ids}):
            return True
    return False
