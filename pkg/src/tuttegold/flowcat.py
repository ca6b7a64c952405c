"""Edge triples, the Tutte-relation defect at Q = phi^-2, and F_{0,4}.

At an edge e = uv of a graph whose endpoints are trivalent, let a, b be the
other darts at u and c, d those at v.  A ribbon choice picks how the four
legs are re-paired when e is smoothed crosswise:

    choice 0: {(a, c), (b, d)}        choice 1: {(a, d), (b, c)}

H1 = G, H3 = G with e removed and both endpoints suppressed (legs paired
(a, b), (c, d)), and H2 = the crosswise smoothing for the chosen ribbon.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .golden import GoldenNum, PHI, as_golden
from .graph import GraphError, MultiGraph, RotationSystem
from .polynomials import PolyCache, flow_poly

Q = GoldenNum(2, -1)  # phi^-2 = (3 - sqrt 5)/2
LOOP = Q - 1          # -1/phi


class HypothesisError(ValueError):
    """Input violates the hypotheses of the planarity criterion."""


# ------------------------------------------------------------------ splicing

def splice(g: MultiGraph, drop: Sequence[int], stub_pairs: Sequence[tuple],
           remove_edges: Sequence[int] = ()) -> MultiGraph:
    """Delete ``remove_edges``, drop vertices ``drop`` and reconnect their
    remaining darts by ``stub_pairs``.

    Each stub is a dart at a dropped vertex; edges lying entirely between
    dropped vertices are followed through, and a chain that closes up without
    meeting a kept vertex becomes a free circle.
    """
    drop = set(drop)
    pair = {}
    for x, y in stub_pairs:
        pair[x] = y
        pair[y] = x
    removed = set(remove_edges)
    stubs = {d for v in drop for d in g.darts_at[v] if d >> 1 not in removed}
    if set(pair) != stubs:
        raise GraphError("stub pairing must cover every dart at the dropped vertices")
    touched = {d >> 1 for d in stubs} | removed
    new_edges = []
    circles = 0
    done = set()
    # chains starting from a kept vertex
    for s in sorted(stubs):
        if s in done:
            continue
        far = s ^ 1
        if g.dart_vertex(far) in drop:
            continue
        # walk from kept end through the dropped region
        start_vertex = g.dart_vertex(far)
        cur = s
        while True:
            done.add(cur)
            nxt = pair[cur]
            done.add(nxt)
            other = nxt ^ 1
            if g.dart_vertex(other) not in drop:
                new_edges.append((start_vertex, g.dart_vertex(other)))
                break
            cur = other
    # closed chains
    for s in sorted(stubs):
        if s in done:
            continue
        circles += 1
        cur = s
        while cur not in done:
            done.add(cur)
            nxt = pair[cur]
            done.add(nxt)
            cur = nxt ^ 1
    kept = [ed for i, ed in enumerate(g.edges) if i not in touched]
    remap, k = {}, 0
    for v in range(g.n):
        if v not in drop:
            remap[v] = k
            k += 1
    edges = tuple((remap[a], remap[b]) for a, b in kept + new_edges)
    return MultiGraph(k, edges, g.free_circles + circles)


# ------------------------------------------------------------ edge triples

@dataclass(frozen=True)
class EdgeTriple:
    H1: MultiGraph
    H2: MultiGraph
    H3: MultiGraph


def edge_legs(g: MultiGraph, e: int) -> tuple:
    """(u, v, (a, b), (c, d)): the non-e darts at each endpoint of e."""
    u, v = g.edges[e]
    if u == v:
        raise GraphError("edge triple needs a non-loop edge")
    if g.degrees[u] != 3 or g.degrees[v] != 3:
        raise GraphError("edge triple needs trivalent endpoints")
    ab = tuple(x for x in g.darts_at[u] if x >> 1 != e)
    cd = tuple(x for x in g.darts_at[v] if x >> 1 != e)
    return u, v, ab, cd


def edge_triple(g: MultiGraph, e: int, choice: int) -> EdgeTriple:
    u, v, (a, b), (c, d) = edge_legs(g, e)
    if choice not in (0, 1):
        raise ValueError("ribbon choice must be 0 or 1")
    h3 = splice(g, (u, v), [(a, b), (c, d)], (e,))
    crossing = [(a, c), (b, d)] if choice == 0 else [(a, d), (b, c)]
    h2 = splice(g, (u, v), crossing, (e,))
    return EdgeTriple(g, h2, h3)


def embedding_choice(g: MultiGraph, rot: RotationSystem, e: int) -> int:
    """The ribbon choice induced by a rotation system at e.

    With succ the rotation successor, the face through dart 2e continues
    into succ(2e+1) at v and the face through 2e+1 into succ(2e) at u; the
    planar crosswise smoothing joins the legs that share a face.
    """
    u, v, (a, b), (c, d) = edge_legs(g, e)
    succ = rot.successor()
    du, dv = (2 * e, 2 * e + 1) if g.edges[e][0] == u else (2 * e + 1, 2 * e)
    x = succ[du]        # leg at u following e
    y = succ[succ[dv]]  # leg at v preceding e
    # x and y bound the same face on one side of e
    pair = {x, y}
    return 0 if pair in ({a, c}, {b, d}) else 1


def tutte_defect(g: MultiGraph, e: int, choice: int, cache: PolyCache | None = None) -> GoldenNum:
    """F_H1(Q) + phi F_H2(Q) + phi^2 F_H3(Q) at Q = phi^-2."""
    t = edge_triple(g, e, choice)
    f1 = flow_poly(t.H1, cache)(Q)
    f2 = flow_poly(t.H2, cache)(Q)
    f3 = flow_poly(t.H3, cache)(Q)
    return as_golden(f1) + PHI * f2 + PHI * PHI * f3


def sign_lemma_check(g: MultiGraph, e: int, choice: int, cache: PolyCache | None = None) -> bool:
    """(-1)^(V-E) * defect >= 0; the parity argument presumes g connected."""
    dval = tutte_defect(g, e, choice, cache)
    s = dval.sign()
    return s == 0 or (s > 0) == ((g.V - g.E) % 2 == 0)


def defect_table(g: MultiGraph, cache: PolyCache | None = None) -> list:
    """[(edge, defect choice 0, defect choice 1)] for every edge."""
    return [(e, tutte_defect(g, e, 0, cache), tutte_defect(g, e, 1, cache))
            for e in range(g.E)]


def check_criterion_hypotheses(g: MultiGraph):
    if not g.is_cubic():
        raise HypothesisError("graph is not cubic")
    if not g.is_simple():
        raise HypothesisError("graph is not simple")
    if g.connectivity() < 3:
        raise HypothesisError("graph is not 3-connected")


def planarity_by_tutte(g: MultiGraph, cache: PolyCache | None = None) -> bool:
    """Planar iff every edge has a ribbon choice with vanishing defect."""
    check_criterion_hypotheses(g)
    for e in range(g.E):
        if tutte_defect(g, e, 0, cache) and tutte_defect(g, e, 1, cache):
            return False
    return True


# -------------------------------------------------------------- F_{0,4}

@dataclass(frozen=True)
class Fragment:
    """A graph with four marked univalent vertices, listed in boundary order."""

    graph: MultiGraph
    marked: tuple

    def __post_init__(self):
        if len(self.marked) != 4 or len(set(self.marked)) != 4:
            raise GraphError("a 4-legged fragment needs four distinct marked vertices")
        for m in self.marked:
            if self.graph.degrees[m] != 1:
                raise GraphError(f"marked vertex {m} is not univalent")


def _arcs(p, q, r, s) -> Fragment:
    return Fragment(MultiGraph(4, ((p, q), (r, s))), (0, 1, 2, 3))


# e1, e2 noncrossing arc pairings; e3 the 4-valent star; e4 the crossing pairing
BASIS = (
    _arcs(0, 1, 2, 3),
    _arcs(0, 3, 1, 2),
    Fragment(MultiGraph(5, ((0, 4), (1, 4), (2, 4), (3, 4))), (0, 1, 2, 3)),
    _arcs(0, 2, 1, 3),
)
_PAIRING_INDEX = {
    frozenset({frozenset({0, 1}), frozenset({2, 3})}): 0,
    frozenset({frozenset({0, 3}), frozenset({1, 2})}): 1,
    frozenset({frozenset({0, 2}), frozenset({1, 3})}): 3,
}


@dataclass(frozen=True)
class F04Element:
    coeffs: tuple  # four GoldenNum coordinates over e1..e4

    def __add__(self, other):
        return F04Element(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c):
        return F04Element(tuple(a * c for a in self.coeffs))

    @classmethod
    def zero(cls):
        return cls((GoldenNum(0),) * 4)

    @classmethod
    def unit(cls, i: int):
        return cls(tuple(GoldenNum(1 if k == i else 0) for k in range(4)))


def reduce_to_basis(frag: Fragment, rng: Optional[random.Random] = None) -> F04Element:
    """Eliminate internal edges by contraction-deletion at Q = phi^-2.

    ``rng`` randomises the elimination order (for confluence testing).
    """
    g = frag.graph
    marked = {m: i for i, m in enumerate(frag.marked)}
    edges = list(g.edges)
    return _reduce(edges, set(range(g.n)), marked, GoldenNum(1) * LOOP ** g.free_circles, rng)


def _reduce(edges, verts, marked, coef, rng) -> F04Element:
    edges = list(edges)
    verts = set(verts)
    while True:
        if not coef:
            return F04Element.zero()
        loops = [k for k, (a, b) in enumerate(edges) if a == b]
        if loops:
            coef = coef * LOOP ** len(loops)
            edges = [ed for ed in edges if ed[0] != ed[1]]
            continue
        deg = {v: 0 for v in verts}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        if any(deg[v] == 1 and v not in marked for v in verts):
            return F04Element.zero()
        iso = [v for v in verts if deg[v] == 0 and v not in marked]
        if iso:
            verts -= set(iso)
            continue
        two = next((v for v in sorted(verts) if deg[v] == 2 and v not in marked), None)
        if two is not None:
            inc = [k for k, ed in enumerate(edges) if two in ed]
            ends = []
            for k in inc:
                a, b = edges[k]
                ends.append(b if a == two else a)
            edges = [ed for k, ed in enumerate(edges) if k not in inc] + [tuple(ends)]
            verts.discard(two)
            continue
        break
    internal = [k for k, (a, b) in enumerate(edges) if a not in marked and b not in marked]
    if internal:
        k = rng.choice(internal) if rng else internal[0]
        a, b = edges[k]
        deleted = edges[:k] + edges[k + 1:]
        contracted = [tuple(a if x == b else x for x in ed) for ed in deleted]
        return (_reduce(contracted, verts - {b}, marked, coef, rng)
                + _reduce(deleted, verts, marked, -coef, rng))
    # closed components carry no marked vertex: evaluate them now
    comp = _components(edges, verts)
    open_edges, open_verts = [], set()
    for cverts, cedges in comp:
        if cverts & set(marked):
            open_edges += cedges
            open_verts |= cverts
        else:
            relabel = {v: i for i, v in enumerate(sorted(cverts))}
            closed = MultiGraph(len(relabel), tuple((relabel[a], relabel[b]) for a, b in cedges))
            coef = coef * flow_poly(closed)(Q)
    if not coef:
        return F04Element.zero()
    inner = [v for v in open_verts if v not in marked]
    if not inner:
        pairing = frozenset(frozenset({marked[a], marked[b]}) for a, b in open_edges)
        return F04Element.unit(_PAIRING_INDEX[pairing]).scale(coef)
    if len(inner) == 1 and len(open_edges) == 4:
        return F04Element.unit(2).scale(coef)
    raise GraphError("fragment did not reduce to a basis shape")


def _components(edges, verts):
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    groups = {}
    for v in verts:
        groups.setdefault(find(v), (set(), []))[0].add(v)
    for a, b in edges:
        groups[find(a)][1].append((a, b))
    return list(groups.values())


def glue(a: Fragment, b: Fragment) -> MultiGraph:
    """Join marked point i of a to marked point i of b and drop the markers."""
    g = a.graph.disjoint_union(b.graph)
    shift = a.graph.n
    joins = tuple((ma, mb + shift) for ma, mb in zip(a.marked, b.marked))
    g = MultiGraph(g.n, g.edges + joins, g.free_circles)
    for m in sorted([x for pair in joins for x in pair], reverse=True):
        g = g.suppress_vertex(m)
    return g


def pair_fragments(a: Fragment, b: Fragment, cache: PolyCache | None = None):
    return flow_poly(glue(a, b), cache)(Q)


def pair(piece: F04Element, closure, cache: PolyCache | None = None) -> GoldenNum:
    """<piece, closure> with closure a Fragment or another F04Element."""
    if isinstance(closure, F04Element):
        total = GoldenNum(0)
        for i, ci in enumerate(piece.coeffs):
            for j, cj in enumerate(closure.coeffs):
                if ci and cj:
                    total = total + ci * cj * pair_fragments(BASIS[i], BASIS[j], cache)
        return total
    total = GoldenNum(0)
    for i, ci in enumerate(piece.coeffs):
        if ci:
            total = total + ci * pair_fragments(BASIS[i], closure, cache)
    return total


def edge_pieces() -> tuple:
    """The local pieces around e (H1bar, H2bar planar choice, H3bar) as fragments."""
    h1 = Fragment(MultiGraph(6, ((0, 4), (1, 4), (4, 5), (2, 5), (3, 5))), (0, 1, 2, 3))
    h2 = BASIS[1]
    h3 = BASIS[0]
    return h1, h2, h3


def projector_element() -> F04Element:
    """P = H1bar + phi H2bar + phi^2 H3bar reduced to the basis."""
    h1, h2, h3 = edge_pieces()
    return (reduce_to_basis(h1) + reduce_to_basis(h2).scale(PHI)
            + reduce_to_basis(h3).scale(PHI * PHI))
