"""Tutte, chromatic and flow polynomials by memoised deletion-contraction.

Memo keys are canonical forms of reduced, connected pieces, so isomorphic
subproblems are solved once.  Free circles behave as loops (factor y in the
Tutte polynomial, x - 1 in the flow polynomial, 0 for the chromatic one).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .golden import BivarPoly, UPoly
from .graph import MultiGraph, canonical_form, dual

X = UPoly.x()
XM1 = UPoly((-1, 1))


@dataclass
class PolyCache:
    tutte: dict = field(default_factory=dict)
    chromatic: dict = field(default_factory=dict)
    flow: dict = field(default_factory=dict)

    def clear(self):
        self.tutte.clear()
        self.chromatic.clear()
        self.flow.clear()


DEFAULT_CACHE = PolyCache()


def _pick_edge(g: MultiGraph, avoid: set) -> int:
    """Prefer an edge in a 2-cycle, then a triangle, then at a max-degree vertex."""
    seen = {}
    for i, (u, v) in enumerate(g.edges):
        if i in avoid or u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            return i
        seen[key] = i
    nbrs = [set() for _ in range(g.n)]
    for (u, v) in seen:
        nbrs[u].add(v)
        nbrs[v].add(u)
    for (u, v), i in seen.items():
        if nbrs[u] & nbrs[v]:
            return i
    return max(seen.values(), key=lambda i: max(g.degrees[g.edges[i][0]],
                                                g.degrees[g.edges[i][1]]))


def _drop_isolated(g: MultiGraph) -> MultiGraph:
    iso = [v for v in range(g.n) if g.degrees[v] == 0]
    return g.remove_vertices(iso) if iso else g


# ------------------------------------------------------------------ Tutte

def tutte(g: MultiGraph, cache: PolyCache | None = None) -> BivarPoly:
    cache = cache or DEFAULT_CACHE
    result = BivarPoly.monomial(0, g.free_circles)
    for comp in MultiGraph(g.n, g.edges).components():
        result = result * _tutte_connected(comp, cache)
    return result


def _tutte_connected(g: MultiGraph, cache: PolyCache) -> BivarPoly:
    factor = BivarPoly.monomial(0, 0)
    while True:
        loops = [i for i, (u, v) in enumerate(g.edges) if u == v]
        if loops:
            factor = factor * BivarPoly.monomial(0, len(loops))
            g = MultiGraph(g.n, tuple(e for e in g.edges if e[0] != e[1]))
            continue
        br = g.bridges()
        if br:
            e = min(br)
            factor = factor * BivarPoly.monomial(1, 0)
            g = g.contract(e)
            continue
        break
    if g.E == 0:
        return factor
    key = canonical_form(g)
    hit = cache.tutte.get(key)
    if hit is None:
        e = _pick_edge(g, set())
        hit = tutte(g.delete(e), cache) + tutte(g.contract(e), cache)
        cache.tutte[key] = hit
    return factor * hit


# -------------------------------------------------------------- chromatic

def _simplify(g: MultiGraph) -> MultiGraph:
    seen = set()
    edges = []
    for u, v in g.edges:
        key = (min(u, v), max(u, v))
        if key not in seen:
            seen.add(key)
            edges.append(key)
    return MultiGraph(g.n, tuple(edges))


def _falling(n: int) -> UPoly:
    p = UPoly((1,))
    for k in range(n):
        p = p * UPoly((-k, 1))
    return p


def _simplicial_vertex(g: MultiGraph):
    """A vertex whose neighbourhood is a clique, with its degree; g simple."""
    nbrs = [set() for _ in range(g.n)]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    for v in sorted(range(g.n), key=lambda w: len(nbrs[w])):
        ns = nbrs[v]
        if all(ns - {w} <= nbrs[w] for w in ns):
            return v, len(ns)
    return None


def chromatic_poly(g: MultiGraph, cache: PolyCache | None = None) -> UPoly:
    cache = cache or DEFAULT_CACHE
    if g.free_circles or any(u == v for u, v in g.edges):
        return UPoly()
    g = _simplify(g)
    result = UPoly((1,))
    for comp in g.components():
        result = result * _chromatic_connected(comp, cache)
    return result


def _chromatic_connected(g: MultiGraph, cache: PolyCache) -> UPoly:
    n, m = g.n, g.E
    if m == n * (n - 1) // 2:
        return _falling(n)
    if m == n - 1:
        return X * XM1 ** (n - 1)
    key = canonical_form(g)
    hit = cache.chromatic.get(key)
    if hit is not None:
        return hit
    simp = _simplicial_vertex(g)
    if simp is not None:
        v, k = simp
        rest = MultiGraph(n, tuple(e for e in g.edges if v not in e)).remove_vertices([v])
        hit = UPoly((-k, 1)) * _chromatic_connected(rest, cache)
    elif 2 * m > n * (n - 1) // 2:
        # dense: add a missing edge, chi(G) = chi(G + uv) + chi(G / uv)
        adj = {(min(u, v), max(u, v)) for u, v in g.edges}
        deg = g.degrees
        u, v = max(((a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in adj),
                   key=lambda p: deg[p[0]] + deg[p[1]])
        plus = MultiGraph(n, g.edges + ((u, v),))
        merged = MultiGraph(n, g.edges + ((u, v),)).contract(m)
        hit = _chromatic_connected(plus, cache) + chromatic_poly(merged, cache)
    else:
        # an edge at a minimum-degree vertex drives it towards simplicial
        v = min(range(n), key=lambda w: g.degrees[w])
        e = g.darts_at[v][0] >> 1
        hit = chromatic_poly(g.delete(e), cache) - chromatic_poly(g.contract(e), cache)
    cache.chromatic[key] = hit
    return hit


# ------------------------------------------------------------------- flow

def flow_poly(g: MultiGraph, cache: PolyCache | None = None) -> UPoly:
    cache = cache or DEFAULT_CACHE
    result = XM1 ** g.free_circles
    for comp in MultiGraph(g.n, g.edges).components():
        if comp.E:
            result = result * _flow_connected(comp, cache)
            if result == UPoly():
                return result
    return result


def _flow_connected(g: MultiGraph, cache: PolyCache) -> UPoly:
    factor = UPoly((1,))
    while True:
        loops = sum(1 for u, v in g.edges if u == v)
        if loops:
            factor = factor * XM1 ** loops
            g = _drop_isolated(MultiGraph(g.n, tuple(e for e in g.edges if e[0] != e[1])))
            if g.E == 0:
                return factor
            continue
        two = next((v for v in range(g.n) if g.degrees[v] == 2), None)
        if two is not None:
            g = g.suppress_vertex(two)
            continue
        break
    if g.E == 0:
        return factor
    if not g.is_connected():
        return factor * flow_poly(g, cache)
    if g.bridges():
        return UPoly()
    key = canonical_form(g)
    hit = cache.flow.get(key)
    if hit is None:
        e = _pick_edge(g, set())
        hit = flow_poly(g.contract(e), cache) - flow_poly(g.delete(e), cache)
        cache.flow[key] = hit
    return factor * hit


# ------------------------------------------------------------ evaluations

def chromatic_eval(g: MultiGraph, x, cache: PolyCache | None = None):
    return chromatic_poly(g, cache)(x)


def flow_eval(g: MultiGraph, x, cache: PolyCache | None = None):
    return flow_poly(g, cache)(x)


def chromatic_from_tutte(g: MultiGraph, t: BivarPoly | None = None) -> UPoly:
    """(-1)^(V - c) x^c T(1 - x, 0) expanded as an integer polynomial."""
    t = t or tutte(g)
    one_minus_x = UPoly((1, -1))
    acc = UPoly()
    for (i, j), coef in t.terms.items():
        if j == 0:
            acc = acc + one_minus_x ** i * coef
    c = g.c
    sign = -1 if (g.V - c) % 2 else 1
    return acc * UPoly((0,) * c + (sign,))


def flow_from_tutte(g: MultiGraph, t: BivarPoly | None = None) -> UPoly:
    """(-1)^(E + V + c) T(0, 1 - x)."""
    t = t or tutte(g)
    one_minus_x = UPoly((1, -1))
    acc = UPoly()
    for (i, j), coef in t.terms.items():
        if i == 0:
            acc = acc + one_minus_x ** j * coef
    sign = -1 if (g.E + g.V + g.c + g.free_circles) % 2 else 1
    return acc * sign


def verify_duality(g: MultiGraph, rot=None, cache: PolyCache | None = None) -> bool:
    """x * F_G(x) == chi_{G*}(x) for connected plane G."""
    dg, _ = dual(g, rot)
    return X * flow_poly(g, cache) == chromatic_poly(dg, cache)
