"""Temperley-Lieb diagrams, Jones-Wenzl projectors, and the trace of Phi(G).

A TL_n diagram is a noncrossing perfect matching of the points
0..n-1 (top, left to right) and n..2n-1 (bottom, left to right).
Coefficients may come from any exact field: ``Fraction``, ``GoldenNum`` or
sympy's ``QQ.frac_field(d)`` for generic d.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .graph import GraphError, MultiGraph, RotationSystem, euler_characteristic_ok

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


class TLError(ValueError):
    pass


def _boundary_order(n: int) -> list:
    """Points in cyclic order around the rectangle (clockwise from top left)."""
    return list(range(n)) + [n + i for i in range(n - 1, -1, -1)]


class TLDiagram:
    __slots__ = ("n", "partner", "_hash")

    def __init__(self, n: int, partner):
        self.n = n
        self.partner = tuple(partner)
        self._hash = hash((n, self.partner))

    def __eq__(self, other):
        return isinstance(other, TLDiagram) and self.n == other.n and self.partner == other.partner

    def __hash__(self):
        return self._hash

    def code(self) -> str:
        """Nested-parenthesis word read clockwise around the boundary."""
        order = _boundary_order(self.n)
        pos = {p: i for i, p in enumerate(order)}
        return "".join("(" if pos[self.partner[p]] > pos[p] else ")" for p in order)

    def __lt__(self, other):
        return self.code() < other.code()

    def reflect(self) -> "TLDiagram":
        n = self.n
        flip = [(p + n) % (2 * n) for p in range(2 * n)]
        partner = [0] * (2 * n)
        for p in range(2 * n):
            partner[flip[p]] = flip[self.partner[p]]
        return TLDiagram(n, partner)

    def __repr__(self):
        return f"TLDiagram({self.n}, {self.code()})"


def identity_diagram(n: int) -> TLDiagram:
    return TLDiagram(n, [i + n for i in range(n)] + list(range(n)))


def cupcap_diagram(n: int, i: int) -> TLDiagram:
    """Un-normalised generator joining strands i, i+1 (1-based) top and bottom."""
    if not 1 <= i < n:
        raise TLError(f"generator index {i} out of range for TL_{n}")
    partner = list(identity_diagram(n).partner)
    a, b = i - 1, i
    partner[a], partner[b] = b, a
    partner[n + a], partner[n + b] = n + b, n + a
    return TLDiagram(n, partner)


@lru_cache(maxsize=None)
def basis(n: int) -> tuple:
    """All Catalan(n) diagrams of TL_n, sorted by code."""
    order = _boundary_order(n)

    def matchings(seq):
        if not seq:
            yield []
            return
        first = seq[0]
        for k in range(1, len(seq), 2):
            for left in matchings(seq[1:k]):
                for right in matchings(seq[k + 1:]):
                    yield [(first, seq[k])] + left + right

    out = []
    for m in matchings(order):
        partner = [0] * (2 * n)
        for a, b in m:
            partner[a], partner[b] = b, a
        out.append(TLDiagram(n, partner))
    return tuple(sorted(out))


def _compose_diagrams(a: TLDiagram, b: TLDiagram):
    """a stacked on top of b: returns (diagram, number of closed circles)."""
    n = a.n
    # a: 0..2n-1, b: 2n..4n-1; a bottom i (n+i) is glued to b top i (2n+i)
    def partner(p):
        return a.partner[p] if p < 2 * n else b.partner[p - 2 * n] + 2 * n

    def glue(p):
        if n <= p < 2 * n:
            return p + n
        if 2 * n <= p < 3 * n:
            return p - n
        return None

    def out_label(p):
        return p if p < n else p - 2 * n  # a top stays, b bottom -> n..2n-1

    result = [None] * (2 * n)
    seen_mid = set()
    for start in list(range(n)) + list(range(3 * n, 4 * n)):
        if result[out_label(start)] is not None:
            continue
        p = partner(start)
        while glue(p) is not None:
            seen_mid.add(p)
            q = glue(p)
            seen_mid.add(q)
            p = partner(q)
        result[out_label(start)] = out_label(p)
        result[out_label(p)] = out_label(start)
    circles = 0
    for start in range(n, 2 * n):
        if start in seen_mid:
            continue
        circles += 1
        p = start
        while True:
            seen_mid.add(p)
            q = glue(p)
            seen_mid.add(q)
            p = partner(q)
            if p == start:
                break
    return TLDiagram(n, result), circles


def _closure_circles(diag: TLDiagram, closed: int) -> tuple:
    """Close the rightmost ``closed`` strands; returns (residual partner map, circles)."""
    n = diag.n
    keep = n - closed

    def loop_partner(p):  # closure arc outside the rectangle
        i = p % n
        if i >= keep:
            return (p + n) % (2 * n)
        return None

    visited = set()
    residual = {}
    for start in [i for i in range(keep)] + [n + i for i in range(keep)]:
        if start in visited:
            continue
        visited.add(start)
        p = diag.partner[start]
        while loop_partner(p) is not None:
            visited.add(p)
            q = loop_partner(p)
            visited.add(q)
            p = diag.partner[q]
        visited.add(p)
        residual[start] = p
        residual[p] = start
    circles = 0
    for start in range(2 * n):
        if start in visited:
            continue
        circles += 1
        p = start
        while p not in visited:
            visited.add(p)
            q = diag.partner[p]
            visited.add(q)
            p = loop_partner(q)
    return residual, circles


class TLElement:
    """Formal linear combination of TL_n diagrams with loop value d."""

    __slots__ = ("n", "d", "terms")

    def __init__(self, n: int, d, terms=None):
        self.n = n
        self.d = d
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def identity(cls, n: int, d):
        return cls(n, d, {identity_diagram(n): d ** 0})

    @classmethod
    def generator(cls, n: int, i: int, d):
        """e_i with the 1/d normalisation, so that e_i * e_i == e_i."""
        return cls(n, d, {cupcap_diagram(n, i): d ** 0 / d})

    @classmethod
    def cupcap(cls, n: int, i: int, d):
        return cls(n, d, {cupcap_diagram(n, i): d ** 0})

    def _check(self, other):
        if not isinstance(other, TLElement):
            raise TypeError("expected TLElement")
        if other.n != self.n:
            raise TLError(f"degree mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return TLElement(self.n, self.d, t)

    def __neg__(self):
        return TLElement(self.n, self.d, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TLElement(self.n, self.d, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TLElement):
            return self.scale(other)
        return compose(self, other)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TLElement) and self.n == other.n and (self - other).is_zero()

    def tensor_id(self) -> "TLElement":
        """x (x) 1: add a straight strand on the right."""
        n = self.n
        t = {}
        for diag, c in self.terms.items():
            m = n + 1
            relabel = lambda p: p if p < n else p + 1
            partner = [0] * (2 * m)
            for p in range(2 * n):
                partner[relabel(p)] = relabel(diag.partner[p])
            partner[n], partner[2 * n + 1] = 2 * n + 1, n
            t[TLDiagram(m, partner)] = c
        return TLElement(n + 1, self.d, t)

    def bar(self) -> "TLElement":
        """Reflect in a horizontal line; coefficients here are real."""
        return TLElement(self.n, self.d, {k.reflect(): v for k, v in self.terms.items()})

    def __repr__(self):
        return f"TLElement(n={self.n}, {len(self.terms)} terms)"


def compose(a: TLElement, b: TLElement) -> TLElement:
    a._check(b)
    d = a.d
    t = {}
    for da, ca in a.terms.items():
        for db, cb in b.terms.items():
            diag, circles = _compose_diagrams(da, db)
            c = ca * cb * d ** circles
            t[diag] = t[diag] + c if diag in t else c
    return TLElement(a.n, d, t)


def markov_trace(a: TLElement):
    total = a.d ** 0 - a.d ** 0
    for diag, c in a.terms.items():
        _, circles = _closure_circles(diag, diag.n)
        total = total + c * a.d ** circles
    return total


def inner_product(a: TLElement, b: TLElement):
    a._check(b)
    return markov_trace(compose(a, b.bar()))


def partial_trace(a: TLElement, k: int) -> TLElement:
    """Close the rightmost k strands; the result lives in TL_{n-k}."""
    n = a.n
    if not 0 <= k <= n:
        raise TLError(f"cannot close {k} strands of TL_{n}")
    m = n - k
    t = {}
    for diag, c in a.terms.items():
        residual, circles = _closure_circles(diag, k)

        def lab(p):
            return p if p < n else p - n + m

        partner = [0] * (2 * m)
        for p, q in residual.items():
            partner[lab(p)] = lab(q)
        nd = TLDiagram(m, partner)
        v = c * a.d ** circles
        t[nd] = t[nd] + v if nd in t else v
    return TLElement(m, a.d, t)


def chebyshev(k: int, d):
    """Delta_k(d): Delta_0 = 1, Delta_1 = d, Delta_k = d Delta_{k-1} - Delta_{k-2}."""
    prev, cur = d ** 0, d
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, d * cur - prev
    return cur


def jones_wenzl(n: int, d) -> TLElement:
    """P^(n) by Wenzl's recursion.

    P^(k+1) = P^(k) (x) 1 - (Delta_{k-1}/Delta_k) (P^(k) (x) 1) U_k (P^(k) (x) 1).
    """
    for k in range(1, n):
        if chebyshev(k, d) == 0:
            raise TLError(f"Delta_{k}(d) vanishes; P^({n}) undefined")
    p = TLElement.identity(1, d)
    for k in range(1, n):
        q = p.tensor_id()
        u = TLElement.cupcap(k + 1, k, d)
        ratio = chebyshev(k - 1, d) / chebyshev(k, d)
        p = q - compose(compose(q, u), q).scale(ratio)
    return p


# -------------------------------------------------------------- Phi trace

@njit(cache=True)
def _state_histogram(vert_match, E):
    """Histogram over edge subsets S of (|S|, #circles).

    Points 4e..4e+3 are L(2e), R(2e), L(2e+1), R(2e+1).  For e not in S the
    double strand runs straight (L(2e)-R(2e+1), R(2e)-L(2e+1)); for e in S it
    is a cup-cap (L-R at each end).
    """
    P = 4 * E
    hist = np.zeros((E + 1, P + 1), dtype=np.int64)
    edge_match = np.empty(P, dtype=np.int64)
    seen = np.zeros(P, dtype=np.uint8)
    for mask in range(1 << E):
        size = 0
        for e in range(E):
            b = 4 * e
            if (mask >> e) & 1:
                size += 1
                edge_match[b] = b + 1
                edge_match[b + 1] = b
                edge_match[b + 2] = b + 3
                edge_match[b + 3] = b + 2
            else:
                edge_match[b] = b + 3
                edge_match[b + 3] = b
                edge_match[b + 1] = b + 2
                edge_match[b + 2] = b + 1
        for p in range(P):
            seen[p] = 0
        circles = 0
        for s in range(P):
            if seen[s]:
                continue
            circles += 1
            p = s
            while not seen[p]:
                seen[p] = 1
                q = edge_match[p]
                seen[q] = 1
                p = vert_match[q]
        hist[size, circles] += 1
    return hist


def _vertex_matching(g: MultiGraph, rot: RotationSystem) -> np.ndarray:
    """Arcs of the vertex resolution: L(x) joins R(succ(x)) at every vertex."""
    def L(d):
        return 2 * d

    def R(d):
        return 2 * d + 1

    m = np.full(4 * g.E, -1, dtype=np.int64)
    succ = rot.successor()
    for x, y in succ.items():
        m[L(x)] = R(y)
        m[R(y)] = L(x)
    return m


def phi_state_histogram(g: MultiGraph, rot: RotationSystem | None = None) -> np.ndarray:
    rot = rot or g.rotation
    if rot is None:
        raise GraphError("phi_trace needs a rotation system")
    if not g.is_cubic():
        raise GraphError("phi_trace needs a cubic graph")
    if g.n % 2:
        raise GraphError("phi_trace needs an even number of vertices")
    if not g.is_connected() or not euler_characteristic_ok(g, rot):
        raise GraphError("phi_trace needs a connected genus-0 embedding")
    return _state_histogram(_vertex_matching(g, rot), g.E)


def phi_trace(g: MultiGraph, rot: RotationSystem | None = None, d=None, hist=None):
    """tr_d Phi(G) = d^(V/2) sum_S (-1/d)^|S| d^circles(S)."""
    if hist is None:
        hist = phi_state_histogram(g, rot)
    half = g.n // 2
    total = d ** 0 - d ** 0
    for s in range(hist.shape[0]):
        for c in range(hist.shape[1]):
            k = int(hist[s, c])
            if k:
                term = d ** (c - s + half)
                total = total + (term * k if s % 2 == 0 else -(term * k))
    return total
