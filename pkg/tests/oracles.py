"""Slow, obviously-correct reference computations used only by the tests."""
from itertools import combinations, product

import hypothesis.strategies as st

from tuttegold.graph import MultiGraph


def _rank(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    r = 0
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            r += 1
    return r


def tutte_subset(g: MultiGraph, x, y):
    """Rank-nullity sum over all edge subsets; free circles count as loops."""
    rE = _rank(g.n, g.edges)
    total = 0
    for k in range(g.E + 1):
        for A in combinations(g.edges, k):
            rA = _rank(g.n, A)
            total += (x - 1) ** (rE - rA) * (y - 1) ** (len(A) - rA)
    return total * y ** g.free_circles


def count_colourings(g: MultiGraph, k: int) -> int:
    if any(u == v for u, v in g.edges) or g.free_circles:
        return 0
    return sum(all(c[u] != c[v] for u, v in g.edges) for c in product(range(k), repeat=g.n))


def count_flows(g: MultiGraph, q: int) -> int:
    """Nowhere-zero Z_q flows for the orientation u -> v of each edge."""
    count = 0
    for vals in product(range(1, q), repeat=g.E):
        net = [0] * g.n
        for (u, v), f in zip(g.edges, vals):
            net[u] -= f
            net[v] += f
        count += all(x % q == 0 for x in net)
    return count * (q - 1) ** g.free_circles


@st.composite
def multigraphs(draw, max_n=6, max_e=8, loops=True, free_circles=False):
    n = draw(st.integers(1, max_n))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    if not loops:
        pairs = pairs.filter(lambda p: p[0] != p[1])
    edges = draw(st.lists(pairs, max_size=max_e))
    fc = draw(st.integers(0, 2)) if free_circles else 0
    return MultiGraph(n, tuple(edges), fc)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def random_adjacent_trivalent(rng, max_edges=10):
    """(graph, e): a connected graph where edge e joins trivalent vertices 0 and 1.

    Legs at 0 and 1 may be loops, parallel to e, or go to other vertices;
    the remaining edges avoid 0 and 1 so both stay trivalent.
    """
    while True:
        g = _adjacent_trivalent_attempt(rng, max_edges)
        if g.is_connected():
            return g, 0


def _adjacent_trivalent_attempt(rng, max_edges):
    n = rng.randint(2, 6)
    edges = [(0, 1)]
    ends = {0: 2, 1: 2}
    for u in (0, 1):
        while ends[u]:
            v = rng.randrange(n)
            if v in (0, 1) and v != u and ends[v] == 0:
                continue
            if v == u and ends[u] < 2:
                continue
            edges.append((u, v))
            ends[u] -= 1
            if v in (0, 1):
                ends[v] -= 1
    others = list(range(2, n))
    while others and len(edges) < max_edges and rng.random() < 0.8:
        edges.append((rng.choice(others), rng.choice(others)))
    return MultiGraph(n, tuple(edges))
