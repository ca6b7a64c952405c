"""Graph families: cubic graphs, stacked triangulations, named graphs."""
from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

import networkx as nx

from .graph import MultiGraph, RotationSystem, canonical_form, dual, planar_oracle

# connected simple cubic graphs on n vertices (OEIS A002851)
CUBIC_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85, 14: 509}


def cubic_graphs(n: int) -> Iterator[MultiGraph]:
    """Every connected simple cubic graph on n vertices, once up to isomorphism.

    Vertices are saturated in order; fresh vertices are introduced in index
    order (so every output is connected and relabelled copies are rarer), and
    duplicates are rejected by canonical form.
    """
    if n % 2 or n < 4:
        raise ValueError("cubic graphs need an even vertex count >= 4")
    deg = [0] * n
    adj = [set() for _ in range(n)]
    seen = set()

    def rec(i, fresh):
        while i < n and deg[i] == 3:
            i += 1
        if i == n:
            if fresh == n:
                g = MultiGraph(n, tuple((u, v) for u in range(n) for v in adj[u] if u < v))
                key = canonical_form(g)
                if key not in seen:
                    seen.add(key)
                    yield g
            return
        if i >= fresh:
            return
        need = 3 - deg[i]
        old = [j for j in range(i + 1, fresh) if deg[j] < 3 and j not in adj[i]]
        for t in range(need, -1, -1):
            if fresh + t > n:
                continue
            news = list(range(fresh, fresh + t))
            for picks in combinations(old, need - t):
                chosen = list(picks) + news
                for j in chosen:
                    adj[i].add(j)
                    adj[j].add(i)
                    deg[j] += 1
                deg[i] = 3
                yield from rec(i + 1, fresh + t)
                deg[i] = 3 - need
                for j in chosen:
                    adj[i].discard(j)
                    adj[j].discard(i)
                    deg[j] -= 1

    deg[0] = 0
    yield from rec(0, 1)


def _rotation_from_neighbours(n: int, rot_nbrs: list):
    edges, dart = [], {}
    for u in range(n):
        for v in rot_nbrs[u]:
            if u < v:
                i = len(edges)
                edges.append((u, v))
                dart[(u, v)] = 2 * i
                dart[(v, u)] = 2 * i + 1
    orders = tuple(tuple(dart[(u, v)] for v in rot_nbrs[u]) for u in range(n))
    rot = RotationSystem(orders)
    return MultiGraph(n, tuple(edges), 0, rot), rot


def _k4_embedded():
    # at each vertex of face (u, v, w) traced in order, succ_v(u) == w
    return [[1, 3, 2], [0, 2, 3], [0, 3, 1], [0, 1, 2]], [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]


def apollonian(V: int, seed: int = 0, count: int = 1) -> Iterator[tuple]:
    """Stacked triangulations: repeatedly insert a vertex into a random face."""
    if V < 4:
        raise ValueError("apollonian triangulations need V >= 4")
    rng = random.Random(seed)
    for _ in range(count):
        nbrs, faces = _k4_embedded()
        for w in range(4, V):
            a, b, c = faces.pop(rng.randrange(len(faces)))
            for x, before in ((a, c), (b, a), (c, b)):
                k = nbrs[x].index(before)
                nbrs[x].insert(k + 1, w)
            nbrs.append([a, c, b])
            faces += [(a, b, w), (b, c, w), (c, a, w)]
        yield _rotation_from_neighbours(V, nbrs)


def apollonian_family(max_v: int, seed: int = 0, count: int = 100) -> list:
    """count stacked triangulations, vertex counts cycling through 4..max_v."""
    rng = random.Random(seed)
    out = []
    sizes = list(range(4, max_v + 1))
    for k in range(count):
        V = sizes[k % len(sizes)]
        out.extend(apollonian(V, rng.randrange(2 ** 32), 1))
    return out


def distinct_apollonian(max_v: int, seed: int = 0, tries: int = 60) -> list:
    """Isomorphism classes of stacked triangulations reached by seeded sampling."""
    out, seen = [], set()
    for V in range(4, max_v + 1):
        for g, rot in apollonian(V, seed + V, tries):
            key = canonical_form(g)
            if key not in seen:
                seen.add(key)
                out.append((g, rot))
    return out


def apollonian_duals(max_n: int, seed: int = 0, tries: int = 60) -> list:
    """Embedded planar cubic 3-connected graphs with at most max_n vertices."""
    out = []
    for g, rot in distinct_apollonian(max_n // 2 + 2, seed, tries):
        dg, drot = dual(g, rot)
        out.append((dg, drot))
    return out


def from_nx(G: nx.Graph, with_rotation: bool = True) -> MultiGraph:
    G = nx.convert_node_labels_to_integers(G, ordering="sorted")
    g = MultiGraph(G.number_of_nodes(), tuple(G.edges()))
    if with_rotation:
        ok, rot = planar_oracle(g)
        if ok:
            g = g.with_rotation(rot)
    return g


def _mobius_kantor():
    return nx.LCF_graph(16, [5, -5], 8)


NAMED = {
    "K4": lambda: nx.complete_graph(4),
    "K5": lambda: nx.complete_graph(5),
    "K33": lambda: nx.complete_bipartite_graph(3, 3),
    "petersen": nx.petersen_graph,
    "mobius_kantor": _mobius_kantor,
    "cube": nx.cubical_graph,
    "octahedron": nx.octahedral_graph,
    "dodecahedron": nx.dodecahedral_graph,
    "icosahedron": nx.icosahedral_graph,
}


def named(name: str) -> MultiGraph:
    """Standard graphs; planar ones carry a genus-0 rotation system."""
    if name == "theta":
        g = MultiGraph(2, ((0, 1), (0, 1), (0, 1)))
        return g.with_rotation(planar_oracle(g)[1])
    if name.startswith("prism_"):
        k = int(name.split("_", 1)[1])
        return from_nx(nx.circular_ladder_graph(k))
    if name not in NAMED:
        raise KeyError(f"unknown graph name {name!r}")
    return from_nx(NAMED[name]())


def k33_plus_edges(k: int) -> list:
    """K_{3,3} plus k new simple edges inside the parts, one graph per isomorphism class."""
    base = tuple(nx.complete_bipartite_graph(3, 3).edges())
    missing = [(u, v) for u, v in combinations(range(6), 2) if (u < 3) == (v < 3)]
    out, seen = [], set()
    for extra in combinations(missing, k):
        g = MultiGraph(6, base + extra)
        key = canonical_form(g)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def k33_plus_two() -> list:
    """K_{3,3} plus two new simple edges (no loops, no parallels)."""
    return k33_plus_edges(2)
