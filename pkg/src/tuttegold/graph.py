"""Dart-based multigraphs, rotation systems, surgery, and canonical codes.

Edge ``i`` owns darts ``2*i`` (at ``edges[i][0]``) and ``2*i + 1`` (at
``edges[i][1]``); the edge involution is ``d ^ 1``.  Loops and parallel edges
are ordinary edges.  ``free_circles`` counts closed vertex-free curves left
behind by smoothing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import networkx as nx


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of darts around each vertex."""

    orders: tuple  # orders[v] is a tuple of darts

    def successor(self) -> dict:
        succ = {}
        for order in self.orders:
            k = len(order)
            for i, d in enumerate(order):
                succ[d] = order[(i + 1) % k]
        return succ

    def faces(self) -> list:
        """Orbits of d -> succ(d ^ 1); every dart lies in exactly one face."""
        succ = self.successor()
        seen = set()
        faces = []
        for d in sorted(succ):
            if d in seen:
                continue
            face = []
            x = d
            while x not in seen:
                seen.add(x)
                face.append(x)
                x = succ[x ^ 1]
            if x != d:
                raise GraphError("face tracing did not close up")
            faces.append(tuple(face))
        return faces


@dataclass(frozen=True)
class MultiGraph:
    n: int
    edges: tuple = ()
    free_circles: int = 0
    rotation: Optional[RotationSystem] = field(default=None, compare=False)

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for {self.n} vertices")
        object.__setattr__(self, "edges", edges)

    # ------------------------------------------------------------------ basics
    @classmethod
    def from_edges(cls, edges: Iterable, n: Optional[int] = None, free_circles: int = 0):
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, tuple(edges), free_circles)

    @property
    def V(self) -> int:
        return self.n

    @property
    def E(self) -> int:
        return len(self.edges)

    def dart_vertex(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    @cached_property
    def darts_at(self) -> tuple:
        at = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            at[u].append(2 * i)
            at[v].append(2 * i + 1)
        return tuple(tuple(a) for a in at)

    @cached_property
    def degrees(self) -> tuple:
        return tuple(len(a) for a in self.darts_at)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    @cached_property
    def component_labels(self) -> tuple:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        roots = {}
        return tuple(roots.setdefault(find(v), len(roots)) for v in range(self.n))

    @property
    def c(self) -> int:
        """Number of connected components (vertex components only)."""
        return len(set(self.component_labels))

    def is_connected(self) -> bool:
        return self.c <= 1

    def is_cubic(self) -> bool:
        return self.n > 0 and all(d == 3 for d in self.degrees)

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def with_rotation(self, rotation: RotationSystem) -> "MultiGraph":
        return MultiGraph(self.n, self.edges, self.free_circles, rotation)

    # ----------------------------------------------------------------- surgery
    def delete(self, e: int) -> "MultiGraph":
        edges = self.edges[:e] + self.edges[e + 1:]
        return MultiGraph(self.n, edges, self.free_circles)

    def contract(self, e: int) -> "MultiGraph":
        u, v = self.edges[e]
        if u == v:
            raise GraphError("cannot contract a loop")
        keep, gone = min(u, v), max(u, v)

        def relabel(x):
            if x == gone:
                x = keep
            return x - 1 if x > gone else x

        edges = tuple((relabel(a), relabel(b))
                      for i, (a, b) in enumerate(self.edges) if i != e)
        return MultiGraph(self.n - 1, edges, self.free_circles)

    def remove_vertices(self, vs: Iterable[int]) -> "MultiGraph":
        """Drop vertices; they must be isolated."""
        vs = set(vs)
        for u, v in self.edges:
            if u in vs or v in vs:
                raise GraphError("remove_vertices: vertex is not isolated")
        remap, k = {}, 0
        for x in range(self.n):
            if x not in vs:
                remap[x] = k
                k += 1
        return MultiGraph(k, tuple((remap[a], remap[b]) for a, b in self.edges),
                          self.free_circles)

    def suppress_vertex(self, x: int) -> "MultiGraph":
        """Splice the two darts at a 2-valent vertex into one edge and drop x."""
        inc = self.darts_at[x]
        if len(inc) != 2:
            raise GraphError(f"vertex {x} has degree {len(inc)}, not 2")
        d1, d2 = inc
        e1, e2 = d1 >> 1, d2 >> 1
        if e1 == e2:
            # lone loop: becomes a vertex-free circle
            g = MultiGraph(self.n, self.edges[:e1] + self.edges[e1 + 1:],
                           self.free_circles + 1)
            return g.remove_vertices([x])
        p = self.dart_vertex(d1 ^ 1)
        q = self.dart_vertex(d2 ^ 1)
        edges = [ed for i, ed in enumerate(self.edges) if i not in (e1, e2)]
        edges.append((p, q))
        g = MultiGraph(self.n, tuple(edges), self.free_circles)
        return g.remove_vertices([x])

    def remove_edge_smooth(self, e: int) -> "MultiGraph":
        """Delete e and suppress the 2-valent vertices this creates."""
        u, v = self.edges[e]
        if self.degrees[u] != 3 or self.degrees[v] != 3:
            raise GraphError("remove_edge_smooth needs trivalent endpoints")
        g = self.delete(e)
        if u == v:
            return g
        # suppress the larger index first so the smaller keeps its label
        hi, lo = max(u, v), min(u, v)
        g = g.suppress_vertex(hi)
        if g.degrees[lo] == 2:
            g = g.suppress_vertex(lo)
        return g

    def disjoint_union(self, other: "MultiGraph") -> "MultiGraph":
        shift = self.n
        edges = self.edges + tuple((a + shift, b + shift) for a, b in other.edges)
        return MultiGraph(self.n + other.n, edges, self.free_circles + other.free_circles)

    def components(self) -> list:
        """Connected components as separate graphs (free circles ride on the first)."""
        labels = self.component_labels
        k = len(set(labels))
        if k <= 1:
            return [self]
        verts = [[] for _ in range(k)]
        for v, l in enumerate(labels):
            verts[l].append(v)
        idx = {}
        for l, vs in enumerate(verts):
            for i, v in enumerate(vs):
                idx[v] = i
        comp_edges = [[] for _ in range(k)]
        for a, b in self.edges:
            comp_edges[labels[a]].append((idx[a], idx[b]))
        out = [MultiGraph(len(verts[l]), tuple(comp_edges[l])) for l in range(k)]
        if self.free_circles:
            out[0] = MultiGraph(out[0].n, out[0].edges, self.free_circles)
        return out

    # ------------------------------------------------------------ connectivity
    def bridges(self) -> set:
        """Edge indices whose removal disconnects their component (low-link)."""
        adj = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            if u != v:
                adj[u].append((v, i))
                adj[v].append((u, i))
        disc = [-1] * self.n
        low = [0] * self.n
        out = set()
        t = 0
        for root in range(self.n):
            if disc[root] != -1:
                continue
            disc[root] = low[root] = t
            t += 1
            stack = [(root, -1, iter(adj[root]))]
            while stack:
                v, pe, it = stack[-1]
                advanced = False
                for w, ei in it:
                    if ei == pe:
                        continue
                    if disc[w] == -1:
                        disc[w] = low[w] = t
                        t += 1
                        stack.append((w, ei, iter(adj[w])))
                        advanced = True
                        break
                    low[v] = min(low[v], disc[w])
                if not advanced:
                    stack.pop()
                    if stack:
                        p = stack[-1][0]
                        low[p] = min(low[p], low[v])
                        if low[v] > disc[p]:
                            out.add(pe)
        return out

    def simple_nx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from((u, v) for u, v in self.edges if u != v)
        return g

    def connectivity(self) -> int:
        """Vertex connectivity of the underlying simple graph."""
        if self.n <= 1:
            return 0
        return nx.node_connectivity(self.simple_nx())

    def is_3connected_cubic(self) -> bool:
        return self.is_cubic() and self.is_simple() and self.connectivity() >= 3

    # -------------------------------------------------------- canonical codes
    def canonical_code(self) -> bytes:
        return repr(canonical_form(self)).encode()

    def __repr__(self):
        extra = f", free_circles={self.free_circles}" if self.free_circles else ""
        return f"MultiGraph(n={self.n}, edges={list(self.edges)}{extra})"


# ---------------------------------------------------------------- canonical form

def _refine(colors: list, nbrs: list) -> list:
    """Colour refinement until stable; returns canonical colour indices."""
    n = len(colors)
    k = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted((colors[w], m) for w, m in nbrs[v])))
                for v in range(n)]
        order = sorted(set(sigs))
        index = {s: i for i, s in enumerate(order)}
        new = [index[s] for s in sigs]
        if len(order) == k:
            return new
        colors, k = new, len(order)


def _code_for(perm_rank: list, mat: dict, n: int) -> tuple:
    return tuple(sorted((min(perm_rank[u], perm_rank[v]), max(perm_rank[u], perm_rank[v]), m)
                        for (u, v), m in mat.items()))


def canonical_form(g: MultiGraph) -> tuple:
    """Isomorphism-complete invariant: (n, free_circles, relabelled edge multiset).

    Colour refinement plus individualisation search; the lexicographically
    least relabelled edge list over all leaves is returned.
    """
    n = g.n
    mat = {}
    for u, v in g.edges:
        key = (u, v) if u <= v else (v, u)
        mat[key] = mat.get(key, 0) + 1
    nbrs = [[] for _ in range(n)]
    loops = [0] * n
    for (u, v), m in mat.items():
        if u == v:
            loops[u] = m
        else:
            nbrs[u].append((v, m))
            nbrs[v].append((u, m))
    if n == 0:
        return (0, g.free_circles, ())
    init = [(g.degrees[v], loops[v]) for v in range(n)]
    order = sorted(set(init))
    colors = _refine([order.index(c) for c in init], nbrs)

    best = [None]
    best_rank = [None]
    top_orbit = list(range(n))  # union-find over first-level choices

    def find(x):
        while top_orbit[x] != x:
            top_orbit[x] = top_orbit[top_orbit[x]]
            x = top_orbit[x]
        return x

    def search(cols, depth, first):
        k = max(cols) + 1
        if k == n:
            code = _code_for(cols, mat, n)
            if best[0] is None or code < best[0]:
                best[0], best_rank[0] = code, cols
            elif code == best[0] and first is not None:
                # automorphism mapping best labelling onto this one
                inv = {r: v for v, r in enumerate(best_rank[0])}
                for v in range(n):
                    a, b = find(v), find(inv[cols[v]])
                    if a != b:
                        top_orbit[a] = b
            return
        counts = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        target = min((c for c, m in counts.items() if m > 1),
                     key=lambda c: (counts[c], c))
        cell = [v for v in range(n) if cols[v] == target]
        tried = []
        for v in cell:
            if depth == 0 and any(find(u) == find(v) for u in tried):
                continue
            # individualise v: shift everything >= target up, v keeps target
            new = [c + 1 if c > target or (c == target and w != v) else c
                   for w, c in enumerate(cols)]
            new = _refine(new, nbrs)
            search(new, depth + 1, v if depth == 0 else first)
            if depth == 0:
                tried.append(v)

    search(colors, 0, None)
    return (n, g.free_circles, best[0])


def are_isomorphic(g: MultiGraph, h: MultiGraph) -> bool:
    return canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------- embeddings

def euler_characteristic_ok(g: MultiGraph, rot: RotationSystem) -> bool:
    """V - E + F == 2 for every component (genus-0 check)."""
    faces = rot.faces()
    labels = g.component_labels
    per = {}
    for v in range(g.n):
        per.setdefault(labels[v], [0, 0, 0])[0] += 1
    for u, _ in g.edges:
        per[labels[u]][1] += 1
    for f in faces:
        per[labels[g.dart_vertex(f[0])]][2] += 1
    return all(V - E + F == 2 for V, E, F in per.values())


def planar_oracle(g: MultiGraph):
    """(is_planar, rotation system or None) via the left-right planarity test.

    Parallel edges are inserted next to each other and loops are placed as
    consecutive darts, which keeps the rotation genus 0.
    """
    simple = g.simple_nx()
    ok, emb = nx.check_planarity(simple)
    if not ok:
        return False, None
    by_pair = {}
    loops = {}
    for i, (u, v) in enumerate(g.edges):
        if u == v:
            loops.setdefault(u, []).append(i)
        else:
            by_pair.setdefault((u, v), []).append(2 * i)
            by_pair.setdefault((v, u), []).append(2 * i + 1)
    orders = []
    for v in range(g.n):
        order = []
        nbrs = list(emb.neighbors_cw_order(v)) if v in emb else []
        for w in nbrs:
            darts = by_pair.get((v, w), [])
            # darts leaving v to w in increasing edge order; at w the mirrored
            # order makes the parallel class nest without crossing
            if v < w:
                order.extend(darts)
            else:
                order.extend(reversed(darts))
        for e in loops.get(v, []):
            order.extend([2 * e, 2 * e + 1])
        orders.append(tuple(order))
    rot = RotationSystem(tuple(orders))
    if not euler_characteristic_ok(g, rot):
        raise GraphError("internal: planar rotation failed the Euler check")
    return True, rot


def dual(g: MultiGraph, rot: Optional[RotationSystem] = None):
    """Face-tracing dual; dart d of the dual is dart d of the primal."""
    rot = rot or g.rotation
    if rot is None:
        raise GraphError("dual needs a rotation system")
    if not g.is_connected():
        raise GraphError("dual needs a connected graph")
    if not euler_characteristic_ok(g, rot):
        raise GraphError("dual needs a genus-0 rotation system")
    faces = rot.faces()
    face_of = {}
    for fi, f in enumerate(faces):
        for d in f:
            face_of[d] = fi
    edges = tuple((face_of[2 * i], face_of[2 * i + 1]) for i in range(g.E))
    drot = RotationSystem(tuple(faces))
    dg = MultiGraph(len(faces), edges, 0, drot)
    return dg, drot


def brute_force_planar(g: MultiGraph) -> bool:
    """Planarity by trying every rotation system (small graphs only)."""
    from itertools import permutations, product

    if g.E == 0:
        return True
    choices = []
    for v in range(g.n):
        darts = g.darts_at[v]
        if len(darts) <= 2:
            choices.append([darts])
        else:
            first, rest = darts[0], darts[1:]
            choices.append([(first,) + p for p in permutations(rest)])
    for combo in product(*choices):
        if euler_characteristic_ok(g, RotationSystem(tuple(combo))):
            return True
    return False
