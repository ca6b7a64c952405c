import networkx as nx
import pytest

from tuttegold.generators import (CUBIC_COUNTS, apollonian, apollonian_family, cubic_graphs,
                                  distinct_apollonian, k33_plus_edges, k33_plus_two, named)
from tuttegold.graph import canonical_form, dual, euler_characteristic_ok, planar_oracle


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_cubic_counts(n):
    gs = list(cubic_graphs(n))
    assert len(gs) == CUBIC_COUNTS[n]
    assert len({canonical_form(g) for g in gs}) == len(gs)
    assert all(g.is_cubic() and g.is_simple() and g.is_connected() for g in gs)


@pytest.mark.slow
def test_cubic_count_12():
    assert sum(1 for _ in cubic_graphs(12)) == CUBIC_COUNTS[12]


def test_cubic_6_is_k33_and_prism():
    gs = list(cubic_graphs(6))
    ref = [nx.complete_bipartite_graph(3, 3), nx.circular_ladder_graph(3)]
    for G in ref:
        assert sum(nx.is_isomorphic(g.simple_nx(), G) for g in gs) == 1


def test_cubic_8_covers_random_regular_samples():
    mine = [g.simple_nx() for g in cubic_graphs(8)]
    for seed in range(300):
        G = nx.random_regular_graph(3, 8, seed=seed)
        if nx.is_connected(G):
            assert any(nx.is_isomorphic(G, H) for H in mine)


def test_odd_order_rejected():
    with pytest.raises(ValueError):
        list(cubic_graphs(7))


@pytest.mark.parametrize("seed", range(10))
def test_apollonian_is_embedded_triangulation(seed):
    t, rot = next(apollonian(4 + seed, seed))
    assert t.E == 3 * t.V - 6
    assert euler_characteristic_ok(t, rot)
    assert all(len(f) == 3 for f in rot.faces())
    d, _ = dual(t, rot)
    assert d.is_cubic() and d.is_simple() and d.connectivity() == 3
    assert planar_oracle(d)[0]


def test_apollonian_is_deterministic():
    a = [g.edges for g, _ in apollonian(10, 5, 3)]
    b = [g.edges for g, _ in apollonian(10, 5, 3)]
    assert a == b


def test_apollonian_family_sizes():
    fam = apollonian_family(14, seed=1, count=20)
    assert len(fam) == 20 and max(g.V for g, _ in fam) <= 14


def test_distinct_stacked_triangulations():
    # stacked triangulations on 4..8 vertices: 1, 1, 1, 3, 7 classes
    assert len(distinct_apollonian(8)) == 13


@pytest.mark.parametrize("name,V,E", [("K4", 4, 6), ("K5", 5, 10), ("K33", 6, 9),
                                      ("petersen", 10, 15), ("mobius_kantor", 16, 24),
                                      ("cube", 8, 12), ("octahedron", 6, 12),
                                      ("dodecahedron", 20, 30), ("icosahedron", 12, 30),
                                      ("theta", 2, 3), ("prism_5", 10, 15)])
def test_named_sizes(name, V, E):
    g = named(name)
    assert (g.V, g.E) == (V, E)


def test_named_planar_ones_carry_rotation():
    assert named("icosahedron").rotation is not None
    assert named("petersen").rotation is None
    with pytest.raises(KeyError):
        named("nonsense")


def test_k33_plus_two():
    gs = k33_plus_two()
    assert len(gs) == 2
    assert all((g.V, g.E) == (6, 11) and g.is_simple() for g in gs)
    assert not any(planar_oracle(g)[0] for g in gs)


def test_k33_plus_edges_class_counts():
    assert [len(k33_plus_edges(k)) for k in range(7)] == [1, 1, 2, 2, 2, 1, 1]
