import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from oracles import random_adjacent_trivalent
from tuttegold.flowcat import (BASIS, LOOP, Q, Fragment, HypothesisError,
                               check_criterion_hypotheses, defect_table, edge_pieces, edge_triple,
                               embedding_choice, glue, pair, planarity_by_tutte,
                               projector_element, reduce_to_basis, sign_lemma_check,
                               tutte_defect)
from tuttegold.generators import apollonian_duals, cubic_graphs, named
from tuttegold.golden import PHI, GoldenNum
from tuttegold.graph import MultiGraph, are_isomorphic, planar_oracle
from tuttegold.polynomials import flow_poly


def test_loop_value():
    assert Q == PHI ** -2
    assert LOOP == -PHI.inverse()


def test_projector_coordinates_and_pairings():
    p = projector_element()
    assert p.coeffs == (PHI, PHI, GoldenNum(1), GoldenNum(0))
    values = [pair(p, b) for b in BASIS]
    assert values == [0, 0, 0, -PHI]


def test_edge_pieces_glue_back_to_theta():
    h1, _, _ = edge_pieces()
    g = glue(h1, BASIS[3])
    assert are_isomorphic(g, named("theta"))


@st.composite
def fragments(draw):
    k = draw(st.integers(1, 4))
    n = 4 + k
    internal = st.integers(4, n - 1)
    legs = tuple((m, draw(internal)) for m in range(4))
    extra = draw(st.lists(st.tuples(internal, internal), max_size=5))
    return Fragment(MultiGraph(n, legs + tuple(extra)), (0, 1, 2, 3))


@settings(max_examples=60, deadline=None)
@given(fragments(), st.integers(0, 10 ** 6))
def test_reduction_is_confluent(frag, seed):
    ref = reduce_to_basis(frag)
    assert reduce_to_basis(frag, random.Random(seed)) == ref


@settings(max_examples=40, deadline=None)
@given(fragments(), st.integers(0, 3))
def test_reduction_preserves_pairings(frag, j):
    # pairing a fragment against a basis closure equals pairing its coordinates
    direct = flow_poly(glue(frag, BASIS[j]))(Q)
    assert pair(reduce_to_basis(frag), BASIS[j]) == direct


@settings(max_examples=30, deadline=None)
@given(fragments(), fragments(), st.integers(0, 3))
def test_pairing_is_bilinear(a, b, j):
    x, y = reduce_to_basis(a), reduce_to_basis(b)
    c = GoldenNum(2, -3)
    assert pair(x + y.scale(c), BASIS[j]) == pair(x, BASIS[j]) + c * pair(y, BASIS[j])


def test_k33_triples():
    g = named("K33")
    for e in range(g.E):
        h2s = [edge_triple(g, e, c).H2 for c in (0, 1)]
        assert any(not are_isomorphic(h, g) for h in h2s)
        assert all(tutte_defect(g, e, c) == -PHI for c in (0, 1))


def test_k4_defects_split_by_ribbon():
    # the embedding's ribbon gives 0, the other one phi
    g = named("K4")
    for e in range(g.E):
        c = embedding_choice(g, g.rotation, e)
        assert tutte_defect(g, e, c) == 0
        assert tutte_defect(g, e, 1 - c) == PHI


@pytest.mark.parametrize("k", range(12))
def test_embedding_choice_gives_zero_defect(k):
    duals = apollonian_duals(12)
    g, rot = duals[k % len(duals)]
    for e in range(g.E):
        assert tutte_defect(g, e, embedding_choice(g, rot, e)) == 0


def test_sign_lemma_random():
    rng = random.Random(7)
    for _ in range(150):
        g, e = random_adjacent_trivalent(rng)
        assert sign_lemma_check(g, e, 0) and sign_lemma_check(g, e, 1)


def test_defect_table_planar_has_a_zero_per_edge():
    rows = defect_table(named("prism_3"))
    assert len(rows) == 9
    assert all(a == 0 or b == 0 for _, a, b in rows)


@pytest.mark.parametrize("name,planar", [("K4", True), ("cube", True), ("prism_5", True),
                                         ("K33", False), ("petersen", False)])
def test_planarity_by_tutte_named(name, planar):
    assert planarity_by_tutte(named(name)) == planar


def test_planarity_by_tutte_matches_oracle_up_to_10():
    for n in (4, 6, 8, 10):
        for g in cubic_graphs(n):
            if g.connectivity() >= 3:
                assert planarity_by_tutte(g) == planar_oracle(g)[0]


def test_hypotheses_enforced():
    with pytest.raises(HypothesisError):
        check_criterion_hypotheses(named("K5"))
    with pytest.raises(HypothesisError):
        check_criterion_hypotheses(named("theta"))
    two_cut = MultiGraph(8, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (3, 5),
                             (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)))
    with pytest.raises(HypothesisError):
        check_criterion_hypotheses(two_cut)
