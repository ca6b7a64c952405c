import json

import pytest

from tuttegold.generators import apollonian, cubic_graphs, k33_plus_edges, k33_plus_two, named
from tuttegold.golden import PHI, GoldenNum
from tuttegold.graph import GraphError, MultiGraph, dual
from tuttegold.identities import (B4, CheckReport, barnette_grunbaum_sequence, conjecture_check,
                                  conjecture_scan, diagonal_quadruple, golden_chromatic,
                                  golden_flow, local_relation_checks, lower_bound_check,
                                  nonplanar_golden_search, upper_bound_check)


@pytest.mark.parametrize("name", ["K4", "octahedron", "icosahedron"])
def test_golden_chromatic_named(name):
    rep = golden_chromatic(named(name))
    assert rep.verdict == "holds"


def test_golden_chromatic_k4_values():
    rep = golden_chromatic(named("K4"))
    assert rep.lhs == (PHI + 2) * PHI ** 2


def test_golden_chromatic_k33_reported():
    assert golden_chromatic(named("K33")).verdict in ("holds", "fails")


@pytest.mark.parametrize("seed", range(5))
def test_golden_flow_on_planar_duals(seed):
    t, rot = next(apollonian(9, seed))
    g, _ = dual(t, rot)
    assert golden_flow(g, "conjugate").verdict == "equality"
    assert golden_flow(g, "direct").verdict == "equality"


def test_golden_flow_rejects_noncubic():
    with pytest.raises(GraphError):
        golden_flow(named("K5"))


@pytest.mark.parametrize("name", ["K33", "petersen", "mobius_kantor"])
def test_normalised_conjugate_form_strict_on_nonplanar(name):
    rep = golden_flow(named(name), "conjugate")
    assert rep.extra["normalized"] == "strict"
    assert golden_flow(named(name), "direct").verdict == "strict"


def test_printed_conjugate_form_direction_depends_on_parity():
    # both sides carry the sign (-1)^E; for odd E the printed inequality reverses
    assert golden_flow(named("K33"), "conjugate").verdict == "fails"
    assert golden_flow(named("petersen"), "conjugate").verdict == "fails"
    assert golden_flow(named("mobius_kantor"), "conjugate").verdict == "strict"


def test_conjecture_check_flags_and_normalised_consistency():
    rep = conjecture_check(named("K33"))
    assert rep.extra["counterexample"] and rep.extra["normalized_consistent"]
    assert conjecture_check(named("K4")).verdict == "equality"
    path = MultiGraph(2, ((0, 1),))
    assert conjecture_check(path).verdict == "skipped"


def test_conjecture_scan_journal_and_dump(tmp_path):
    journal, dump = tmp_path / "j.txt", tmp_path / "dump"
    graphs = list(cubic_graphs(4)) + list(cubic_graphs(6))
    reps = list(conjecture_scan(graphs, journal, dump, halt=True))
    assert reps[-1].verdict == "fails"
    assert len(list(dump.iterdir())) == 1
    again = list(conjecture_scan(graphs, journal, dump, halt=False))
    assert len(again) == len(graphs) - len(reps)


def test_upper_bound_examples():
    k4 = named("K4")
    rep = upper_bound_check(k4, x=B4)
    assert rep.verdict == "strict"
    assert rep.extra["tutte_form"]["holds"] and rep.extra["tutte_form"]["matches_rhs"]
    rep5 = upper_bound_check(k4, x=GoldenNum(5))
    assert (rep5.lhs, rep5.rhs) == (120, 180)
    rep6 = upper_bound_check(named("octahedron"), beraha_n=6)
    assert rep6.verdict in ("strict", "equality")


def test_upper_bound_needs_triangulation():
    with pytest.raises(GraphError):
        upper_bound_check(named("cube"), x=B4)


def test_lower_bound_k4_equality():
    rep = lower_bound_check(named("K4"))
    assert rep.verdict == "equality" and rep.lhs == PHI ** 2
    assert lower_bound_check(named("octahedron")).verdict == "strict"


def test_barnette_grunbaum_reaches_k4():
    g = named("dodecahedron")
    seq = barnette_grunbaum_sequence(g)
    for e in seq:
        g = g.remove_edge_smooth(e)
        assert g.connectivity() >= 3
    assert g.V == 4


def test_nonplanar_search_reports_planarity():
    reps = list(nonplanar_golden_search(k33_plus_two()))
    assert len(reps) == 2 and not any(r.extra["planar"] for r in reps)


def test_k33_plus_triangle_satisfies_golden_identity():
    sat = [r for r in nonplanar_golden_search(k33_plus_edges(3)) if r.verdict == "holds"]
    assert len(sat) == 1 and not sat[0].extra["planar"]


def test_contraction_deletion_relation_on_planar_quadruples():
    t, _ = next(apollonian(8, 2))
    h = t.delete(0)
    a, c = t.edges[0]
    nb = lambda x: {y for u, v in h.edges for y in (u, v) if x in (u, v) and y != x}
    b, d = sorted(nb(a) & nb(c))[:2]
    rep = local_relation_checks(*diagonal_quadruple(h, a, b, c, d))
    assert rep.extra["contraction_deletion"]


def test_report_serialises():
    rep = golden_chromatic(named("K4"))
    d = json.loads(rep.to_json())
    assert d["verdict"] == "holds" and isinstance(d["lhs_approx"], float)
    assert isinstance(rep, CheckReport)
