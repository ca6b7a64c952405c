import json
from fractions import Fraction

import networkx as nx
import pytest

from tuttegold.cli import format_value, main, parse_value, tl_selftest
from tuttegold.golden import PHI, GoldenNum, RealInterval


def _g6(G):
    return nx.to_graph6_bytes(G, header=False).decode()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, G in [("k4", nx.complete_graph(4)), ("k33", nx.complete_bipartite_graph(3, 3)),
                    ("petersen", nx.petersen_graph()), ("k5", nx.complete_graph(5))]:
        p = tmp_path / f"{name}.g6"
        p.write_text(_g6(G))
        paths[name] = str(p)
    path = tmp_path / "path.txt"
    path.write_text("3 2\n0 1\n1 2\n")
    paths["path"] = str(path)
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n")
    paths["bad"] = str(bad)
    return paths


def _json_lines(out):
    return [json.loads(l) for l in out.splitlines() if l.startswith("{")]


def test_parse_value():
    assert parse_value("phi^-2") == GoldenNum(2, -1)
    assert parse_value("1/2 + 3*phi") == GoldenNum(Fraction(1, 2), 3)
    assert parse_value("B4") == PHI + 1
    assert isinstance(parse_value("B6"), RealInterval)
    assert parse_value("-7/3") == GoldenNum(Fraction(-7, 3))


def test_format_value_names_phi_powers():
    assert format_value(-(PHI ** 2)).startswith("-1 + -1*phi = -1*phi^2")
    assert "(~" in format_value(GoldenNum(3, 5))


def test_poly_k4_flow(files, capsys):
    assert main(["poly", "--input", files["k4"], "--what", "flow", "--at", "phi^-2"]) == 0
    assert "-1*phi^2" in capsys.readouterr().out


def test_poly_tutte_coefficients(files, capsys):
    assert main(["poly", "--input", files["k4"], "--what", "tutte"]) == 0
    (rec,) = _json_lines(capsys.readouterr().out)
    assert rec["schema"] == "tuttegold.report/1"
    assert [3, 0, 1] in rec["coefficients"]


def test_poly_bridge_flow_zero(files, capsys):
    assert main(["poly", "--input", files["path"], "--what", "flow", "--at", "5"]) == 0
    assert capsys.readouterr().out.startswith("0 + 0*phi")


def test_parse_error_exit_code(files, capsys):
    assert main(["poly", "--input", files["bad"], "--format", "edgelist"]) == 2
    assert "parse error" in capsys.readouterr().err


def test_planarity_both(files, capsys):
    assert main(["planarity", "--input", files["k33"], "--method", "both"]) == 0
    (rec,) = _json_lines(capsys.readouterr().out)
    assert rec["tutte"] is False and rec["oracle"] is False and rec["agree"]
    assert main(["planarity", "--input", files["k4"], "--method", "both", "--verbose"]) == 0
    (rec,) = _json_lines(capsys.readouterr().out)
    assert rec["tutte"] and rec["oracle"] and len(rec["defects"]) == 6


def test_planarity_petersen_tutte(files, capsys):
    assert main(["planarity", "--input", files["petersen"], "--method", "tutte"]) == 0
    assert _json_lines(capsys.readouterr().out)[0]["tutte"] is False


def test_planarity_hypothesis_violation(files):
    assert main(["planarity", "--input", files["k5"], "--method", "tutte"]) == 3


def test_scan_planarity_equiv_is_order_stable(capsys, tmp_path):
    args = ["scan", "--family", "cubic", "--max-n", "8", "--check", "planarity-equiv"]
    assert main(args + ["--jobs", "1"]) == 0
    one = capsys.readouterr().out
    assert main(args + ["--jobs", "3"]) == 0
    three = capsys.readouterr().out
    assert one == three
    summary = _json_lines(one)[-1]
    assert summary["type"] == "summary" and summary["violations"] == 0


def test_scan_resume_and_csv(capsys, tmp_path):
    journal, table = tmp_path / "journal", tmp_path / "out.csv"
    args = ["scan", "--family", "cubic", "--max-n", "6", "--check", "planarity-equiv",
            "--jobs", "1", "--resume", str(journal), "--csv", str(table)]
    assert main(args) == 0
    first = _json_lines(capsys.readouterr().out)
    assert len(journal.read_text().split()) == len(first) - 1
    assert table.read_text().startswith("graph_code,")
    assert main(args) == 0
    second = _json_lines(capsys.readouterr().out)
    assert second[-1]["resumed_skips"] == len(first) - 1 and len(second) == 1


def test_scan_conjecture_halts_and_dumps(capsys, tmp_path):
    dump = tmp_path / "dump"
    rc = main(["scan", "--family", "cubic", "--max-n", "8", "--check", "conjecture",
               "--jobs", "1", "--dump-dir", str(dump)])
    recs = _json_lines(capsys.readouterr().out)
    assert rc == 1 and recs[-1]["halted"]
    assert len(list(dump.iterdir())) == 1


def test_verify_commuting_square(capsys):
    assert main(["verify", "--identity", "commuting-square", "--v", "7", "--count", "3"]) == 0
    recs = _json_lines(capsys.readouterr().out)
    assert recs[-1]["failures"] == 0 and recs[-1]["checks"] == 18


def test_verify_upper_bound_named(capsys):
    assert main(["verify", "--identity", "upper-bound", "--family", "named"]) == 0
    recs = _json_lines(capsys.readouterr().out)
    b4 = [r for r in recs if r.get("check_name") == "upper-bound@B4"]
    assert len(b4) == 3 and all(r["extra"]["tutte_form"]["holds"] for r in b4)


def test_tl_selftest_matrix():
    res = tl_selftest(4, "phi")
    assert res["trace-radical"][4] and res["partial-trace"][4]
    assert all(res["idempotence"].values())
    generic = tl_selftest(5, "generic")
    assert all(generic["idempotence"].values()) and all(generic["annihilation"].values())


def test_tl_exit_code(capsys):
    assert main(["tl", "--selftest", "--degree", "4", "--at", "neginvphi"]) == 0
    assert "trace-radical" in capsys.readouterr().out
