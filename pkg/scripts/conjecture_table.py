"""Tabulate the conjugate flow inequality over cubic bridgeless graphs.

For every graph it records the printed comparison, the sign-normalised one
(-phi)^E F(3-phi) >= F(2-phi)^2, the direct form, and planarity, then prints
counts grouped by (n, planar).
"""
import argparse
import json
from collections import Counter
from dataclasses import dataclass

from tuttegold.generators import cubic_graphs, named
from tuttegold.identities import conjecture_check, golden_flow


@dataclass
class TableConfig:
    max_n: int = 12
    extra: tuple = ("petersen", "mobius_kantor")


def rows(cfg: TableConfig):
    graphs = [(n, g) for n in range(4, cfg.max_n + 1, 2) for g in cubic_graphs(n)]
    graphs += [(named(x).V, named(x)) for x in cfg.extra]
    for n, g in graphs:
        rep = conjecture_check(g)
        if rep.verdict == "skipped":
            continue
        yield {"n": n, "E": g.E, "planar": rep.extra["planar"],
               "printed": rep.verdict,
               "normalized": rep.extra["normalized"],
               "direct": golden_flow(g, "direct").verdict,
               "ratio": rep.to_dict()["lhs_approx"] / rep.to_dict()["rhs_approx"]}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=TableConfig.max_n)
    ap.add_argument("--jsonl", help="also write every row here")
    a = ap.parse_args()
    table = list(rows(TableConfig(a.max_n)))
    if a.jsonl:
        with open(a.jsonl, "w") as fh:
            for r in table:
                fh.write(json.dumps(r) + "\n")
    counts = Counter((r["n"], r["E"] % 2, r["planar"], r["printed"], r["normalized"], r["direct"])
                     for r in table)
    print(f"{'n':>3} {'E odd':>5} {'planar':>6} {'printed':>9} {'normalised':>10} {'direct':>9} count")
    for (n, odd, pl, pr, no, di), c in sorted(counts.items()):
        print(f"{n:>3} {odd:>5} {pl!s:>6} {pr:>9} {no:>10} {di:>9} {c:>5}")
    low = min(r["ratio"] for r in table if not r["planar"])
    print(f"smallest lhs/rhs ratio over non-planar graphs: {low:.6f}")
