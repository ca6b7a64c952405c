"""Search for non-planar graphs satisfying the chromatic golden identity.

Scans K_{3,3} plus k edges inside its parts (k = 0..6) and, optionally, every
connected non-planar graph on at most 7 vertices from the networkx atlas.
For each satisfier it also tries to build quadruples (G1, G2, G3, G4) that
pass the local relation checks.
"""
import argparse
import json
from dataclasses import asdict, dataclass

import networkx as nx

from tuttegold.generators import k33_plus_edges
from tuttegold.graph import MultiGraph
from tuttegold.identities import find_quadruples, nonplanar_golden_search


@dataclass
class SearchConfig:
    max_added: int = 6
    atlas: bool = True
    quadruples: bool = True


def atlas_nonplanar():
    for G in nx.graph_atlas_g():
        if G.number_of_nodes() >= 5 and nx.is_connected(G) and not nx.check_planarity(G)[0]:
            yield MultiGraph(G.number_of_nodes(), tuple(G.edges()))


def run(cfg: SearchConfig):
    families = [(f"k33+{k}", k33_plus_edges(k)) for k in range(cfg.max_added + 1)]
    if cfg.atlas:
        families.append(("atlas<=7", list(atlas_nonplanar())))
    for label, graphs in families:
        sat = []
        for g, rep in zip(graphs, nonplanar_golden_search(graphs)):
            if rep.verdict == "holds" and not rep.extra["planar"]:
                entry = {"edges": g.edges, "V": g.V, "E": g.E, "value": rep.to_dict()["lhs"]}
                if cfg.quadruples:
                    entry["quadruples"] = [r.witnesses for _, r in find_quadruples(g)]
                sat.append(entry)
        print(json.dumps({"family": label, "graphs": len(graphs), "satisfiers": sat}))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-added", type=int, default=SearchConfig.max_added)
    ap.add_argument("--no-atlas", action="store_true")
    ap.add_argument("--no-quadruples", action="store_true")
    a = ap.parse_args()
    cfg = SearchConfig(a.max_added, not a.no_atlas, not a.no_quadruples)
    print(json.dumps({"config": asdict(cfg)}))
    run(cfg)
