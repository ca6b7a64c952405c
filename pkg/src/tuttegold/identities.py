"""Checks of golden identities, bounds at Beraha numbers, and scans."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .golden import (GoldenNum, PHI, RealInterval, as_golden, beraha, certified_compare,
                     golden_sign)
from .graph import GraphError, MultiGraph, RotationSystem, dual, planar_oracle
from .io import to_edgelist
from .polynomials import PolyCache, chromatic_poly, flow_poly

PHI_INV = PHI.inverse()
Q_CONJ = GoldenNum(2, -1)      # (3 - sqrt 5)/2 = phi^-2
Q_CONJ2 = GoldenNum(3, -1)     # (5 - sqrt 5)/2
B4 = GoldenNum(1, 1)           # phi + 1
B9 = GoldenNum(2, 1)           # phi + 2

VERDICTS = ("holds", "fails", "strict", "equality", "undecided", "skipped")


def _fmt(x) -> str:
    if isinstance(x, RealInterval):
        return f"[{float(x.lo):.17g}, {float(x.hi):.17g}]"
    return str(as_golden(x)) if not isinstance(x, str) else x


@dataclass
class CheckReport:
    graph_code: str
    check_name: str
    lhs: object
    rhs: object
    verdict: str
    witnesses: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict in ("holds", "strict", "equality", "skipped")

    def to_dict(self) -> dict:
        d = {f: getattr(self, f) for f in ("graph_code", "check_name", "verdict",
                                           "witnesses", "extra")}
        d["lhs"], d["rhs"] = _fmt(self.lhs), _fmt(self.rhs)
        d["lhs_approx"] = _approx(self.lhs)
        d["rhs_approx"] = _approx(self.rhs)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=str, sort_keys=True)


def _approx(x):
    if isinstance(x, RealInterval):
        return float((x.lo + x.hi) / 2)
    try:
        return float(as_golden(x))
    except TypeError:
        return None


def graph_code(g: MultiGraph) -> str:
    """Short stable identifier: a digest of the canonical code."""
    return hashlib.sha1(g.canonical_code()).hexdigest()[:20]


# ------------------------------------------------------------ golden identities

def golden_chromatic(t: MultiGraph, cache: PolyCache | None = None) -> CheckReport:
    """chi(phi+2) == (phi+2) phi^(3V-10) chi(phi+1)^2."""
    chi = chromatic_poly(t, cache)
    lhs = as_golden(chi(B9))
    rhs = B9 * PHI ** (3 * t.V - 10) * as_golden(chi(B4)) ** 2
    return CheckReport(graph_code(t), "golden-chromatic", lhs, rhs,
                       "holds" if lhs == rhs else "fails")


def golden_flow(g: MultiGraph, variant: str = "conjugate",
                cache: PolyCache | None = None) -> CheckReport:
    """Conjugate: F(3-phi) >= (-1/phi)^E F(2-phi)^2.  Direct: F(phi+2) <= phi^E F(phi+1)^2.

    Both sides of the conjugate form carry the sign (-1)^E, so ``extra``
    also records the sign-normalised comparison (-phi)^E F(3-phi) >= F(2-phi)^2.
    """
    if not g.is_cubic():
        raise GraphError("golden_flow needs a cubic graph")
    f = flow_poly(g, cache)
    extra = {}
    if variant == "conjugate":
        lhs = as_golden(f(Q_CONJ2))
        rhs = (-PHI_INV) ** g.E * as_golden(f(Q_CONJ)) ** 2
        s = golden_sign(lhs - rhs)
        extra["normalized"] = _verdict(golden_sign((-PHI) ** g.E * lhs - as_golden(f(Q_CONJ)) ** 2))
    elif variant == "direct":
        lhs = as_golden(f(B9))
        rhs = PHI ** g.E * as_golden(f(B4)) ** 2
        s = golden_sign(rhs - lhs)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return CheckReport(graph_code(g), f"golden-flow-{variant}", lhs, rhs, _verdict(s), extra=extra)


def _verdict(s: int) -> str:
    return "equality" if s == 0 else ("strict" if s > 0 else "fails")


def conjecture_check(g: MultiGraph, cache: PolyCache | None = None) -> CheckReport:
    """The conjugate inequality plus equality <=> planarity, for one graph."""
    if not g.is_cubic() or g.bridges():
        return CheckReport(graph_code(g), "conjecture", "", "", "skipped",
                           extra={"note": "not cubic and bridgeless"})
    rep = golden_flow(g, "conjugate", cache)
    rep.check_name = "conjecture"
    planar = planar_oracle(g)[0]
    rep.extra["planar"] = planar
    norm = rep.extra["normalized"]
    rep.extra["normalized_consistent"] = norm != "fails" and (norm == "equality") == planar
    if rep.verdict == "fails" or (rep.verdict == "equality") != planar:
        rep.verdict = "fails"
        rep.extra["counterexample"] = True
    return rep


def conjecture_scan(graphs: Iterable[MultiGraph], journal: Optional[Path] = None,
                    dump_dir: Optional[Path] = None, halt: bool = True,
                    cache: PolyCache | None = None) -> Iterator[CheckReport]:
    """Run ``conjecture_check`` over a stream.

    Codes already in ``journal`` are skipped; each processed code is
    appended.  A violation is written to ``dump_dir`` as an edge list and,
    with ``halt``, ends the scan after it is yielded.
    """
    done = set()
    if journal is not None and Path(journal).exists():
        done = {l.strip() for l in Path(journal).read_text().splitlines() if l.strip()}
    for g in graphs:
        code = g.canonical_code().hex()
        if code in done:
            continue
        rep = conjecture_check(g, cache)
        if journal is not None:
            with open(journal, "a") as fh:
                fh.write(code + "\n")
        if rep.verdict == "fails" and dump_dir is not None:
            Path(dump_dir).mkdir(parents=True, exist_ok=True)
            (Path(dump_dir) / f"counterexample_{rep.graph_code}.txt").write_text(to_edgelist(g))
        yield rep
        if rep.verdict == "fails" and halt:
            return


# ------------------------------------------------------------------- bounds

def triangulation_rotation(t: MultiGraph, rot: Optional[RotationSystem] = None) -> RotationSystem:
    if not t.is_simple():
        raise GraphError("triangulation must be simple")
    if rot is None:
        rot = t.rotation
    if rot is None:
        ok, rot = planar_oracle(t)
        if not ok:
            raise GraphError("graph is not planar")
    if any(len(f) != 3 for f in rot.faces()):
        raise GraphError("not a triangulation: some face is not a triangle")
    return rot


def _upper_rhs(x, V):
    return x * (x - 1) * (x - 2) ** (V - 2)


def upper_bound_check(t: MultiGraph, x=None, beraha_n: Optional[int] = None,
                      rot: Optional[RotationSystem] = None, bits: int = 128,
                      retries: int = 3, cache: PolyCache | None = None) -> CheckReport:
    """|chi_T(x)| <= x (x-1) (x-2)^(V-2) at x = B_n or a given x >= 4."""
    triangulation_rotation(t, rot)
    chi = chromatic_poly(t, cache)
    if beraha_n is not None:
        x = beraha(beraha_n, bits)
    name = f"upper-bound@B{beraha_n}" if beraha_n is not None else f"upper-bound@{_fmt(x)}"
    for attempt in range(retries + 1):
        lhs = abs(chi(x))
        rhs = _upper_rhs(x, t.V)
        cmp = certified_compare(lhs, rhs)
        if cmp is not None or beraha_n is None:
            break
        bits *= 2
        x = beraha(beraha_n, bits)
    if cmp is None:
        verdict = "undecided"
    elif cmp < 0:
        verdict = "strict"
    elif cmp == 0:
        verdict = "equality"
    else:
        verdict = "fails"
    rep = CheckReport(graph_code(t), name, lhs, rhs, verdict, extra={"bits": bits})
    if isinstance(x, GoldenNum) and x == B4:
        tl = abs(as_golden(chi(B4)))
        tr = PHI ** (5 - t.V)
        rep.extra["tutte_form"] = {"lhs": str(tl), "rhs": str(tr),
                                   "holds": bool(tl <= tr), "matches_rhs": rhs == tr}
    return rep


def lower_bound_check(t: MultiGraph, rot: Optional[RotationSystem] = None,
                      cache: PolyCache | None = None) -> CheckReport:
    """|F_G(phi^-2)| >= phi^(n-2) for G the dual cubic graph, n = 2V - 4."""
    rot = triangulation_rotation(t, rot)
    g, _ = dual(t, rot)
    n = g.V
    lhs = abs(as_golden(flow_poly(g, cache)(Q_CONJ)))
    rhs = PHI ** (n - 2)
    s = golden_sign(lhs - rhs)
    verdict = "equality" if s == 0 else ("strict" if s > 0 else "fails")
    chi = abs(as_golden(chromatic_poly(t, cache)(Q_CONJ)))
    extra = {
        "n": n,
        "chromatic_abs": str(chi),
        "chromatic_vs_printed_2V-6": golden_sign(chi - PHI ** (2 * t.V - 6)) >= 0,
        "chromatic_vs_derived_2V-8": golden_sign(chi - PHI ** (2 * t.V - 8)) >= 0,
    }
    return CheckReport(graph_code(t), "lower-bound", lhs, rhs, verdict, extra=extra)


def barnette_grunbaum_sequence(g: MultiGraph) -> list:
    """Edges (indices into successive graphs) whose removal keeps 3-connectivity, down to K4."""
    if not g.is_3connected_cubic():
        raise GraphError("need a 3-connected cubic simple graph")
    seq = []
    while g.V > 4:
        for e in range(g.E):
            h = g.remove_edge_smooth(e)
            if h.is_simple() and h.is_cubic() and h.connectivity() >= 3:
                seq.append(e)
                g = h
                break
        else:
            raise GraphError("no 3-connectivity preserving edge removal exists")
    return seq


# ---------------------------------------------------- non-planar golden graphs

def nonplanar_golden_search(graphs: Iterable[MultiGraph],
                            cache: PolyCache | None = None) -> Iterator[CheckReport]:
    for g in graphs:
        rep = golden_chromatic(g, cache)
        rep.extra["planar"] = planar_oracle(g)[0]
        yield rep


def local_relation_checks(g1, g2, g3, g4, cache: PolyCache | None = None) -> CheckReport:
    """The projector relation at phi+1, contraction-deletion at phi+2, and the
    quadratic relation at phi+1 for a quadruple G1..G4."""
    c = [chromatic_poly(g, cache) for g in (g1, g2, g3, g4)]
    a = [as_golden(p(B4)) for p in c]
    b = [as_golden(p(B9)) for p in c]
    proj = PHI * a[1] == a[2] + (1 - PHI) * a[3]
    cd = b[0] + b[3] == b[1] + b[2]
    quad = PHI ** 3 * a[0] ** 2 + a[3] ** 2 == PHI ** 3 * a[1] ** 2 + a[2] ** 2
    ok = proj and cd and quad
    return CheckReport(graph_code(g2), "local-relations",
                       PHI * a[1], a[2] + (1 - PHI) * a[3], "holds" if ok else "fails",
                       extra={"projector": proj, "contraction_deletion": cd, "quadratic": quad})


def diagonal_quadruple(h: MultiGraph, a: int, b: int, c: int, d: int) -> tuple:
    """For a 4-cycle a-b-c-d of h: (h+ac, h+bd, h/bd, h/ac)."""
    g1 = MultiGraph(h.n, h.edges + ((a, c),))
    g2 = MultiGraph(h.n, h.edges + ((b, d),))
    g3 = g2.contract(g2.E - 1)
    g4 = g1.contract(g1.E - 1)
    return g1, g2, g3, g4


def find_quadruples(g2: MultiGraph, cache: PolyCache | None = None) -> list:
    """Quadruples with G2 = g2 (some edge bd as the second diagonal) passing all checks."""
    found = []
    for k, (b, d) in enumerate(g2.edges):
        h = g2.delete(k)
        adj = {(min(u, v), max(u, v)) for u, v in h.edges}
        nb = lambda x: {y for u, v in h.edges for y in (u, v) if x in (u, v) and y != x}
        for a, c in combinations(sorted((nb(b) & nb(d)) - {b, d}), 2):
            if (a, c) in adj:
                continue
            quad = diagonal_quadruple(h, a, b, c, d)
            rep = local_relation_checks(*quad, cache=cache)
            if rep.verdict == "holds":
                rep.witnesses = [(a, b, c, d)]
                rep.extra["planar"] = [planar_oracle(q)[0] for q in quad]
                found.append((quad, rep))
    return found
