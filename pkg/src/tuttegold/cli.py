"""Command-line entry point: ``tuttegold {poly,planarity,scan,verify,tl}``.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 a hypothesis of the
requested method does not hold.  Machine-readable output is JSON lines, each
record carrying ``schema``; golden numbers print as ``p/q + r/s*phi``.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from pathlib import Path

from .flowcat import HypothesisError, check_criterion_hypotheses, defect_table, planarity_by_tutte
from .generators import (apollonian, cubic_graphs, distinct_apollonian, k33_plus_two, named)
from .golden import PHI, GoldenNum, RealInterval, as_golden, beraha, golden_sign
from .graph import GraphError, MultiGraph, dual, planar_oracle
from .identities import (CheckReport, conjecture_check, golden_chromatic, golden_flow, graph_code,
                         lower_bound_check, upper_bound_check)
from .io import ParseError, read_graphs, sniff_format, to_edgelist
from .polynomials import flow_eval, flow_poly, chromatic_poly, tutte, verify_duality

SCHEMA = "tuttegold.report/1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3


# ------------------------------------------------------------------ output

def format_value(x) -> str:
    """Exact form plus a decimal; powers of phi are also named."""
    if isinstance(x, RealInterval):
        return f"[{float(x.lo):.17g}, {float(x.hi):.17g}]"
    g = as_golden(x)
    s = f"{g.a} + {g.b}*phi"
    p = phi_power_form(g)
    if p:
        s += f" = {p}"
    return f"{s} (~{float(g):.15g})"


def phi_power_form(g: GoldenNum):
    """'phi^k' or '-1*phi^k' when g = +-phi^k for |k| <= 64, else None."""
    if g == 0:
        return None
    sign = 1 if golden_sign(g) > 0 else -1
    a = g * sign
    if a.norm() not in (1, -1):
        return None
    for k in range(-64, 65):
        if PHI ** k == a:
            return f"phi^{k}" if sign > 0 else f"-1*phi^{k}"
    return None


@dataclass
class Emitter:
    """Writes JSON lines to stdout and optionally mirrors rows to CSV."""
    csv_path: str | None = None

    def __post_init__(self):
        self._fh = self._writer = None
        if self.csv_path:
            self._fh = open(self.csv_path, "w", newline="")
            self._writer = csv.DictWriter(
                self._fh, ["graph_code", "check_name", "verdict", "lhs", "rhs",
                           "lhs_approx", "rhs_approx", "extra"])
            self._writer.writeheader()

    def report(self, rep: CheckReport):
        d = rep.to_dict()
        print(json.dumps({"schema": SCHEMA, "type": "report", **d}, default=str, sort_keys=True),
              flush=True)
        if self._writer:
            self._writer.writerow({k: (json.dumps(d[k], default=str) if k == "extra" else d[k])
                                   for k in self._writer.fieldnames})

    def record(self, kind: str, **fields):
        print(json.dumps({"schema": SCHEMA, "type": kind, **fields}, default=str, sort_keys=True),
              flush=True)

    def close(self):
        if self._fh:
            self._fh.close()


# ------------------------------------------------------------------- input

_GOLDEN_RE = re.compile(r"^\s*([-+]?\d+(?:/\d+)?)\s*\+\s*([-+]?\d+(?:/\d+)?)\s*\*\s*phi\s*$")


def parse_value(text: str):
    """phi^k, B<n>, 'p/q + r/s*phi', or a rational."""
    t = text.strip().replace(" ", "")
    if t in ("phi", "phi^1"):
        return PHI
    m = re.fullmatch(r"(-?)phi\^\(?(-?\d+)\)?", t)
    if m:
        v = PHI ** int(m.group(2))
        return -v if m.group(1) else v
    m = re.fullmatch(r"[Bb](\d+)", t)
    if m:
        return beraha(int(m.group(1)))
    m = _GOLDEN_RE.match(text)
    if m:
        return GoldenNum(Fraction(m.group(1)), Fraction(m.group(2)))
    try:
        return GoldenNum(Fraction(t), 0)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse value {text!r}", 0) from None


def load_graphs(path: str, fmt: str) -> list:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    if fmt == "auto":
        fmt = sniff_format(text)
    return read_graphs(text, fmt)


def _input_args(p):
    p.add_argument("--input", required=True, help="graph file, '-' for stdin")
    p.add_argument("--format", default="auto", choices=("auto", "graph6", "edgelist"))


# -------------------------------------------------------------------- poly

def cmd_poly(args) -> int:
    at = parse_value(args.at) if args.at is not None else None
    for g in load_graphs(args.input, args.format):
        if args.what == "tutte":
            t = tutte(g)
            if at is not None:
                value = t(at, at)
                print(format_value(value))
            else:
                coeffs = sorted(t.terms.items())
                print(json.dumps({"schema": SCHEMA, "type": "tutte", "graph_code": graph_code(g),
                                  "coefficients": [[i, j, c] for (i, j), c in coeffs]}))
            continue
        p = chromatic_poly(g) if args.what == "chromatic" else flow_poly(g)
        if at is None:
            print(json.dumps({"schema": SCHEMA, "type": args.what, "graph_code": graph_code(g),
                              "coefficients": list(p.coeffs)}))
        else:
            print(format_value(p(at)))
    return EXIT_OK


# --------------------------------------------------------------- planarity

def cmd_planarity(args) -> int:
    status = EXIT_OK
    for g in load_graphs(args.input, args.format):
        out = {"graph_code": graph_code(g), "V": g.V, "E": g.E}
        if args.method in ("tutte", "both"):
            try:
                check_criterion_hypotheses(g)
            except HypothesisError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_HYPOTHESIS
            out["tutte"] = planarity_by_tutte(g)
            if args.verbose:
                out["defects"] = [[e, str(a), str(b)] for e, a, b in defect_table(g)]
        if args.method in ("oracle", "both"):
            out["oracle"] = planar_oracle(g)[0]
        if args.method == "both":
            out["agree"] = out["tutte"] == out["oracle"]
            if not out["agree"]:
                status = EXIT_FAIL
                bundle = Path(args.bug_dir)
                bundle.mkdir(parents=True, exist_ok=True)
                stem = bundle / f"disagreement_{out['graph_code']}"
                stem.with_suffix(".txt").write_text(to_edgelist(g))
                table = [[e, str(a), str(b)] for e, a, b in defect_table(g)]
                stem.with_suffix(".json").write_text(json.dumps({**out, "defects": table}, indent=1))
        print(json.dumps({"schema": SCHEMA, "type": "planarity", **out}, sort_keys=True))
    return status


# -------------------------------------------------------------------- scan

def scan_family(family: str, max_n: int):
    if family == "cubic":
        for n in range(4, max_n + 1, 2):
            yield from cubic_graphs(n)
    elif family == "k33plus2":
        yield from k33_plus_two()
    else:
        raise ValueError(f"unknown family {family!r}")


def scan_one(job) -> dict:
    """Worker: one graph, one check; returns a plain dict for ordered merging."""
    check, g = job
    if check == "conjecture":
        rep = conjecture_check(g)
    elif check == "planarity-equiv":
        try:
            check_criterion_hypotheses(g)
        except HypothesisError as exc:
            rep = CheckReport(graph_code(g), check, "", "", "skipped", extra={"note": str(exc)})
        else:
            t, o = planarity_by_tutte(g), planar_oracle(g)[0]
            rep = CheckReport(graph_code(g), check, t, o, "holds" if t == o else "fails",
                              extra={"tutte": t, "oracle": o})
    elif check == "golden-chromatic":
        rep = golden_chromatic(g)
        rep.extra["planar"] = planar_oracle(g)[0]
    else:
        raise ValueError(f"unknown check {check!r}")
    d = rep.to_dict()
    d["code"] = g.canonical_code().hex()
    d["edgelist"] = to_edgelist(g) if not rep.ok else None
    return d


def cmd_scan(args) -> int:
    done = set()
    if args.resume and Path(args.resume).exists():
        done = {l.strip() for l in Path(args.resume).read_text().splitlines() if l.strip()}
    jobs = ((args.check, g) for g in scan_family(args.family, args.max_n)
            if g.canonical_code().hex() not in done)
    counts = {}
    violations = 0
    halted = False
    journal = open(args.resume, "a") if args.resume else None
    emit = Emitter(args.csv)
    workers = args.jobs or os.cpu_count() or 1
    pool = Pool(workers) if workers > 1 else None
    try:
        results = pool.imap(scan_one, jobs, chunksize=4) if pool else map(scan_one, jobs)
        for d in results:
            edgelist, code = d.pop("edgelist"), d.pop("code")
            print(json.dumps({"schema": SCHEMA, "type": "report", **d}, default=str,
                             sort_keys=True), flush=True)
            if emit._writer:
                emit._writer.writerow({k: (json.dumps(d[k], default=str) if k == "extra" else d[k])
                                       for k in emit._writer.fieldnames})
            counts[d["verdict"]] = counts.get(d["verdict"], 0) + 1
            if d["verdict"] == "fails" and args.check != "golden-chromatic":
                violations += 1
                if args.dump_dir and edgelist:
                    Path(args.dump_dir).mkdir(parents=True, exist_ok=True)
                    (Path(args.dump_dir) / f"counterexample_{d['graph_code']}.txt").write_text(edgelist)
            if journal:
                journal.write(code + "\n")
                journal.flush()
            if violations and not args.keep_going:
                halted = True
                break
    finally:
        if pool:
            pool.terminate()
            pool.join()
        if journal:
            journal.close()
        emit.close()
    summary = {"family": args.family, "check": args.check, "counts": counts,
               "violations": violations, "halted": halted, "resumed_skips": len(done)}
    if args.check == "golden-chromatic":
        summary["satisfiers"] = counts.get("holds", 0)
    emit.record("summary", **summary)
    return EXIT_FAIL if violations else EXIT_OK


# ------------------------------------------------------------------ verify

def _triangulations(args) -> list:
    if args.family == "apollonian":
        return list(apollonian(args.v, args.seed, args.count))
    names = args.names.split(",") if args.names else ["K4", "octahedron", "icosahedron"]
    out = []
    for name in names:
        g = named(name)
        if g.rotation is None:
            raise GraphError(f"{name} is not planar")
        out.append((g, g.rotation))
    return out


UPPER_POINTS = ("B2", "B3", "B4", "B5", "B6", "B7", "4", "5")


def verify_reports(identity: str, t: MultiGraph, rot, rng: random.Random):
    if identity == "golden-chromatic":
        yield golden_chromatic(t)
    elif identity == "upper-bound":
        for p in UPPER_POINTS:
            if p.startswith("B"):
                yield upper_bound_check(t, beraha_n=int(p[1:]), rot=rot)
            else:
                yield upper_bound_check(t, x=GoldenNum(int(p)), rot=rot)
    elif identity == "lower-bound":
        yield lower_bound_check(t, rot=rot)
    else:
        g, grot = dual(t, rot)
        code = graph_code(g)
        if identity == "golden-flow":
            for variant in ("conjugate", "direct"):
                rep = golden_flow(g, variant)
                rep.extra["planar"] = True
                if rep.verdict == "strict":
                    rep.verdict = "fails"  # planar graphs must give equality
                yield rep
        elif identity == "duality":
            ok = verify_duality(t, rot) and verify_duality(g, grot)
            yield CheckReport(code, "duality", "", "", "holds" if ok else "fails")
        elif identity == "commuting-square":
            from .tl import phi_state_histogram, phi_trace
            hist = phi_state_histogram(g, grot)
            points = [PHI] + [Fraction(rng.randint(1, 40), rng.randint(1, 40)) for _ in range(5)]
            for d in points:
                lhs = phi_trace(g, grot, d, hist)
                rhs = flow_eval(g, d * d)
                yield CheckReport(code, f"commuting-square@{d}", lhs, rhs,
                                  "holds" if as_golden(lhs) == as_golden(rhs) else "fails")
        else:
            raise ValueError(f"unknown identity {identity!r}")


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    emit = Emitter(args.csv)
    failed = counted = 0
    try:
        for t, rot in _triangulations(args):
            for rep in verify_reports(args.identity, t, rot, rng):
                emit.report(rep)
                counted += 1
                failed += not rep.ok
    finally:
        emit.close()
    emit.record("summary", identity=args.identity, checks=counted, failures=failed)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------- tl

def _tl_point(name: str):
    if name == "phi":
        return PHI
    if name == "neginvphi":
        return GoldenNum(1, -1)
    from sympy import QQ, symbols
    return QQ.frac_field(symbols("d")).gens[0]


def tl_selftest(degree: int, at: str) -> dict:
    """{suite: {n: True | False | None}}; None marks a suite that does not apply."""
    from .tl import (TLElement, TLError, basis, compose, inner_product, jones_wenzl,
                     markov_trace, partial_trace)
    d = _tl_point(at)
    catalan = {1: 1, 2: 2, 3: 5, 4: 14, 5: 42, 6: 132, 7: 429}
    res = {s: {} for s in ("catalan", "idempotence", "annihilation", "trace-radical",
                           "partial-trace")}
    for n in range(1, degree + 1):
        res["catalan"][n] = len(basis(n)) == catalan.get(n, len(basis(n)))
        try:
            p = jones_wenzl(n, d)
        except TLError:
            for s in ("idempotence", "annihilation", "trace-radical", "partial-trace"):
                res[s][n] = None
            continue
        res["idempotence"][n] = compose(p, p) == p
        res["annihilation"][n] = all(
            compose(TLElement.generator(n, i, d), p).is_zero() and
            compose(p, TLElement.generator(n, i, d)).is_zero() for i in range(1, n))
        # P^(n) lies in the trace radical exactly when Delta_n(d) = 0
        radical = at != "generic" and markov_trace(p) == 0
        if radical:
            res["trace-radical"][n] = all(inner_product(p, TLElement(n, d, {b: d ** 0})) == 0
                                          for b in basis(n))
            res["partial-trace"][n] = partial_trace(p, 1).is_zero()
        else:
            res["trace-radical"][n] = res["partial-trace"][n] = None
    return res


def cmd_tl(args) -> int:
    if not args.selftest:
        print("nothing to do: pass --selftest", file=sys.stderr)
        return EXIT_INPUT
    res = tl_selftest(args.degree, args.at)
    ns = range(1, args.degree + 1)
    mark = {True: "pass", False: "FAIL", None: "-"}
    print(f"{'suite':<15}" + "".join(f"{'n=' + str(n):>7}" for n in ns))
    for suite, row in res.items():
        print(f"{suite:<15}" + "".join(f"{mark[row.get(n)]:>7}" for n in ns))
    ok = all(v is not False for row in res.values() for v in row.values())
    return EXIT_OK if ok else EXIT_FAIL


# -------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tuttegold", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="Tutte, chromatic or flow polynomial")
    _input_args(p)
    p.add_argument("--what", choices=("tutte", "chromatic", "flow"), default="tutte")
    p.add_argument("--at", help="evaluate at phi^k, B<n>, 'p/q + r/s*phi' or a rational")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("planarity", help="planarity by the Tutte relation and/or LR oracle")
    _input_args(p)
    p.add_argument("--method", choices=("tutte", "oracle", "both"), default="both")
    p.add_argument("--verbose", action="store_true", help="include per-edge defects")
    p.add_argument("--bug-dir", default="bug-reports")
    p.set_defaults(func=cmd_planarity)

    p = sub.add_parser("scan", help="scan a graph family")
    p.add_argument("--family", choices=("cubic", "k33plus2"), default="cubic")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--check", choices=("conjecture", "planarity-equiv", "golden-chromatic"),
                   default="conjecture")
    p.add_argument("--jobs", type=int, default=0, help="worker processes (0: all cores)")
    p.add_argument("--resume", help="append-only journal of processed canonical codes")
    p.add_argument("--dump-dir", default="counterexamples")
    p.add_argument("--keep-going", action="store_true", help="do not stop at the first violation")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="check an identity over a family of triangulations")
    p.add_argument("--identity", required=True,
                   choices=("golden-chromatic", "golden-flow", "duality", "upper-bound",
                            "lower-bound", "commuting-square"))
    p.add_argument("--family", choices=("apollonian", "named"), default="apollonian")
    p.add_argument("--names", help="comma-separated planar triangulations for --family named")
    p.add_argument("--v", type=int, default=8)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tl", help="Temperley-Lieb self tests")
    p.add_argument("--selftest", action="store_true")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--at", choices=("phi", "neginvphi", "generic"), default="phi")
    p.set_defaults(func=cmd_tl)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, GraphError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisError as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
