"""|F_G(phi^-2)| / phi^(n-2) for duals of stacked and named triangulations."""
import argparse

from tuttegold.generators import distinct_apollonian, named
from tuttegold.graph import dual
from tuttegold.identities import lower_bound_check

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-v", type=int, default=10)
    a = ap.parse_args()
    items = [("stacked", t, rot) for t, rot in distinct_apollonian(a.max_v)]
    items += [(x, named(x), named(x).rotation) for x in ("octahedron", "icosahedron")]
    print(f"{'source':>12} {'V':>3} {'n':>3} {'verdict':>9} {'ratio':>10} 2V-6 2V-8")
    for label, t, rot in items:
        rep = lower_bound_check(t, rot)
        d = rep.to_dict()
        print(f"{label:>12} {t.V:>3} {rep.extra['n']:>3} {rep.verdict:>9} "
              f"{d['lhs_approx'] / d['rhs_approx']:>10.4f} "
              f"{rep.extra['chromatic_vs_printed_2V-6']!s:>4} "
              f"{rep.extra['chromatic_vs_derived_2V-8']!s:>4}")
