"""Edge density of the W(q) incidence graphs against n^(4/3).

Each graph has girth 8, so it holds no 1-subdivided cone over a short
cycle; the ratio column shows the density staying bounded away from zero.
"""
import argparse
from fractions import Fraction

from subturan import cone_over_cycle
from subturan.extremal import density_table, gq_incidence_graph
from subturan.finder import find_subdivision


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--check", action="store_true", help="also search each graph for subdivided cones (slow for q=4)")
    args = ap.parse_args()

    graphs = [gq_incidence_graph(q).graph.graph for q in args.q]
    print(f"{'q':>3} {'n':>5} {'e':>5} {'e/n^(4/3)':>10}")
    for q, row in zip(sorted(args.q), density_table(graphs, Fraction(4, 3))):
        print(f"{q:>3} {row.n:>5} {row.e:>5} {row.ratio:>10.4f}")

    if args.check:
        for q, g in zip(args.q, graphs):
            for k in (3, 4, 5):
                hit = find_subdivision(g, cone_over_cycle(k))
                print(f"q={q} k={k}: {'found' if hit else 'none'}")


if __name__ == "__main__":
    main()
