"""Walk through the red/blue pair colouring on a random bipartite host.

Pairs of A-vertices are coloured by how many common neighbours they have
in B. A copy of a pattern inside A is proper when its edges can be given
pairwise distinct common neighbours, which is a bipartite matching problem.
"""
import argparse
import itertools
import random

from subturan import BipartiteGraph, Graph, cycle
from subturan.colored import Color, blue_stats, build_colored, is_proper


def random_host(rng, na, nb, p):
    edges = [(u, na + v) for u in range(na) for v in range(nb) if rng.random() < p]
    g = Graph(na + nb, edges)
    return BipartiteGraph(g, frozenset(range(na)), frozenset(range(na, na + nb)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=int, default=8)
    ap.add_argument("--b", type=int, default=10)
    ap.add_argument("--p", type=float, default=0.35)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    host = random_host(rng, args.a, args.b, args.p)
    pattern = cycle(4)
    C = build_colored(host, pattern.num_edges)
    st = blue_stats(C)
    print(f"host: |A|={args.a} |B|={args.b} e={host.graph.num_edges}; threshold {C.threshold}")
    print(f"blue pairs {st.blue_edges}, red pairs {len(C.pairs(Color.RED))}, busiest blue vertex {st.max_blue_vertex}")

    # try every 4-tuple of A as a labelled C_4 and report the first few outcomes
    shown = 0
    for quad in itertools.permutations(sorted(host.part_a), 4):
        if quad[0] != min(quad) or quad[1] > quad[3]:
            continue  # one labelling per cycle
        if any(C.count(quad[i], quad[(i + 1) % 4]) == 0 for i in range(4)):
            continue
        res = is_proper(C, pattern, quad)
        if res:
            print(f"proper C_4 on {quad}: bridges {res.bridge_choice}")
        else:
            print(f"C_4 on {quad} is not proper: {len(res.edges)} edges share {sorted(res.neighborhood)}")
        shown += 1
        if shown == 6:
            break
    if not shown:
        print("no coloured C_4 in A; try a denser host")


if __name__ == "__main__":
    main()
