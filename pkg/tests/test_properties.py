"""Property tests over randomly drawn small graphs."""

import itertools
import math

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from subturan import (
    BipartiteGraph,
    Graph,
    NotBipartite,
    bipartition_of,
    canonical_form,
    common_neighborhood,
    girth,
    subdivide,
)
from subturan.colored import Color, PreconditionError, build_colored, is_proper
from subturan.finder import find_subgraph
from subturan.graph import permuted
from subturan.reduction import TreeInfeasible, bfs_layers, bipartite_halving, extract_regular_tree, two_sided_peel

from oracles import brute_girth, brute_proper, common, nx_contains, to_nx

settings.register_profile("default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def bipartite_graphs(draw, max_side=7):
    na = draw(st.integers(1, max_side))
    nb = draw(st.integers(1, max_side))
    cells = [(u, na + v) for u in range(na) for v in range(nb)]
    keep = draw(st.lists(st.booleans(), min_size=len(cells), max_size=len(cells)))
    g = Graph(na + nb, [c for c, k in zip(cells, keep) if k])
    return BipartiteGraph(g, frozenset(range(na)), frozenset(range(na, na + nb)))


@given(graphs(), st.data())
def test_common_neighborhood_shrinks_as_set_grows(g, data):
    big = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=g.n))
    small = data.draw(st.sets(st.sampled_from(sorted(big)), min_size=1, max_size=len(big)))
    assert common_neighborhood(g, big) <= common_neighborhood(g, small)


@given(graphs(), st.randoms(use_true_random=False))
def test_canonical_form_permutation_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(permuted(g, perm)) == canonical_form(g)


@given(graphs())
def test_girth_matches_brute_force(g):
    gi = girth(g)
    assert gi == brute_girth(g)
    comps = nx.number_connected_components(to_nx(g))
    assert (gi == math.inf) == (g.num_edges == g.n - comps)


@given(graphs())
def test_bipartition_iff_no_odd_cycle(g):
    try:
        bg = bipartition_of(g)
    except NotBipartite:
        assert not nx.is_bipartite(to_nx(g))
    else:
        assert nx.is_bipartite(to_nx(g))
        for u, v in g.edges():
            assert (u in bg.part_a) != (v in bg.part_a)


@given(graphs(max_n=7))
def test_subdivision_shape(g):
    sub, labels = subdivide(g)
    assert sub.n == g.n + g.num_edges and sub.num_edges == 2 * g.num_edges
    bipartition_of(sub)
    assert girth(sub) == 2 * girth(g)
    assert set(labels.branch.values()).isdisjoint(labels.bridge.values())


@given(bipartite_graphs(), st.integers(1, 5))
def test_colour_trichotomy_by_naive_scan(bg, threshold):
    C = build_colored(bg, threshold)
    g = bg.graph
    for u, v in itertools.combinations(sorted(bg.part_a), 2):
        c = len(common(g, u, v))
        want = Color.UNCOLORED if c == 0 else (Color.BLUE if c < threshold else Color.RED)
        assert C.color(u, v) == want
        assert C.count(u, v) == c


@st.composite
def proper_instances(draw):
    bg = draw(bipartite_graphs(max_side=6))
    a = sorted(bg.part_a)
    k = draw(st.integers(2, min(4, len(a)))) if len(a) >= 2 else None
    if k is None:
        return None
    pairs = list(itertools.combinations(range(k), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, kp in zip(pairs, keep) if kp][:6]
    pattern = Graph(k, edges)
    copy = draw(st.permutations(a))[:k]
    return bg, pattern, copy


@given(proper_instances())
def test_is_proper_matches_assignment_oracle(inst):
    if inst is None:
        return
    bg, pattern, copy = inst
    C = build_colored(bg, max(pattern.num_edges, 1))
    if any(not common(bg.graph, copy[u], copy[v]) for u, v in pattern.edges()):
        # an edge over a pair with no common neighbour is rejected up front
        with pytest.raises(PreconditionError):
            is_proper(C, pattern, copy)
        assert not brute_proper(bg.graph, pattern, dict(enumerate(copy)))
        return
    res = is_proper(C, pattern, copy)
    assert bool(res) == brute_proper(bg.graph, pattern, dict(enumerate(copy)))
    if res:
        res.validate(bg.graph)


@given(graphs(max_n=8), graphs(max_n=4))
def test_find_subgraph_agrees_with_networkx(host, pattern):
    emb = find_subgraph(host, pattern, None)
    assert (emb is not None) == nx_contains(host, pattern)


@given(graphs(min_n=2, max_n=14))
def test_halving_cut_monotone_and_degree_floor(g):
    if g.num_edges == 0:
        return
    bg, rep = bipartite_halving(g)
    h = rep.cut_history
    assert all(x < y for x, y in zip(h, h[1:]))
    floor = 2 * g.num_edges / g.n / 4
    assert bg.graph.num_edges > 0
    assert min(bg.graph.degree(v) for v in range(bg.graph.n)) >= math.ceil(floor)
    for u, v in bg.graph.edges():
        assert (u in bg.part_a) != (v in bg.part_a)


@given(bipartite_graphs())
def test_peel_keeps_half_the_edges(bg):
    if bg.graph.num_edges == 0:
        return
    out, rep = two_sided_peel(bg)
    assert 2 * out.graph.num_edges >= bg.graph.num_edges
    assert all(out.graph.degree(v) >= rep.floors["A"] for v in out.part_a)
    assert all(out.graph.degree(v) >= rep.floors["B"] for v in out.part_b)


@given(graphs(max_n=14), st.integers(1, 5))
def test_layers_join_consecutive(g, depth):
    lay = bfs_layers(g, 0, depth)
    for u, v in g.edges():
        lu, lv = lay.layer_of(u), lay.layer_of(v)
        if lu is not None and lv is not None:
            assert abs(lu - lv) <= 1


@given(graphs(min_n=2, max_n=16), st.integers(1, 3))
def test_tree_children_disjoint_and_acyclic(g, d2):
    if g.degree(0) == 0:
        return
    try:
        tree = extract_regular_tree(g, 0, g.degree(0), d2, slack=0.5)
    except TreeInfeasible as exc:
        tree = exc.partial
    sets = list(tree.children.values())
    for x, y in itertools.combinations(sets, 2):
        assert not (x & y)
    t = nx.Graph(tree.edges())
    t.add_node(tree.root)
    assert nx.is_forest(t) and nx.is_connected(t)
