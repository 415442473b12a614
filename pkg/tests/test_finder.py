import json
import random

import pytest
from subturan import (
    Graph,
    GraphError,
    are_isomorphic,
    complete_bipartite,
    complete_graph,
    cone_over_cycle,
    cycle,
    from_graph6,
    path,
    subdivide,
)
from subturan.certify import InvalidWitness
from subturan.extremal import gq_incidence_graph
from subturan.finder import (
    BudgetExceeded,
    LiftFailed,
    PipelineConfig,
    SubdivisionWitness,
    contains,
    find_subdivision,
    find_subgraph,
    iter_subgraphs,
    lift_cycle_to_cone,
    pipeline_cone_cycle,
    search_order,
)
from subturan.reduction import bfs_layers

from oracles import nx_contains, random_graph

PETERSEN = from_graph6("IheA@GUAo")


def test_c6_in_k33():
    emb = find_subgraph(complete_bipartite(3, 3), cycle(6))
    assert emb is not None
    emb.validate()


def test_c6_not_in_gq2():
    assert find_subgraph(gq_incidence_graph(2).graph.graph, cycle(6)) is None


def test_k4_not_in_petersen():
    assert find_subgraph(PETERSEN, complete_graph(4)) is None
    assert contains(PETERSEN, cycle(5))


def test_find_subgraph_matches_networkx():
    rng = random.Random(7)
    for _ in range(600):
        host = random_graph(rng, rng.randint(1, 9), rng.uniform(0.2, 0.8))
        pat = random_graph(rng, rng.randint(1, 5), rng.uniform(0.3, 1.0))
        emb = find_subgraph(host, pat, None)
        assert (emb is not None) == nx_contains(host, pat)
        if emb:
            emb.validate()


def test_iter_subgraphs_counts_labelled_copies():
    # K_3 has 3! labelled copies of itself
    assert len(list(iter_subgraphs(complete_graph(3), complete_graph(3)))) == 6
    # C_4 in K_4: 3 cycles, 8 labellings each
    assert len(list(iter_subgraphs(complete_graph(4), cycle(4)))) == 24


def test_budget_exhaustion_raises():
    with pytest.raises(BudgetExceeded) as exc:
        find_subgraph(PETERSEN, complete_graph(4), budget=5)
    assert exc.value.expansions == 6


def test_allowed_and_fixed_masks():
    host = cycle(6)
    emb = find_subgraph(host, path(2), fixed={0: 3})
    assert emb.mapping[0] == 3
    emb = find_subgraph(host, path(2), allowed={0: 1 << 2, 1: 1 << 1})
    assert emb.mapping == (2, 1)
    assert find_subgraph(host, path(2), allowed={0: 1 << 0, 1: 1 << 3}) is None


def test_distinct_classes():
    host = complete_bipartite(2, 2)
    # both pattern vertices would need class 0
    classes = {0: 0, 1: 0, 2: 1, 3: 1}
    assert find_subgraph(host, Graph(2), classes=classes, distinct=[0, 1], allowed={0: 0b11, 1: 0b11}) is None
    emb = find_subgraph(host, Graph(2), classes=classes, distinct=[0, 1])
    assert classes[emb.mapping[0]] != classes[emb.mapping[1]]


def test_search_order_puts_fixed_first():
    order = search_order(cone_over_cycle(4), [2])
    assert order[0] == 2 and sorted(order) == list(range(5))


def test_subdivision_c4_in_c8():
    w = find_subdivision(cycle(8), cycle(4))
    assert w is not None
    w.validate()
    assert are_isomorphic(w.image_graph(), cycle(8))


def test_subdivided_cone_found_in_k58():
    w = find_subdivision(complete_bipartite(5, 8), cone_over_cycle(4))
    assert w is not None
    w.validate()
    assert are_isomorphic(w.image_graph(), subdivide(cone_over_cycle(4))[0])


def test_subdivided_cone_needs_eight_bridges_on_one_side():
    # the eight bridges sit on one side, so K_{7,7} cannot hold it
    assert find_subdivision(complete_bipartite(7, 7), cone_over_cycle(4)) is None


@pytest.mark.parametrize("k", [3, 4, 5])
def test_subdivided_cone_absent_in_gq3(k):
    assert find_subdivision(gq_incidence_graph(3).graph.graph, cone_over_cycle(k)) is None


def test_find_subdivision_matches_networkx():
    rng = random.Random(13)
    for _ in range(150):
        host = random_graph(rng, rng.randint(3, 10), rng.uniform(0.3, 0.9))
        pat = random_graph(rng, rng.randint(2, 4), 0.7)
        if pat.num_edges == 0:
            continue
        w = find_subdivision(host, pat, None)
        assert (w is not None) == nx_contains(host, subdivide(pat)[0])
        if w:
            w.validate()


def test_witness_json_round_trip():
    host = complete_bipartite(5, 8)
    w = find_subdivision(host, cone_over_cycle(4))
    obj = json.loads(json.dumps(w.to_json()))
    back = SubdivisionWitness.from_json(obj, host)
    back.validate()
    assert back.branch == w.branch and back.bridge == w.bridge


def test_witness_perturbed_bridge_rejected():
    host = complete_bipartite(5, 8)
    w = find_subdivision(host, cone_over_cycle(4))
    e = next(iter(w.bridge))
    for other in [w.branch[0], next(b for f, b in w.bridge.items() if f != e)]:
        bad = SubdivisionWitness(w.pattern, host, w.branch, {**w.bridge, e: other})
        with pytest.raises(InvalidWitness):
            bad.validate()


def test_witness_from_json_malformed():
    with pytest.raises(GraphError):
        SubdivisionWitness.from_json({"copy": {}}, cycle(4))


def test_lift_succeeds_on_k99_and_matches_search():
    g = complete_bipartite(9, 9)
    layers = bfs_layers(g, 0, 2)
    l1 = sorted(layers.layers[1])
    l2 = sorted(layers.layers[2])
    cyc = [l2[0], l1[0], l2[1], l1[1], l2[2], l1[2], l2[3], l1[3]]
    w = lift_cycle_to_cone(g, layers, cyc)
    w.validate()
    other = find_subdivision(g, cone_over_cycle(4))
    assert are_isomorphic(w.image_graph(), other.image_graph())


def test_lift_fails_on_shared_back_neighbour():
    # root 0; L1 = cycle connectors 1..3 and a shared vertex 4; L2 = cycle vertices 5..7
    cyc = [5, 1, 6, 2, 7, 3]
    edges = [(0, v) for v in (1, 2, 3, 4)]
    edges += [(cyc[i], cyc[(i + 1) % 6]) for i in range(6)]
    edges += [(v, 4) for v in (5, 6, 7)]
    g = Graph(8, edges)
    layers = bfs_layers(g, 0, 2)
    with pytest.raises(LiftFailed) as exc:
        lift_cycle_to_cone(g, layers, cyc)
    assert exc.value.vertex == 6


def test_lift_rejects_non_cycles():
    g = complete_bipartite(4, 4)
    layers = bfs_layers(g, 0, 2)
    with pytest.raises(GraphError):
        lift_cycle_to_cone(g, layers, [4, 1, 5, 2])


def test_pipeline_k12_first_branch():
    g = complete_bipartite(12, 12)
    w, trace = pipeline_cone_cycle(g, 4)
    assert trace.outcome == "found" and trace.branch == "l1_l2"
    w.validate()
    assert find_subdivision(g, cone_over_cycle(4)) is not None
    json.dumps(trace.to_json())


def _second_branch_host(k: int) -> Graph:
    """Root, k parents with one child each, and a 2k-cycle through the children."""
    parents = list(range(1, k + 1))
    kids = list(range(k + 1, 2 * k + 1))
    links = list(range(2 * k + 1, 3 * k + 1))
    edges = [(0, p) for p in parents] + list(zip(parents, kids))
    for i in range(k):
        edges += [(kids[i], links[i]), (links[i], kids[(i + 1) % k])]
    return Graph(3 * k + 1, edges)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_pipeline_second_branch_distinct_parents(k):
    g = _second_branch_host(k)
    w, trace = pipeline_cone_cycle(g, k)
    assert trace.branch == "l2_l3"
    w.validate()
    found = [s for s in trace.stages if s["status"] == "found"][0]
    assert len(set(found["parents"])) == k
    assert are_isomorphic(w.image_graph(), subdivide(cone_over_cycle(k))[0])


def test_pipeline_gq3_not_found():
    g = gq_incidence_graph(3).graph.graph
    w, trace = pipeline_cone_cycle(g, 4)
    assert w is None and trace.outcome == "cycle_stage"
    assert find_subdivision(g, cone_over_cycle(4)) is None


def test_pipeline_tree_not_found_at_cycle_stage():
    w, trace = pipeline_cone_cycle(path(10), 4)
    assert w is None and trace.outcome == "cycle_stage"


def test_pipeline_budget():
    w, trace = pipeline_cone_cycle(complete_bipartite(12, 12), 4, PipelineConfig(budget=3))
    assert w is None and trace.outcome == "budget_exceeded"


def test_pipeline_edgeless_and_bad_k():
    assert pipeline_cone_cycle(Graph(4), 4)[1].outcome == "no_edges"
    with pytest.raises(GraphError):
        pipeline_cone_cycle(cycle(6), 2)


def test_pipeline_success_implies_search_success():
    rng = random.Random(19)
    hits = 0
    for _ in range(40):
        g = random_graph(rng, rng.randint(10, 18), rng.uniform(0.4, 0.8))
        w, _ = pipeline_cone_cycle(g, 3)
        if w is not None:
            hits += 1
            w.validate()
            assert find_subdivision(g, cone_over_cycle(3), None) is not None
    assert hits > 0
