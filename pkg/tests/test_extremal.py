import math
from fractions import Fraction

import pytest
from subturan import (
    Graph,
    GraphError,
    are_isomorphic,
    complete_bipartite,
    complete_graph,
    cone_over_cycle,
    cycle,
    girth,
    path,
)
from subturan._limits import ResourceLimitError
from subturan.extremal import (
    Field,
    check_naor_verstraete_bound,
    density_table,
    exact_ex,
    exact_z,
    ex_table,
    gq_incidence_graph,
    naor_verstraete_bound,
)
from subturan.finder import find_subdivision, find_subgraph

from oracles import atlas_ex, brute_z, nx_contains, z_c4_by_pairs

PATTERNS = {"K3": complete_graph(3), "C4": cycle(4), "C5": cycle(5), "C6": cycle(6)}


@pytest.mark.parametrize("name", sorted(PATTERNS))
def test_exact_ex_matches_atlas(name):
    h = PATTERNS[name]
    for n in range(1, 8):
        rec = exact_ex(n, h)
        assert rec.value == atlas_ex(n, h)
        assert rec.witness.n == n and rec.witness.num_edges == rec.value
        assert not nx_contains(rec.witness, h)


def test_ex4_triangle_witness_is_c4():
    rec = exact_ex(4, complete_graph(3))
    assert rec.value == 4
    assert are_isomorphic(rec.witness, cycle(4))


def test_ex_single_edge_is_zero():
    for n in range(1, 7):
        assert exact_ex(n, path(2)).value == 0


def test_ex8_c6_regression():
    # orderly search value; the atlas oracle stops at seven vertices
    rec = exact_ex(8, cycle(6))
    assert rec.value == 16
    assert find_subgraph(rec.witness, cycle(6), None) is None
    assert not nx_contains(rec.witness, cycle(6))


def test_ex_c4_known_small_values():
    # ex(n, C_4) for n = 8, 9, 10 are the classical 11, 13, 16
    assert [exact_ex(n, cycle(4)).value for n in (8, 9, 10)] == [11, 13, 16]


def test_ex_monotone_in_n_and_pattern():
    for h in PATTERNS.values():
        vals = [r.value for r in ex_table(7, h)]
        assert vals == sorted(vals)
    # C_4 is a subgraph of K_4 minus an edge, which is a subgraph of K_4
    k4_minus = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)])
    for n in range(1, 8):
        a = exact_ex(n, cycle(4)).value
        b = exact_ex(n, k4_minus).value
        c = exact_ex(n, complete_graph(4)).value
        assert a <= b <= c


def test_ex_trivial_and_errors(monkeypatch):
    rec = exact_ex(3, cycle(5))
    assert rec.value == 3 and rec.method == "trivial"
    with pytest.raises(GraphError):
        exact_ex(5, Graph(2))
    with pytest.raises(GraphError):
        exact_ex(-1, cycle(3))
    monkeypatch.delenv("SUBTURAN_CAP_OVERRIDE", raising=False)
    with pytest.raises(ResourceLimitError):
        exact_ex(11, cycle(4))


def test_record_csv_and_json():
    rec = exact_ex(5, complete_graph(3))
    row = rec.csv_row()
    assert row[0] == "5" and row[2] == "6"
    assert rec.to_json()["value"] == 6


def test_z_c6_small():
    assert exact_z(2, 2, cycle(6)).value == 4 == brute_z(2, 2, cycle(6))
    assert exact_z(3, 3, cycle(6)).value == 7 == brute_z(3, 3, cycle(6))


@pytest.mark.parametrize("m,n", [(m, n) for n in range(1, 5) for m in range(1, n + 1)])
def test_z_c4_matches_pair_oracle(m, n):
    assert exact_z(m, n, cycle(4)).value == z_c4_by_pairs(m, n)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 3), (2, 4)])
def test_z_c4_matches_full_scan(m, n):
    assert exact_z(m, n, cycle(4)).value == brute_z(m, n, cycle(4))


def test_z_witness_has_row_part_first():
    rec = exact_z(3, 4, cycle(4))
    g = rec.witness
    assert g.n == 7 and rec.m == 3 and rec.n == 4
    for u, v in g.edges():
        assert u < 3 <= v
    assert g.num_edges == rec.value
    assert not nx_contains(g, cycle(4))


def test_z_at_most_mn_with_equality_iff_complete_is_free():
    for h in (cycle(4), cycle(6), complete_bipartite(2, 3)):
        for n in range(1, 5):
            for m in range(1, n + 1):
                val = exact_z(m, n, h).value
                free = not nx_contains(complete_bipartite(m, n), h)
                assert val <= m * n
                assert (val == m * n) == free


def test_z_argument_checks(monkeypatch):
    with pytest.raises(GraphError):
        exact_z(4, 3, cycle(4))
    monkeypatch.delenv("SUBTURAN_CAP_OVERRIDE", raising=False)
    with pytest.raises(ResourceLimitError):
        exact_z(7, 8, cycle(4))


def test_nv_bound_examples():
    assert naor_verstraete_bound(3, 3, 3) == pytest.approx(3 * (9 ** (2 / 3) + 6))
    chk = check_naor_verstraete_bound(3, 3, 3, 7)
    assert chk.holds and chk.bound == pytest.approx(30.98, abs=0.01)
    assert chk.slack == pytest.approx(chk.bound - 7)
    assert naor_verstraete_bound(2, 2, 3) == pytest.approx(19.56, abs=0.01)
    assert naor_verstraete_bound(3, 4, 2) == pytest.approx(13.0)
    assert check_naor_verstraete_bound(3, 4, 2, exact_z(3, 4, cycle(4)).value).holds
    with pytest.raises(GraphError):
        naor_verstraete_bound(3, 3, 1)


def test_field_arithmetic():
    for q in (2, 3, 4):
        F = Field(q)
        for a in range(q):
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("q,n,e", [(2, 30, 45), (3, 80, 160), (4, 170, 425)])
def test_gq_counts(q, n, e):
    c = gq_incidence_graph(q)
    g = c.graph.graph
    assert (g.n, g.num_edges) == (n, e)
    assert set(g.degrees()) == {q + 1}
    assert len(c.points) == len(c.lines) == n // 2
    if q < 4:
        assert girth(g) == 8


def test_gq_free_of_subdivided_cones():
    g = gq_incidence_graph(2).graph.graph
    for k in (3, 4, 5, 6):
        assert find_subdivision(g, cone_over_cycle(k)) is None


def test_gq_rejects(monkeypatch):
    with pytest.raises(GraphError):
        gq_incidence_graph(6)
    monkeypatch.delenv("SUBTURAN_CAP_OVERRIDE", raising=False)
    with pytest.raises(ResourceLimitError):
        gq_incidence_graph(5)


def test_density_table():
    g2 = gq_incidence_graph(2).graph.graph
    g3 = gq_incidence_graph(3).graph.graph
    rows = density_table([g3, g2])
    assert [(r.n, r.e) for r in rows] == [(30, 45), (80, 160)]
    assert rows[0].ratio == pytest.approx(45 / 30 ** (4 / 3))
    assert density_table([]) == []
    assert density_table([g2], Fraction(3, 2))[0].ratio == pytest.approx(45 / 30**1.5)
    assert math.isclose(rows[1].ratio, 160 / 80 ** (4 / 3))
