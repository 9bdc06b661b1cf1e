import random
from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from flagpers.extremal import h_betti_closed_form
from flagpers.graph import (
    Graph,
    complement,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    path,
    relabel,
    star,
    turan,
    turan_edge_count,
)
from flagpers.homology import betti, GF2, FieldSpec
from flagpers.oracle import (
    OracleCapError,
    canonical_form,
    canonical_relabel,
    check_bar_count_conjecture,
    check_spanning_bipartite_conjecture,
    check_total_persistence_conjecture,
    graphs_up_to_isomorphism,
    is_star_forest,
    max_betti_over_graphs,
    resolve_workers,
    sweep_bipartite_optimum,
    sweep_csv,
    sweep_exhaustive,
    sweep_structured,
    sweep_t_range,
    triangle_free_subgraph_with,
    verify_bound_hierarchy,
    verify_fiberwise_optimality,
    verify_kunneth,
    verify_max_bars,
    verify_metric_realization,
    verify_optimal_filtrations,
    verify_triangle_free_bound,
    verify_vanishing,
)
from flagpers.report import CONSISTENT, FAIL, PASS
from test_persistence import SHORTFALL


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    target = set(h.edges())
    for perm in permutations(range(g.n)):
        if {tuple(sorted((perm[u], perm[v]))) for u, v in g.edges()} == target:
            return True
    return False


def test_canonical_form_examples():
    c5 = cycle(5)
    rng = random.Random(3)
    for _ in range(10):
        order = list(range(5))
        rng.shuffle(order)
        assert canonical_form(relabel(c5, order)) == canonical_form(c5)
    assert canonical_form(turan(5, 2)[0]) == canonical_form(complete_bipartite(2, 3))
    assert canonical_form(path(4)) != canonical_form(star(4))
    with pytest.raises(OracleCapError):
        canonical_form(complete(11))


@given(graphs(0, 8), st.randoms(use_true_random=False))
def test_canonical_form_is_relabeling_invariant(g, rng):
    order = list(range(g.n))
    rng.shuffle(order)
    assert canonical_form(relabel(g, order)) == canonical_form(g)
    assert canonical_form(canonical_relabel(g)).graph() == canonical_relabel(g)


def test_canonical_form_separates_non_isomorphic():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 6)
        m = rng.randint(0, comb(n, 2))
        slots = list(combinations(range(n), 2))
        g = Graph.from_edges(n, rng.sample(slots, m))
        h = Graph.from_edges(n, rng.sample(slots, m))
        assert (canonical_form(g) == canonical_form(h)) == brute_isomorphic(g, h)


def test_isomorphism_class_counts():
    counts = [len(graphs_up_to_isomorphism(n)) for n in range(7)]
    assert counts == [1, 1, 2, 4, 11, 34, 156]


def test_isomorphism_classes_cover_labeled_graphs():
    for n in range(5):
        forms = {canonical_form(g) for g in graphs_up_to_isomorphism(n)}
        slots = list(combinations(range(n), 2))
        for mask in range(1 << len(slots)):
            g = Graph.from_edges(n, [s for i, s in enumerate(slots) if mask >> i & 1])
            assert canonical_form(g) in forms


def test_max_betti_examples():
    assert max_betti_over_graphs(5, 6, 1)[0] == 2
    best, w = max_betti_over_graphs(4, 4, 1)
    assert best == 1 and canonical_form(w) == canonical_form(cycle(4))
    assert max_betti_over_graphs(4, 0, 1) == (0, Graph(4, (0, 0, 0, 0)))
    assert max_betti_over_graphs(4, 1, 1, family="bipartite-spanning") == (-1, None)
    with pytest.raises(OracleCapError):
        max_betti_over_graphs(8, 20, 1)
    with pytest.raises(ValueError):
        max_betti_over_graphs(4, 7, 1)
    with pytest.raises(ValueError):
        max_betti_over_graphs(4, 3, 1, family="cubic")


def test_max_betti_witness_is_lexicographically_first():
    best, w = max_betti_over_graphs(5, 6, 1)
    slots = list(combinations(range(5), 2))
    for combo in combinations(range(len(slots)), 6):
        g = Graph.from_edges(5, [slots[s] for s in combo])
        if betti(g, 1) == best:
            assert g == w
            break


def test_max_betti_matches_closed_form_small():
    for n in range(2, 7):
        for e in range(comb(n, 2) + 1):
            if e <= (n // 2) * (n - n // 2):
                assert max_betti_over_graphs(n, e, 1)[0] == h_betti_closed_form(n, 1, e)


def test_workers_do_not_change_results(monkeypatch):
    serial = max_betti_over_graphs(6, 9, 1, workers=1)
    parallel = max_betti_over_graphs(6, 9, 1, workers=3)
    assert serial == parallel
    monkeypatch.setenv("TP_MAX_WORKERS", "2")
    assert resolve_workers(None) == 2
    assert resolve_workers(4) == 4
    a = verify_fiberwise_optimality(5, 1, workers=1).to_json()
    b = verify_fiberwise_optimality(5, 1, workers=2).to_json()
    assert a == b


def test_bipartite_family():
    best, w = max_betti_over_graphs(6, 9, 1, family="bipartite-spanning")
    assert best == 4
    assert not is_connected_complement(w)
    best, w = max_betti_over_graphs(6, 10, 1, family="bipartite-spanning")
    assert best == max_betti_over_graphs(6, 10, 1)[0]


def test_is_star_forest():
    assert is_star_forest(disjoint_union(star(3), star(4)))
    assert is_star_forest(disjoint_union(star(2), star(2)))
    assert not is_star_forest(path(4))
    assert not is_star_forest(disjoint_union(star(3), Graph(1, (0,))))
    assert not is_star_forest(cycle(3))


@pytest.mark.parametrize("n,k", [(n, 1) for n in range(2, 7)] + [(n, 2) for n in range(3, 7)])
def test_fiberwise_optimality(n, k):
    r = verify_fiberwise_optimality(n, k)
    assert r.status == PASS, r.to_json()
    e_max = turan_edge_count(n, k + 1)
    assert r.details["per_e"] == [h_betti_closed_form(n, k, e) for e in range(1, e_max + 1)]


@pytest.mark.parametrize("n,k", [(4, 1), (5, 1), (6, 1), (6, 2), (5, 0), (7, 1)])
def test_vanishing(n, k):
    r = verify_vanishing(n, k)
    assert r.status == PASS, r.to_json()
    assert r.details["max_at"] >= 1
    if "construction" in r.details:
        assert r.details["construction"]["stars"]
        assert r.details["construction"]["betti"] >= 1


def test_bound_hierarchy_and_field():
    assert verify_bound_hierarchy(samples=200, seed=1).status == PASS
    assert verify_bound_hierarchy(samples=60, seed=2, field=FieldSpec(3)).status == PASS


@pytest.mark.parametrize("n", range(4, 13))
def test_optimal_filtrations(n):
    r = verify_optimal_filtrations(n)
    assert r.status == PASS, r.to_json()
    assert r.details["classes"] == (2 if n % 8 == 0 else 1)
    assert r.details.get("persistence_checked")


def test_optimal_filtrations_cap():
    with pytest.raises(OracleCapError):
        verify_optimal_filtrations(21)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_max_bars(n):
    r = verify_max_bars(n, trials=100, seed=n)
    assert r.status == PASS, r.to_json()
    assert r.details["max_bars"] == r.details["bound"]
    assert r.details["attained"] >= 50


# reaches beta_1(T_{5,2}) = 2 bars although its 6-edge prefix holds triangle 0,2,3
OFF_TURAN = ((1, 2), (0, 3), (2, 3), (3, 4), (0, 1), (0, 2), (1, 4), (2, 4), (1, 3), (0, 4))


def test_max_bars_without_turan_prefix():
    from flagpers.persistence import EdgewiseFiltration, flag_persistence
    f = EdgewiseFiltration(5, OFF_TURAN)
    assert len(flag_persistence(f, 1)) == 2
    assert canonical_form(f.prefix(6)) != canonical_form(turan(5, 2)[0])


def test_max_bars_over_500_filtrations():
    rng = random.Random(500)
    for trial in range(500):
        n = 4 + trial % 5
        r = verify_max_bars(n, trials=1, seed=rng.randrange(1 << 30))
        assert r.status == PASS, r.to_json()


def test_triangle_free_search():
    from flagpers.persistence import EdgewiseFiltration
    f = EdgewiseFiltration(6, SHORTFALL)
    sub = triangle_free_subgraph_with(f.graph(), 2)
    assert sub is not None and betti(sub, 1) >= 2
    assert all(not (sub.adj[u] & sub.adj[v]) for u, v in sub.edges())
    assert triangle_free_subgraph_with(complete(4), 2) is None
    with pytest.raises(OracleCapError):
        triangle_free_subgraph_with(complete(8), 1)


def test_triangle_free_bound():
    r = verify_triangle_free_bound(trials=100, seed=0)
    assert r.status == PASS, r.to_json()


def test_metric_realization():
    assert verify_metric_realization(trials=80, seed=5).status == PASS


def test_kunneth_small():
    r = verify_kunneth(max_vertices=4)
    assert r.status == PASS
    assert r.details["classes"] == 1 + 1 + 2 + 4 + 11


def test_conjectures_are_only_consistent():
    for r in (
        check_bar_count_conjecture(6, 1, trials=40),
        check_bar_count_conjecture(6, 2, trials=40),
        check_total_persistence_conjecture(7, trials=40),
        check_spanning_bipartite_conjecture(4),
    ):
        assert r.status == CONSISTENT, r.to_json()
        assert r.passed


def test_spanning_bipartite_conjecture_fails_at_five_vertices():
    # C_4 plus an isolated vertex has beta_1 = 1; the only spanning
    # complete bipartite graph with 4 edges is K_{1,4}, which is a tree
    r = check_spanning_bipartite_conjecture(5)
    assert r.status == FAIL
    assert r.details == {"m": 4, "max_beta1": 1}
    w = Graph.from_edges(5, r.witness["edges"])
    assert betti(w, 1) == 1 and w.edge_count == 4
    assert max_betti_over_graphs(5, 4, 1, family="bipartite-spanning")[0] == 0


def test_spanning_bipartite_fails_above_turan_count():
    g = Graph.from_edges(7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4),
                             (1, 5), (2, 3), (2, 4), (3, 6), (4, 6), (5, 6)])
    assert g.edge_count == 14
    assert betti(g, 1) == betti(g, 1, FieldSpec(3)) == 2
    assert max_betti_over_graphs(7, 14, 1)[0] == 2
    assert complement(g).edge_count and is_connected_complement(g)


def is_connected_complement(g):
    from flagpers.graph import connected_component_count
    return connected_component_count(complement(g)) == 1
    with pytest.raises(OracleCapError):
        check_spanning_bipartite_conjecture(7)


def test_failing_report_needs_witness():
    from flagpers.report import VerificationReport
    with pytest.raises(ValueError):
        VerificationReport("x", {}, FAIL)
    with pytest.raises(ValueError):
        VerificationReport("x", {}, "maybe")


def test_sweep_n8_values():
    rows = sweep_exhaustive(8)
    got = {r.t: r.max_beta1 for r in rows}
    assert got[0] == 9 and got[5] == 2
    assert [got[t] for t in range(13)] == [9, 6, 4, 3, 2, 2, 1, 0, 0, 0, 0, 0, 0]
    assert list(sweep_t_range(8)) == list(range(13))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_sweep_modes_agree(n):
    a = [(r.t, r.max_beta1) for r in sweep_exhaustive(n)]
    b = [(r.t, r.max_beta1) for r in sweep_structured(n)]
    assert a == b


def test_structured_witness_realizes_value():
    from flagpers.graph import join
    from flagpers.homology import balanced_partition
    for row in sweep_structured(10):
        n1, n2, d1, d2, e1, e2 = map(int, row.witness.split(":"))
        sides = []
        for size, parts, edges in ((n1, d1, e1), (n2, d2, e2)):
            # one big component carries every extra edge, the rest are isolated
            big = size - parts + 1
            pairs = list(combinations(range(big), 2))
            tree = [(0, i) for i in range(1, big)]
            extra = [p for p in pairs if p not in tree][: edges - len(tree)]
            assert len(tree) + len(extra) == edges
            sides.append(Graph.from_edges(size, tree + extra))
        g = join(*sides)
        assert g.edge_count == 25 + row.t
        assert betti(g, 1) == row.max_beta1


def test_sweep_large_is_deterministic():
    a = sweep_csv(sweep_bipartite_optimum(100))
    b = sweep_csv(sweep_bipartite_optimum(100, mode="structured"))
    assert a == b
    lines = a.splitlines()
    assert lines[0] == "n,t,max_beta1,witness"
    assert lines[1].startswith("100,0,2401,")
    values = [int(line.split(",")[2]) for line in lines[1:]]
    assert all(x >= y for x, y in zip(values, values[1:]))


def test_sweep_rejects_bad_input():
    with pytest.raises(ValueError):
        sweep_structured(7)
    with pytest.raises(OracleCapError):
        sweep_exhaustive(10)
    with pytest.raises(ValueError):
        sweep_bipartite_optimum(8, mode="fast")


def test_fiberwise_table_example():
    assert verify_fiberwise_optimality(5, 1).details["per_e"] == [0, 0, 0, 1, 1, 2]


def test_bound_hierarchy_boundary_cases():
    from flagpers.graph import join
    from flagpers.homology import turan_betti_closed_form
    rng = random.Random(7)
    for _ in range(20):
        base = Graph.from_edges(5, [e for e in combinations(range(5), 2) if rng.random() < 0.5])
        cone = join(Graph(1, (0,)), base)
        assert all(betti(cone, k) == 0 for k in range(4))
    for n in range(2, 10):
        for k in (1, 2):
            assert betti(turan(n, k + 1)[0], k) == turan_betti_closed_form(n, k + 1, k)


def test_metric_realization_boundary_cases():
    from flagpers.extremal import h_filtration
    from flagpers.persistence import EdgewiseFiltration, metric_realization, vietoris_rips_filtration
    single = EdgewiseFiltration(2, ((0, 1),))
    full = EdgewiseFiltration(7, tuple(sorted(combinations(range(7), 2), key=lambda e: (e[1], e[0]))))
    for f in (single, full, h_filtration(8, 1)):
        mr = metric_realization(f)
        assert mr.is_metric() and vietoris_rips_filtration(mr) == f
