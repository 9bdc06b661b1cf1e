from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import filtrations, seeded
from flagpers.extremal import h_betti_closed_form, h_filtration, max_bar_witness
from flagpers.graph import FormatError, cycle, empty, turan
from flagpers.homology import FieldSpec, betti
from flagpers.oracle import random_filtration, triangle_free_subgraph_with
from flagpers.persistence import (
    INF,
    Barcode,
    EdgewiseFiltration,
    MetricRealization,
    bar_bounds_check,
    betti_curve,
    flag_persistence,
    from_filtration_text,
    metric_realization,
    prefix_betti_oracle,
    representative_cycles,
    to_filtration_text,
    total_persistence,
    triangle_free_reduction,
    triangle_free_support,
    vietoris_rips_filtration,
)

# an order of K_6 whose triangle-removal support keeps one independent cycle for two bars
SHORTFALL = (
    (0, 5), (3, 5), (1, 2), (0, 1), (1, 3), (1, 5), (2, 3), (0, 3), (2, 4), (0, 4),
    (2, 5), (3, 4), (0, 2), (4, 5), (1, 4),
)


def test_filtration_validation():
    with pytest.raises(ValueError):
        EdgewiseFiltration(3, ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        EdgewiseFiltration(3, ((0, 3),))
    with pytest.raises(ValueError):
        EdgewiseFiltration(3, ((1, 1),))
    f = EdgewiseFiltration(4, ((2, 1), (0, 3)))
    assert f.edges == ((1, 2), (0, 3))
    assert f.prefix(1).edges() == [(1, 2)] and f.prefix(0) == empty(4)


def test_barcode_validation_and_json():
    with pytest.raises(ValueError):
        Barcode(1, ((0, 3),))
    with pytest.raises(ValueError):
        Barcode(1, ((3, 3),))
    b = Barcode(1, ((5, INF), (2, 4)))
    assert b.intervals == ((2, 4), (5, INF))
    assert b.to_json() == '{"degree":1,"intervals":[[2,4],[5,"inf"]]}\n'
    assert Barcode.from_json(b.to_json()) == b


def test_h82_has_nine_living_bars():
    f = h_filtration(8, 1)
    b = flag_persistence(f, 1)
    assert len(b) == 9 and all(d == INF for _, d in b.intervals)


def test_single_edge_and_empty():
    assert len(flag_persistence(EdgewiseFiltration(2, ((0, 1),)), 1)) == 0
    assert len(flag_persistence(EdgewiseFiltration(3, ()), 1)) == 0


def test_curve_examples():
    assert betti_curve(h_filtration(5, 1), 1) == [0, 0, 0, 1, 1, 2]
    k4 = EdgewiseFiltration(4, ((0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)))
    assert betti_curve(k4, 0) == [2, 1, 0, 0, 0, 0]


@given(filtrations(max_n=7), st.integers(0, 2), st.sampled_from([2, 3]))
def test_curve_matches_prefix_oracle(f, k, p):
    field = FieldSpec(p)
    assert betti_curve(f, k, field) == prefix_betti_oracle(f, k, field)


@given(filtrations(max_n=7), st.integers(0, 2))
def test_total_persistence_is_curve_sum(f, k):
    b = flag_persistence(f, k)
    assert total_persistence(b, f.m) == sum(betti_curve(f, k))


def test_total_persistence_examples():
    assert total_persistence(Barcode(1, ((4, 7),)), 10) == 3
    assert total_persistence(Barcode(1, ()), 5) == 0
    f = h_filtration(8, 1)
    want = sum(h_betti_closed_form(8, 1, e) for e in range(1, 17))
    assert total_persistence(flag_persistence(f, 1), 16) == want
    with pytest.raises(ValueError):
        total_persistence(Barcode(1, ((1, 9),)), 5)


def test_representative_of_square():
    f = EdgewiseFiltration(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
    (iv, cyc), = representative_cycles(f)
    assert iv == (4, INF) and set(cyc) == {(0, 1), (1, 2), (2, 3), (0, 3)}
    (_, cyc5), = representative_cycles(f, FieldSpec(5))
    assert cyc5 == {(0, 1): 4, (1, 2): 4, (2, 3): 4, (0, 3): 1}


def _is_cycle(cyc, n, p):
    acc = [0] * n
    for (u, v), c in cyc.items():
        acc[v] = (acc[v] + c) % p
        acc[u] = (acc[u] - c) % p
    return not any(acc)


@given(filtrations(max_n=7), st.sampled_from([2, 3]))
def test_representatives_are_born_cycles(f, p):
    reps = representative_cycles(f, FieldSpec(p))
    b = flag_persistence(f, 1, FieldSpec(p))
    assert sorted(iv for iv, _ in reps) == list(b.intervals)
    index = f.index_of()
    for (a, _), cyc in reps:
        assert _is_cycle(cyc, f.n, p)
        assert max(index[e] for e in cyc) == a


def test_representatives_of_k5_filtration():
    f = random_filtration(5, seeded(2))
    assert len(representative_cycles(f)) == len(flag_persistence(f, 1))


def test_triangle_free_support_examples():
    tri = EdgewiseFiltration(3, ((0, 1), (1, 2), (0, 2)))
    assert len(flag_persistence(tri, 1)) == 0
    assert triangle_free_support(tri) == empty(3)
    f = h_filtration(6, 1)
    assert triangle_free_support(f) == turan(6, 2)[0]


@given(filtrations(max_n=7))
def test_triangle_free_support_is_triangle_free_subgraph(f):
    h, cycles = triangle_free_reduction(f)
    g = f.graph()
    assert all(g.has_edge(u, v) for u, v in h.edges())
    assert betti(h, 1) == h.edge_count - h.n + (betti(h, 0) + 1)  # no triangles
    assert all(_is_cycle(c, f.n, 2) for c in cycles)


def test_support_bound_holds_on_random_prefixes():
    rng = seeded(11)
    for _ in range(100):
        n = rng.randint(2, 8)
        f = random_filtration(n, rng, rng.randint(1, comb(n, 2)))
        assert betti(triangle_free_support(f), 1) >= len(flag_persistence(f, 1))


def test_support_construction_can_fall_short():
    f = EdgewiseFiltration(6, SHORTFALL)
    bars = len(flag_persistence(f, 1))
    assert bars == 2 and betti(triangle_free_support(f), 1) == 1
    # the existence statement still holds through another triangle-free subgraph
    h = triangle_free_subgraph_with(f.graph(), bars)
    assert h is not None and betti(h, 1) >= bars


def test_metric_realization_values():
    f = EdgewiseFiltration(3, ((0, 2), (0, 1)))
    mr = metric_realization(f)
    assert mr.dist[0][2] == 1 and mr.dist[0][1] == Fraction(3, 2) and mr.dist[1][2] == 2
    assert mr.is_metric()
    assert mr.to_dict()["dist"][0] == ["0/1", "3/2", "1/1"]
    assert vietoris_rips_filtration(mr) == f


@given(filtrations(max_n=9))
def test_metric_round_trip(f):
    mr = metric_realization(f)
    assert mr.is_metric()
    assert vietoris_rips_filtration(mr) == f


def test_metric_round_trip_full_colex():
    f = EdgewiseFiltration(6, tuple(sorted(((u, v) for v in range(6) for u in range(v)), key=lambda e: (e[1], e[0]))))
    assert vietoris_rips_filtration(metric_realization(f)) == f


def test_metric_validation_and_ties():
    with pytest.raises(ValueError):
        MetricRealization(2, ((Fraction(0), Fraction(1)), (Fraction(2), Fraction(0))))
    tied = MetricRealization(3, tuple(tuple(Fraction(0 if i == j else 1) for j in range(3)) for i in range(3)))
    with pytest.raises(ValueError, match="tie"):
        vietoris_rips_filtration(tied)
    bad = MetricRealization(3, ((0, 1, 5), (1, 0, 1), (5, 1, 0)), cutoff=None)
    assert bad.triangle_violation() == (0, 2, 1) and not bad.is_metric()


def test_bar_bounds_on_random_filtrations():
    rng = seeded(5)
    for _ in range(100):
        n = rng.randint(3, 8)
        f = random_filtration(n, rng)
        for k in (1, 2):
            assert bar_bounds_check(flag_persistence(f, k), n, k, f.m).passed


def test_witness_bar_dies_one_past_the_edge_bound():
    # extending the witness to K_n kills its bar exactly at C(n-1,2)+k+1
    _, f = max_bar_witness(8, 1)
    rest = [(u, v) for v in range(8) for u in range(v) if (u, v) not in set(f.edges)]
    full = f.extend(rest)
    report = bar_bounds_check(flag_persistence(full, 1), 8, 1, full.m)
    assert report.passed
    assert report.details["max_death"] == comb(7, 2) + 2


def test_bar_bounds_flags_early_birth():
    report = bar_bounds_check(Barcode(1, ((3, 5),)), 6, 1)
    assert not report.passed and report.witness["early"] == [(3, 5)]


def test_filtration_text_round_trip_and_errors():
    f = h_filtration(5, 1)
    assert from_filtration_text(to_filtration_text(f)) == f
    assert from_filtration_text("0 0\n").m == 0
    with pytest.raises(FormatError) as err:
        from_filtration_text("4 2\n0 1\n1 0\n")
    assert err.value.line == 3


def test_cycle_filtration_curve():
    g = cycle(5)
    f = EdgewiseFiltration(5, tuple(g.edges()))
    assert betti_curve(f, 1) == [0, 0, 0, 0, 1]
