"""Deletion adversaries: 4-cycle breaking, the fan, and random thinning."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipan.adversary import (
    DeletionLog,
    count_c4,
    fan_construction,
    fan_kept_pairs,
    hamilton_edge_set,
    quadrilateral_breaker,
    random_thin_keep_hamilton,
)
from bipan.bigraph import (
    BalancedBipartiteGraph,
    RandomModel,
    complete_bipartite,
    make_graph,
    sample_random,
)
from bipan.cycles import standard_hamilton


def cycle_plus(n, chords):
    ham = hamilton_edge_set(standard_hamilton(n))
    return make_graph(n, set(ham) | {tuple(c) for c in chords})


def test_deletion_log_serialize():
    log = DeletionLog()
    log.add((3, 0), "why")
    log.add((2, 5), "other")
    assert log.serialize() == "del 0 3 why\ndel 2 5 other\n"
    assert len(log) == 2
    assert log.counts_by_reason() == {"why": 1, "other": 1}


def test_hamilton_edge_set():
    es = hamilton_edge_set(standard_hamilton(3))
    assert es == {(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)}


def test_count_c4():
    assert count_c4(complete_bipartite(4)) == 36  # C(4,2)^2
    assert count_c4(cycle_plus(4, [])) == 0
    assert count_c4(make_graph(2, [(0, 1), (0, 3), (2, 1), (2, 3)])) == 1


def test_breaker_no_c4_is_noop():
    # a single chord at circular distance 5 closes no 4-cycle
    g = cycle_plus(6, [(0, 5)])
    assert count_c4(g) == 0
    out, log = quadrilateral_breaker(g, standard_hamilton(6))
    assert out.edges == g.edges and len(log) == 0


def test_breaker_single_c4():
    g = cycle_plus(4, [(0, 3), (0, 5), (2, 5)])
    ham = standard_hamilton(4)
    out, log = quadrilateral_breaker(g, ham)
    assert count_c4(out) == 0
    assert hamilton_edge_set(ham) <= out.edges
    assert len(log) >= 1
    assert log.replay(g).edges == out.edges


def test_breaker_complete_graph():
    ham = standard_hamilton(4)
    out, log = quadrilateral_breaker(complete_bipartite(4), ham)
    assert count_c4(out) == 0
    assert hamilton_edge_set(ham) <= out.edges
    # determinism: lowest-labeled victim each round
    out2, log2 = quadrilateral_breaker(complete_bipartite(4), ham)
    assert log.entries == log2.entries


def test_breaker_rejects_degenerate():
    with pytest.raises(ValueError):
        quadrilateral_breaker(complete_bipartite(2), standard_hamilton(2))
    with pytest.raises(ValueError):
        quadrilateral_breaker(cycle_plus(4, []), standard_hamilton(3))


def test_fan_on_k44_exact():
    out, log = fan_construction(complete_bipartite(4))
    expected = {
        (0, 1), (0, 7), (2, 1), (2, 3), (4, 1), (4, 3),
        (4, 5), (6, 1), (6, 3), (6, 5), (6, 7),
    }
    assert out.edges == frozenset(expected)
    assert out.edge_count == fan_kept_pairs(4) == 11
    assert log.replay(complete_bipartite(4)).edges == out.edges
    reasons = log.counts_by_reason()
    assert set(reasons) == {"fan-apex", "fan-tail"}


def test_fan_closed_form():
    for n in range(2, 65):
        out, _ = fan_construction(complete_bipartite(n))
        assert out.edge_count == fan_kept_pairs(n) == (n * n + n + 2) // 2


def test_fan_preserves_hamilton():
    for n in (3, 6, 10):
        g = complete_bipartite(n)
        out, _ = fan_construction(g)
        assert hamilton_edge_set(standard_hamilton(n)) <= out.edges


def test_fan_c4_census_reported_not_zero():
    # the literal deletion rule leaves 4-cycles behind (e.g. 2-1-4-3);
    # callers report the census instead of assuming absence
    out, _ = fan_construction(complete_bipartite(4))
    assert out.has_edge(2, 1) and out.has_edge(2, 3)
    assert out.has_edge(4, 1) and out.has_edge(4, 3)
    assert count_c4(out) > 0


def test_fan_on_sparse_input():
    g = make_graph(4, [(0, 1), (0, 3), (2, 5)])
    out, log = fan_construction(g)
    assert out.edges == frozenset({(0, 1)})
    assert len(log) == 2


def test_thin_determinism_and_target():
    g = complete_bipartite(6)
    ham = standard_hamilton(6)
    a, log_a = random_thin_keep_hamilton(g, ham, 20, seed=9)
    b, _ = random_thin_keep_hamilton(g, ham, 20, seed=9)
    c, _ = random_thin_keep_hamilton(g, ham, 20, seed=10)
    assert a.edges == b.edges
    assert a.edge_count == 20
    assert a.edges != c.edges
    assert hamilton_edge_set(ham) <= a.edges
    assert log_a.replay(g).edges == a.edges


def test_thin_edge_cases():
    g = complete_bipartite(4)
    ham = standard_hamilton(4)
    same, log = random_thin_keep_hamilton(g, ham, g.edge_count, seed=1)
    assert same.edges == g.edges and len(log) == 0
    only_cycle, _ = random_thin_keep_hamilton(g, ham, 8, seed=1)
    assert only_cycle.edges == hamilton_edge_set(ham)
    with pytest.raises(ValueError):
        random_thin_keep_hamilton(g, ham, 7, seed=1)


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 6), st.integers(0, 50))
def test_breaker_random_graphs_c4_free(n, seed):
    ham = standard_hamilton(n)
    g0 = sample_random(RandomModel(n, 0.6, seed))
    g = BalancedBipartiteGraph(n, g0.edges | hamilton_edge_set(ham))
    out, log = quadrilateral_breaker(g, ham)
    assert count_c4(out) == 0
    assert hamilton_edge_set(ham) <= out.edges
    assert log.replay(g).edges == out.edges
