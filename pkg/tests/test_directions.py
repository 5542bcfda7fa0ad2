"""Direction classes, crossings, goodness audits, and the interval checker."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipan import adversary, directions
from bipan.bigraph import (
    BalancedBipartiteGraph,
    RandomModel,
    complete_bipartite,
    make_graph,
    sample_random,
)
from bipan.cycles import find_cycle_of_length, standard_hamilton, validate_cycle
from bipan.directions import (
    GoodnessParams,
    audit_directions,
    direction_edges,
    direction_goodness,
    direction_of,
    interval_edges,
    is_close_crossing,
    is_crossing,
    lemma5_check,
    middle_edges,
    present_chords_by_direction,
    search_crossing_splice,
    splice_crossing,
)

PARAMS = GoodnessParams(beta=0.1, eps_prime=0.1, p=0.5)


def cycle_plus(n, chords):
    ham = adversary.hamilton_edge_set(standard_hamilton(n))
    return make_graph(n, set(ham) | {tuple(c) for c in chords})


def test_direction_edges_example():
    view = direction_edges(4, 1)
    assert set(view.edges) == {(2, 1), (0, 3), (4, 7), (6, 5)}
    # rank t holds {i-t, i+1+t}
    assert view.edges[0] == (2, 1)
    assert view.rank_of((0, 3)) == 1


def test_directions_partition_edge_set():
    n = 5
    seen = {}
    for i in range(n):
        for e in direction_edges(n, i).edges:
            assert direction_of(n, e) == i
            assert e not in seen
            seen[e] = i
    assert len(seen) == n * n


def test_direction_of_validation():
    with pytest.raises(ValueError):
        direction_of(4, (0, 2))
    with pytest.raises(ValueError):
        direction_edges(4, 4)


def test_is_crossing_examples():
    assert is_crossing(4, (0, 3), (6, 1))
    assert not is_crossing(4, (0, 3), (0, 5))  # shared endpoint
    assert not is_crossing(4, (0, 5), (4, 1))  # nested
    assert not is_crossing(4, (0, 1), (2, 5))  # cycle edge is not a chord


def test_is_crossing_symmetric():
    for e1, e2 in (((0, 3), (6, 1)), ((0, 5), (4, 1)), ((0, 5), (2, 7))):
        assert is_crossing(4, e1, e2) == is_crossing(4, e2, e1)


def test_is_close_crossing():
    params = GoodnessParams(beta=0.125, eps_prime=0.1, p=0.5)  # w=4 at n=16
    assert is_close_crossing(8, (0, 7), (8, 1), params)
    big = GoodnessParams(beta=0.0625, eps_prime=0.1, p=0.5)  # w=4 at n=32
    assert is_crossing(16, (0, 15), (22, 5))
    assert not is_close_crossing(16, (0, 15), (22, 5), big)  # min distance 5
    assert not is_close_crossing(8, (0, 5), (2, 3), params)  # nested, not crossing


def test_splice_crossing_example():
    short, long_ = splice_crossing(4, (0, 3), (6, 1), 4)
    lengths = {short.length, long_.length}
    assert lengths == {6}
    g = cycle_plus(4, [(0, 3), (6, 1)])
    assert validate_cycle(g, short) == (True, "ok")
    assert validate_cycle(g, long_) == (True, "ok")


def test_splice_crossing_all_pairs_small():
    # every crossing pair yields the advertised pair of lengths, and both
    # lengths are confirmed by exhaustive search
    n = 4
    chords = [
        e
        for i in range(n)
        for e in direction_edges(n, i).edges
        if directions._is_chord(n, e)
    ]
    for a in range(len(chords)):
        for b in range(a + 1, len(chords)):
            e1, e2 = chords[a], chords[b]
            if not is_crossing(n, e1, e2):
                continue
            d1, d2 = direction_of(n, e1), direction_of(n, e2)
            l = 2 * ((d2 - d1) % n)
            if l == 0:
                continue  # parallel chords from one direction never cross
            short, long_ = splice_crossing(n, e1, e2, l)
            assert {short.length, long_.length} == {l + 2, 2 * n - l + 2}
            g = cycle_plus(n, [e1, e2])
            for t in sorted({l + 2, 2 * n - l + 2}):
                status, _, _ = find_cycle_of_length(g, t, budget=1 << 62)
                assert status == "found"


def test_splice_crossing_rejections():
    with pytest.raises(ValueError):
        splice_crossing(4, (0, 3), (0, 5), 4)  # not crossing
    with pytest.raises(ValueError):
        splice_crossing(4, (0, 3), (6, 1), 2)  # direction offset mismatch
    with pytest.raises(ValueError):
        splice_crossing(4, (0, 3), (6, 1), 3)  # odd l


def test_search_crossing_splice():
    n = 4
    g = cycle_plus(n, [(0, 3), (6, 1)])
    found = search_crossing_splice(g, 4)
    assert found is not None
    short, long_ = found
    assert {short.length, long_.length} == {6}
    assert search_crossing_splice(cycle_plus(n, []), 4) is None
    assert search_crossing_splice(g, 4, pair_budget=0) is None


def test_goodness_params_validation():
    with pytest.raises(ValueError):
        GoodnessParams(beta=0.2, eps_prime=0.1, p=0.5)
    with pytest.raises(ValueError):
        GoodnessParams(beta=0.1, eps_prime=0.2, p=0.5)
    with pytest.raises(ValueError):
        GoodnessParams(beta=0.1, eps_prime=0.1, p=0.0)
    assert PARAMS.window(3) == 1
    with pytest.raises(ValueError):
        PARAMS.window(2)  # rounds to w=0


def test_window_and_middle_geometry():
    n = 20
    w = PARAMS.window(n)
    assert w == 4
    win = interval_edges(n, 0, 1, PARAMS)
    assert len(win) == w
    assert win == direction_edges(n, 0).edges[:w]
    mid = middle_edges(n, 0, PARAMS)
    assert len(mid) == n - 2 * w
    with pytest.raises(ValueError):
        interval_edges(n, 0, 0, PARAMS)
    with pytest.raises(ValueError):
        interval_edges(n, 0, n - w + 2, PARAMS)


def test_goodness_complete_graph():
    g = complete_bipartite(20)
    params = GoodnessParams(beta=0.1, eps_prime=0.05, p=1.0)
    for i in range(20):
        assert direction_goodness(g, i, params).good


def test_goodness_empty_graph_all_bad():
    g = BalancedBipartiteGraph(20, frozenset())
    for i in range(20):
        v = direction_goodness(g, i, PARAMS)
        assert not v.good and "window" in v.reason


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 19), st.integers(0, 100))
def test_goodness_monotone_in_eps_prime(i, seed):
    g = sample_random(RandomModel(20, 0.5, seed))
    lo = GoodnessParams(beta=0.1, eps_prime=0.08, p=0.5)
    hi = GoodnessParams(beta=0.1, eps_prime=0.16, p=0.5)
    if direction_goodness(g, i, lo).good:
        assert direction_goodness(g, i, hi).good


def test_audit_complete_graph():
    g = complete_bipartite(20)
    report = audit_directions(g, GoodnessParams(beta=0.1, eps_prime=0.05, p=1.0))
    assert report.bad_count == 0 and report.within_bound
    assert report.bound == pytest.approx(20 ** (5 / 6))


def test_audit_xy_counters():
    n = 20
    g = complete_bipartite(n)
    params = GoodnessParams(beta=0.1, eps_prime=0.05, p=1.0)
    report = audit_directions(g, params, g_sub=g, eps=0.2, l=4)
    assert report.y_count == 0  # nothing lost when g_sub == g
    assert report.x_count > 0
    assert report.x_reference == pytest.approx(
        4 * (1 - 4 * 0.05 - 4 * 0.1) * 0.1 * n**3
    )
    assert report.y_reference == pytest.approx((4 - 0.4 + 0.05) * 0.1 * n**3)
    d = report.to_json_dict()
    assert d["x_count"] == report.x_count and d["within_bound"]


def test_audit_skips_l_equals_n():
    n = 20
    g = complete_bipartite(n)
    params = GoodnessParams(beta=0.1, eps_prime=0.05, p=1.0)
    report = audit_directions(g, params, g_sub=g, l=n)
    assert report.skipped_l_equals_n
    assert report.x_count is None


def test_audit_rejects_non_subgraph():
    g = make_graph(4, [(0, 1)])
    h = make_graph(4, [(0, 3)])
    with pytest.raises(ValueError):
        audit_directions(g, PARAMS, g_sub=h)


def test_lemma5_small_case():
    params = GoodnessParams(beta=0.1, eps_prime=0.1, p=1.0)
    report = lemma5_check(30, params, 14)
    assert report.all_hold, report.violations[:3]
    d = report.to_json_dict()
    assert d["all_hold"] is True and d["violations"] == []


def test_lemma5_range_validation():
    params = GoodnessParams(beta=0.1, eps_prime=0.1, p=1.0)
    with pytest.raises(ValueError):
        lemma5_check(30, params, 13)  # odd
    with pytest.raises(ValueError):
        lemma5_check(30, params, 12)  # below 2w+1
    with pytest.raises(ValueError):
        lemma5_check(30, params, 48)  # above 2n-2w-1


def test_present_chords_excludes_cycle_edges():
    g = complete_bipartite(4)
    by_dir = present_chords_by_direction(g)
    flat = [e for lst in by_dir for e in lst]
    assert (0, 1) not in flat and (0, 7) not in flat
    assert len(flat) == 16 - 8
