"""Experiment drivers: p expressions, exhaustive verification, sweeps, tails."""

import math

import pytest

from bipan import experiments
from bipan.experiments import (
    CSV_HEADER,
    SweepConfig,
    chernoff_check,
    parse_p_expression,
    records_to_csv,
    resilience_sweep,
    run_sweep_trial,
    verify_theorem1,
)


def test_parse_p_expression():
    assert parse_p_expression("0.25", 100) == 0.25
    assert parse_p_expression("5*n^-2/3", 8) == pytest.approx(5 * 8 ** (-2 / 3))
    assert parse_p_expression("n^-1", 10) == pytest.approx(0.1)
    assert parse_p_expression(" 0.5 ", 3) == 0.5
    with pytest.raises(ValueError):
        parse_p_expression("garbage", 10)


def test_theorem1_trivial_sizes():
    assert verify_theorem1(2) == []
    with pytest.raises(ValueError):
        verify_theorem1(6)


def test_theorem1_n3_finds_bare_hamilton_cycles():
    # the six labeled Hamilton 6-cycles have more than n^2/2 = 4.5 edges yet
    # no 4-cycle, so the dense-subgraph implication genuinely fails at n=3
    violators = verify_theorem1(3)
    assert len(violators) == 6
    for g in violators:
        assert g.edge_count == 6
        assert all(g.degree(v) == 2 for v in range(6))


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(n=1, p=0.5, eps=0.2, trials=1, master_seed=0)
    with pytest.raises(ValueError):
        SweepConfig(n=8, p=0.0, eps=0.2, trials=1, master_seed=0)
    with pytest.raises(ValueError):
        SweepConfig(n=8, p=0.5, eps=0.6, trials=1, master_seed=0)
    with pytest.raises(ValueError):
        SweepConfig(n=8, p=0.5, eps=0.2, trials=0, master_seed=0)


def test_sweep_trial_deterministic():
    config = SweepConfig(n=16, p=0.4, eps=0.2, trials=1, master_seed=5)
    a = run_sweep_trial(config, 0)
    b = run_sweep_trial(config, 0)
    assert a.seed == b.seed
    assert (a.edges_sampled, a.edges_final, a.verdict) == (
        b.edges_sampled,
        b.edges_final,
        b.verdict,
    )


def test_sweep_records_and_csv():
    config = SweepConfig(n=12, p=0.5, eps=0.2, trials=3, master_seed=1)
    records = resilience_sweep(config)
    assert len(records) == 3
    assert all(r.verdict in ("bipancyclic", "missing", "unknown") for r in records)
    csv = records_to_csv(records)
    lines = csv.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 4
    first = lines[1].split(",")
    assert first[0] == "0" and first[2] == "12"


def test_sweep_dense_graphs_are_bipancyclic():
    config = SweepConfig(n=24, p=0.9, eps=0.3, trials=3, master_seed=7)
    for r in resilience_sweep(config):
        assert r.verdict == "bipancyclic"
        assert r.missing == () and r.unknown == ()


def test_chernoff_check():
    rows = chernoff_check(1000, 0.2, [0.2, 0.8], 20_000, seed=3)
    assert len(rows) == 2
    assert rows[0].slack == pytest.approx(3 / math.sqrt(20_000))
    assert all(r.passed for r in rows)
    # larger deviations are rarer
    assert rows[1].observed_freq <= rows[0].observed_freq
    again = chernoff_check(1000, 0.2, [0.2, 0.8], 20_000, seed=3)
    assert [r.observed_freq for r in again] == [r.observed_freq for r in rows]
