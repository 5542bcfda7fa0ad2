"""Reproducible experiment drivers: exhaustive small-n verification, the
resilience sweep, and the empirical concentration check.

Every driver is a pure function of its numeric parameters and master seed;
CSV rows are emitted in trial order so outputs are stable across runs.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import adversary, cycles
from .bigraph import (
    BalancedBipartiteGraph,
    RandomModel,
    chernoff_tail_bound,
    complete_bipartite,
    iter_candidate_pairs,
    mix_seed,
    sample_random,
)

THEOREM1_CAP = 5

CSV_HEADER = "trial,seed,n,p,eps,edges_sampled,edges_final,verdict,missing,unknown,ms"


def parse_p_expression(expr: str, n: int) -> float:
    """Accept a literal probability or 'c*n^-2/3' style scaling expressions."""
    expr = expr.strip().replace(" ", "")
    try:
        return float(expr)
    except ValueError:
        pass
    if "n^" in expr:
        coeff_s, _, exp_s = expr.partition("n^")
        coeff_s = coeff_s.rstrip("*")
        coeff = float(coeff_s) if coeff_s else 1.0
        if "/" in exp_s:
            num, den = exp_s.split("/")
            exponent = float(num) / float(den)
        else:
            exponent = float(exp_s)
        return coeff * n**exponent
    raise ValueError(f"cannot parse probability expression {expr!r}")


def verify_theorem1(n: int) -> list[BalancedBipartiteGraph]:
    """Exhaustively hunt for Hamiltonian m > n^2/2 subgraphs of K_{n,n} that
    are not bipancyclic; the expected return value is the empty list."""
    if n > THEOREM1_CAP:
        raise ValueError(f"n={n} above exhaustive cap {THEOREM1_CAP}")
    pairs = list(iter_candidate_pairs(n))
    m_min = n * n // 2 + 1
    if n == 5:
        m_min = max(m_min, 13)
    violators = []
    for m in range(m_min, n * n + 1):
        for combo in itertools.combinations(pairs, m):
            g = BalancedBipartiteGraph(n, frozenset(combo))
            if not cycles.hamiltonian_bruteforce(g):
                continue
            verdict = cycles.is_bipancyclic(g, mode="exhaustive")
            if verdict.verdict != "yes":
                violators.append(g)
    return violators


@dataclass
class TrialRecord:
    """One Monte Carlo trial row of the resilience sweep."""

    trial: int
    seed: int
    n: int
    p: float
    eps: float
    edges_sampled: int
    edges_final: int
    verdict: str
    missing: tuple[int, ...]
    unknown: tuple[int, ...]
    wall_ms: float

    def csv_row(self) -> str:
        missing = ";".join(map(str, self.missing))
        unknown = ";".join(map(str, self.unknown))
        return (
            f"{self.trial},{self.seed},{self.n},{self.p:.10g},{self.eps:.10g},"
            f"{self.edges_sampled},{self.edges_final},{self.verdict},"
            f"{missing},{unknown},{self.wall_ms:.1f}"
        )


@dataclass
class SweepConfig:
    n: int
    p: float
    eps: float
    trials: int
    master_seed: int
    budget: int = cycles.DEFAULT_DFS_BUDGET

    def __post_init__(self) -> None:
        if self.n < 2 or self.trials < 1:
            raise ValueError("need n >= 2 and at least one trial")
        if not 0.0 < self.p <= 1.0:
            raise ValueError("p must lie in (0, 1]")
        if not 0.0 < self.eps < 0.5:
            raise ValueError("eps must lie in (0, 0.5)")


def run_sweep_trial(config: SweepConfig, trial: int) -> TrialRecord:
    """Sample, plant the Hamilton cycle, thin, and test bipancyclicity."""
    start = time.perf_counter()
    seed = mix_seed(config.master_seed, trial)
    n = config.n
    sampled = sample_random(RandomModel(n, config.p, seed))
    hamilton = cycles.standard_hamilton(n)
    planted = BalancedBipartiteGraph(
        n, sampled.edges | adversary.hamilton_edge_set(hamilton)
    )
    target = math.ceil((0.5 + config.eps) * planted.edge_count)
    if target < 2 * n:
        raise ValueError(
            f"thinning target {target} below Hamilton size {2 * n}; raise eps or p"
        )
    thinned, _ = adversary.random_thin_keep_hamilton(
        planted, hamilton, target, seed
    )
    verdict = cycles.is_bipancyclic(
        thinned, hamilton, mode="certificate", budget=config.budget
    )
    wall_ms = (time.perf_counter() - start) * 1000.0
    return TrialRecord(
        trial=trial,
        seed=seed,
        n=n,
        p=config.p,
        eps=config.eps,
        edges_sampled=planted.edge_count,
        edges_final=thinned.edge_count,
        verdict={"yes": "bipancyclic", "no": "missing", "unknown": "unknown"}[
            verdict.verdict
        ],
        missing=verdict.missing,
        unknown=verdict.unknown,
        wall_ms=wall_ms,
    )


def resilience_sweep(config: SweepConfig) -> list[TrialRecord]:
    return [run_sweep_trial(config, t) for t in range(config.trials)]


def records_to_csv(records: list[TrialRecord]) -> str:
    return "\n".join([CSV_HEADER] + [r.csv_row() for r in records]) + "\n"


@dataclass(frozen=True)
class ChernoffRow:
    eps: float
    observed_freq: float
    bound: float
    slack: float

    @property
    def passed(self) -> bool:
        return self.observed_freq <= self.bound + self.slack


def chernoff_check(
    trials_n: int,
    p: float,
    eps_values: list[float],
    samples: int,
    seed: int,
) -> list[ChernoffRow]:
    """Empirical two-sided tail frequencies of Binomial(trials_n, p) against
    the concentration bound plus sampling slack 3/sqrt(samples)."""
    rng = np.random.default_rng(seed)
    xs = rng.binomial(trials_n, p, size=samples)
    mean = trials_n * p
    slack = 3.0 / math.sqrt(samples)
    rows = []
    for eps in eps_values:
        freq = float(np.mean(np.abs(xs - mean) >= eps * mean))
        rows.append(ChernoffRow(eps, freq, chernoff_tail_bound(eps, mean), slack))
    return rows
