"""Tightness constructions: 4-cycle breaking, the fan deletion, and random thinning.

Each operator returns the surviving graph together with a full deletion log,
and never touches the edges of the supplied (or implicit) Hamilton cycle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .bigraph import BalancedBipartiteGraph, norm_edge, remove_edges
from .cycles import CycleCertificate, validate_cycle


@dataclass
class DeletionLog:
    """Ordered record of deleted edges with reason tags."""

    entries: list[tuple[tuple[int, int], str]] = field(default_factory=list)

    def add(self, edge: tuple[int, int], reason: str) -> None:
        self.entries.append((norm_edge(*edge), reason))

    def __len__(self) -> int:
        return len(self.entries)

    def counts_by_reason(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for _, reason in self.entries:
            out[reason] = out.get(reason, 0) + 1
        return out

    def serialize(self) -> str:
        return "".join(f"del {u} {v} {reason}\n" for (u, v), reason in self.entries)

    def replay(self, g: BalancedBipartiteGraph) -> BalancedBipartiteGraph:
        """Apply the logged deletions to g, reproducing the operator output."""
        return remove_edges(g, [e for e, _ in self.entries])


def hamilton_edge_set(hamilton: CycleCertificate) -> frozenset[tuple[int, int]]:
    vs = hamilton.vertices
    return frozenset(
        norm_edge(a, b) for a, b in zip(vs, vs[1:] + vs[:1])
    )


def count_c4(g: BalancedBipartiteGraph) -> int:
    """Number of 4-cycles, via common-neighborhood bitset counting."""
    adj = g.adjacency
    total = 0
    evens = range(0, 2 * g.n, 2)
    for a_i, u in enumerate(evens):
        for v in evens[a_i + 1 :]:
            common = (adj[u] & adj[v]).bit_count()
            total += common * (common - 1) // 2
    return total


def _find_c4(
    g: BalancedBipartiteGraph,
) -> Optional[tuple[int, int, int, int]]:
    """Lowest (u, v, w1, w2): even u < v with odd common neighbors w1 < w2."""
    adj = g.adjacency
    evens = range(0, 2 * g.n, 2)
    for a_i, u in enumerate(evens):
        row = adj[u]
        for v in evens[a_i + 1 :]:
            common = row & adj[v]
            if common.bit_count() >= 2:
                low1 = common & -common
                w1 = low1.bit_length() - 1
                common ^= low1
                low2 = common & -common
                w2 = low2.bit_length() - 1
                return u, v, w1, w2
    return None


def quadrilateral_breaker(
    g: BalancedBipartiteGraph,
    hamilton: CycleCertificate,
    seed: int = 0,
) -> tuple[BalancedBipartiteGraph, DeletionLog]:
    """Delete one non-Hamilton edge from 4-cycles until none remain.

    4-cycles are processed incrementally (a deletion can kill many at once);
    the deleted edge is always the lowest-labeled eligible one, so the seed is
    currently unused beyond provenance.  The output provably contains no
    4-cycle and still contains the Hamilton cycle.
    """
    if g.n <= 2:
        raise ValueError("n must be at least 3 (at n=2 a 4-cycle can be all-Hamilton)")
    ok, reason = validate_cycle(g, hamilton)
    if not ok or hamilton.length != 2 * g.n:
        raise ValueError(f"invalid Hamilton cycle: {reason}")
    ham = hamilton_edge_set(hamilton)
    log = DeletionLog()
    current = g
    while True:
        found = _find_c4(current)
        if found is None:
            break
        u, v, w1, w2 = found
        cycle_edges = sorted({(u, w1), (u, w2), (v, w1), (v, w2)})
        eligible = [e for e in cycle_edges if e not in ham]
        if not eligible:
            raise RuntimeError(
                f"4-cycle {u}-{w1}-{v}-{w2} consists entirely of Hamilton edges"
            )
        victim = eligible[0]
        log.add(victim, "c4-break")
        current = remove_edges(current, [victim])
    return current, log


def fan_construction(
    g: BalancedBipartiteGraph,
) -> tuple[BalancedBipartiteGraph, DeletionLog]:
    """Literal fan deletion: vertex 0 keeps neighbors {1, 2n-1}; every even
    i >= 2 keeps only odd neighbors j <= i+1 (plain integer comparison).

    Preserves every edge of C_{2n} that g contains.  The output's 4-cycle
    status is reported by callers, never assumed.
    """
    n = g.n
    two_n = 2 * n
    log = DeletionLog()
    victims = []
    for u, v in sorted(g.edges):
        if u == 0:
            if v not in (1, two_n - 1):
                victims.append((u, v))
                log.add((u, v), "fan-apex")
        elif v >= u + 3:
            victims.append((u, v))
            log.add((u, v), "fan-tail")
    return remove_edges(g, victims), log


def fan_kept_pairs(n: int) -> int:
    """Closed-form count of pairs the fan keeps in K_{n,n}: (n^2+n+2)/2."""
    return (n * n + n + 2) // 2


def random_thin_keep_hamilton(
    g: BalancedBipartiteGraph,
    hamilton: CycleCertificate,
    target_edges: int,
    seed: int,
) -> tuple[BalancedBipartiteGraph, DeletionLog]:
    """Delete uniformly random non-Hamilton edges until edge_count hits the target."""
    ok, reason = validate_cycle(g, hamilton)
    if not ok or hamilton.length != 2 * g.n:
        raise ValueError(f"invalid Hamilton cycle: {reason}")
    if target_edges < 2 * g.n:
        raise ValueError(f"target {target_edges} below Hamilton size {2 * g.n}")
    target = max(target_edges, 2 * g.n)
    excess = g.edge_count - target
    log = DeletionLog()
    if excess <= 0:
        return g, log
    ham = hamilton_edge_set(hamilton)
    pool = sorted(g.edges - ham)
    rng = random.Random(seed)
    victims = rng.sample(pool, excess)
    for e in victims:
        log.add(e, "thin")
    return remove_edges(g, victims), log
