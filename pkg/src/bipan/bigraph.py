"""Balanced bipartite graphs on the label set [2n].

Even labels form one class, odd labels the other, so the standard cycle
0,1,...,2n-1 alternates classes.  Graphs are immutable; every mutating
operation returns a new value.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

_MASK64 = (1 << 64) - 1


def norm_edge(u: int, v: int) -> tuple[int, int]:
    """Return the edge as an (even, odd) pair, rejecting same-parity pairs."""
    if (u ^ v) & 1 == 0:
        raise ValueError(f"edge {{{u},{v}}} joins two labels of the same parity")
    return (u, v) if u % 2 == 0 else (v, u)


@dataclass(frozen=True)
class BalancedBipartiteGraph:
    """A labeled balanced bipartite graph on {0,...,2n-1}.

    Edges are stored as (even, odd) label pairs.  Isolated vertices are
    permitted; the vertex set is always exactly [2n].
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("class size n must be positive")
        two_n = 2 * self.n
        for u, v in self.edges:
            if not (0 <= u < two_n and 0 <= v < two_n):
                raise ValueError(f"edge ({u},{v}) outside label range [0,{two_n})")
            if u % 2 != 0 or v % 2 != 1:
                raise ValueError(f"edge ({u},{v}) is not an (even, odd) pair")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmasks (bit v of adjacency[u] set iff {u,v} is an edge)."""
        rows = [0] * (2 * self.n)
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adjacency[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> list[int]:
        """Neighbors of v in ascending label order."""
        out = []
        row = self.adjacency[v]
        while row:
            low = row & -row
            out.append(low.bit_length() - 1)
            row ^= low
        return out

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> BalancedBipartiteGraph:
    """Build a graph from arbitrary (u, v) pairs, normalizing endpoint order."""
    return BalancedBipartiteGraph(n, frozenset(norm_edge(u, v) for u, v in edges))


@dataclass(frozen=True)
class ParityPermutation:
    """A relabeling of [2n] that maps even labels to even and odd to odd."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        m = self.mapping
        if sorted(m) != list(range(len(m))):
            raise ValueError("mapping is not a permutation of [2n]")
        if len(m) % 2 != 0:
            raise ValueError("domain size must be even")
        for x, y in enumerate(m):
            if (x ^ y) & 1:
                raise ValueError(f"label {x} mapped across parity classes to {y}")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def apply(self, g: BalancedBipartiteGraph) -> BalancedBipartiteGraph:
        if len(self.mapping) != 2 * g.n:
            raise ValueError("permutation size does not match graph")
        return make_graph(g.n, ((self.mapping[u], self.mapping[v]) for u, v in g.edges))

    def inverse(self) -> "ParityPermutation":
        inv = [0] * len(self.mapping)
        for x, y in enumerate(self.mapping):
            inv[y] = x
        return ParityPermutation(tuple(inv))


@dataclass(frozen=True)
class RandomModel:
    """Parameters of the G(n,n,p) sampler."""

    n: int
    p: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0,1]")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")


def complete_bipartite(n: int) -> BalancedBipartiteGraph:
    """K_{n,n} on [2n]: every even-odd label pair is an edge."""
    if n < 1:
        raise ValueError("n must be positive")
    edges = frozenset(
        (u, v) for u in range(0, 2 * n, 2) for v in range(1, 2 * n, 2)
    )
    return BalancedBipartiteGraph(n, edges)


def sample_random(model: RandomModel) -> BalancedBipartiteGraph:
    """Sample G(n,n,p) deterministically from the model seed.

    The generator is the stdlib Mersenne Twister (``random.Random``), consumed
    by one ``random()`` call per candidate pair in ascending (even, odd) order,
    so identical (n, p, seed) always yields the identical graph.
    """
    rng = random.Random(model.seed)
    p = model.p
    edges = []
    for u in range(0, 2 * model.n, 2):
        for v in range(1, 2 * model.n, 2):
            if rng.random() < p:
                edges.append((u, v))
    return BalancedBipartiteGraph(model.n, frozenset(edges))


def remove_edges(
    g: BalancedBipartiteGraph, victims: Iterable[tuple[int, int]]
) -> BalancedBipartiteGraph:
    """Return g with the victim edges removed; every victim must be present."""
    vset = {norm_edge(u, v) for u, v in victims}
    missing = vset - g.edges
    if missing:
        raise ValueError(f"victim edges not present: {sorted(missing)[:5]}")
    return BalancedBipartiteGraph(g.n, g.edges - vset)


def circ_dist(i: int, two_n: int) -> int:
    """Distance of label i from 0 on the cycle of length two_n."""
    if two_n < 4:
        raise ValueError("cycle length must be at least 4")
    r = i % two_n
    return min(r, two_n - r)


def chernoff_tail_bound(eps: float, mean: float) -> float:
    """Two-sided binomial tail bound 2*exp(-eps^2 * mean / 3), valid for eps in (0, 3/2]."""
    if not 0.0 < eps <= 1.5:
        raise ValueError("eps must lie in (0, 3/2]")
    if mean <= 0.0:
        raise ValueError("mean must be positive")
    return 2.0 * math.exp(-eps * eps * mean / 3.0)


def mix_seed(master_seed: int, trial_index: int) -> int:
    """Derive a per-trial seed from (master seed, trial index).

    SplitMix64 finalizer applied to master + (index+1) * golden-gamma; this is
    the documented mixing function referenced by all experiment artifacts.
    """
    z = (master_seed + 0x9E3779B97F4A7C15 * (trial_index + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


# --- bbg text format -------------------------------------------------------

def to_bbg(g: BalancedBipartiteGraph) -> str:
    """Serialize to the bbg text format (sorted edges, LF endings, trailing newline)."""
    lines = ["bbg 1", f"n {g.n}"]
    for u, v in sorted(g.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def from_bbg(text: str) -> BalancedBipartiteGraph:
    """Parse the bbg text format produced by :func:`to_bbg`."""
    lines = text.splitlines()
    if not lines or lines[0] != "bbg 1":
        raise ValueError("missing 'bbg 1' header")
    if len(lines) < 2 or not lines[1].startswith("n "):
        raise ValueError("missing 'n <n>' line")
    n = int(lines[1][2:])
    edges = []
    for line in lines[2:]:
        if not line:
            continue
        u_s, v_s = line.split()
        edges.append((int(u_s), int(v_s)))
    return make_graph(n, edges)


def iter_candidate_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All n^2 potential (even, odd) edges in the canonical sampling order."""
    for u in range(0, 2 * n, 2):
        for v in range(1, 2 * n, 2):
            yield (u, v)
