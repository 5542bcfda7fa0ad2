"""l-shortcut recognition, enumeration, splicing, and hypergraph probes.

An l-shortcut is a 4-chord pattern on the canonical cycle 0,...,2n-1 whose
union with the cycle contains cycles of lengths l+8 and 2n-l.  The 4-uniform
hypergraph with vertex set E(K_{n,n}) and one hyperedge per shortcut drives
the density and degree-moment probes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .bigraph import BalancedBipartiteGraph, complete_bipartite, norm_edge
from .cycles import CycleCertificate

HYPERGRAPH_CAP = 16

TYPE_I = "TypeI"
TYPE_II = "TypeII"


def _is_cycle_edge(u: int, v: int, two_n: int) -> bool:
    d = (u - v) % two_n
    return d == 1 or d == two_n - 1


@dataclass(frozen=True)
class Shortcut:
    """A typed l-shortcut given by its four anchor positions."""

    kind: str
    i1: int
    i2: int
    i3: int
    i4: int
    l: int
    n: int

    def chords(self) -> tuple[tuple[int, int], ...]:
        two_n = 2 * self.n
        return (
            norm_edge(self.i1, self.i3),
            norm_edge((self.i1 + 1) % two_n, self.i4),
            norm_edge(self.i2, (self.i4 + self.l + 1) % two_n),
            norm_edge((self.i2 + 1) % two_n, (self.i3 + 1) % two_n),
        )

    def positions(self) -> tuple[int, ...]:
        """The eight anchor positions in the clockwise order required by the kind."""
        two_n = 2 * self.n
        i1, i2, i3, i4 = self.i1, self.i2, self.i3, self.i4
        if self.kind == TYPE_I:
            seq = (i1, i1 + 1, i2, i2 + 1, i3, i3 + 1, i4, i4 + self.l + 1)
        else:
            seq = (i1, i1 + 1, i2, i2 + 1, i4, i4 + self.l + 1, i3, i3 + 1)
        return tuple(x % two_n for x in seq)


def _check_anchor_geometry(kind: str, i1: int, i2: int, i3: int, i4: int,
                           l: int, n: int) -> bool:
    """Clockwise order, distinctness and parity constraints for an anchor tuple."""
    two_n = 2 * n
    o2 = (i2 - i1) % two_n
    o3 = (i3 - i1) % two_n
    o4 = (i4 - i1) % two_n
    if (i2 - i1) % 2 != 0 or (i3 - i1) % 2 != 1 or (i4 - i1) % 2 != 0:
        return False
    if kind == TYPE_I:
        offs = (0, 1, o2, o2 + 1, o3, o3 + 1, o4, o4 + l + 1)
    elif kind == TYPE_II:
        offs = (0, 1, o2, o2 + 1, o4, o4 + l + 1, o3, o3 + 1)
    else:
        return False
    # cut the circle at i1: offsets must be strictly increasing and stay < 2n
    for a, b in zip(offs, offs[1:]):
        if b <= a:
            return False
    if offs[-1] > two_n - 1:
        return False
    # none of the four chords may be a cycle edge
    for u, v in (
        (i1, i3),
        (i1 + 1, i4),
        (i2, i4 + l + 1),
        (i2 + 1, i3 + 1),
    ):
        if _is_cycle_edge(u % two_n, v % two_n, two_n):
            return False
    return True


def classify_shortcut(
    n: int, chords: tuple[tuple[int, int], ...], l: int
) -> Optional[Shortcut]:
    """Recover the Shortcut (kind and anchors) encoded by four chord edges, if any."""
    if l % 2 != 0:
        raise ValueError("l must be even")
    if not 0 <= l <= n:
        raise ValueError("l must lie in [0, n]")
    if len(chords) != 4:
        return None
    two_n = 2 * n
    edges = [frozenset(e) for e in chords]
    if len(set(edges)) != 4:
        return None
    # role 1 is {i1, i3}; try each edge and orientation for it, then the
    # remaining roles are forced by the anchors they must contain.
    for r1 in range(4):
        rest = [edges[k] for k in range(4) if k != r1]
        for i1, i3 in ((tuple(edges[r1])[0], tuple(edges[r1])[1]),
                       (tuple(edges[r1])[1], tuple(edges[r1])[0])):
            # role 2 contains i1+1, role 4 contains i2+1 = derived later
            p11 = (i1 + 1) % two_n
            for r2 in range(3):
                if p11 not in rest[r2]:
                    continue
                (i4,) = rest[r2] - {p11}
                others = [rest[k] for k in range(3) if k != r2]
                p4l = (i4 + l + 1) % two_n
                for r3 in range(2):
                    if p4l not in others[r3]:
                        continue
                    (i2,) = others[r3] - {p4l}
                    role4 = others[1 - r3]
                    if role4 != frozenset({(i2 + 1) % two_n, (i3 + 1) % two_n}):
                        continue
                    for kind in (TYPE_I, TYPE_II):
                        if _check_anchor_geometry(kind, i1, i2, i3, i4, l, n):
                            return Shortcut(kind, i1, i2, i3 % two_n, i4, l, n)
    return None


def enumerate_shortcuts(
    g: BalancedBipartiteGraph,
    l: int,
    cap: Optional[int] = None,
) -> Iterator[Shortcut]:
    """All l-shortcuts whose four chords are edges of g, in ascending anchor order.

    Anchors are scanned (kind, i1, o2, o4, o3) with the two chords not
    involving i3 tested before the inner i3 loop.  g must carry the canonical
    labeling (the cycle edges of C_{2n} are excluded as chords regardless of
    whether g contains them).
    """
    if l % 2 != 0:
        raise ValueError("l must be even")
    if not 0 <= l <= g.n:
        raise ValueError("l must lie in [0, n]")
    n = g.n
    two_n = 2 * n
    adj = g.adjacency
    emitted = 0
    for kind in (TYPE_I, TYPE_II):
        for i1 in range(two_n):
            row_i1 = adj[i1]
            row_i1p = adj[(i1 + 1) % two_n]
            for o2 in range(2, two_n - 1, 2):
                i2 = (i1 + o2) % two_n
                row_i2 = adj[i2]
                row_i2p = adj[(i2 + 1) % two_n]
                if kind == TYPE_I:
                    # order: o2+1 < o3 < o3+1 < o4 < o4+l+1 <= 2n-1
                    o4_lo, o4_hi = o2 + 4, two_n - 2 - l
                else:
                    # order: o2+1 < o4 < o4+l+1 < o3 < o3+1 <= 2n-1
                    o4_lo, o4_hi = o2 + 2, two_n - 4 - l
                for o4 in range(o4_lo, o4_hi + 1, 2):
                    i4 = (i1 + o4) % two_n
                    if not (row_i1p >> i4) & 1:
                        continue
                    i4l = (i4 + l + 1) % two_n
                    if not (row_i2 >> i4l) & 1:
                        continue
                    if _is_cycle_edge((i1 + 1) % two_n, i4, two_n):
                        continue
                    if _is_cycle_edge(i2, i4l, two_n):
                        continue
                    if kind == TYPE_I:
                        o3_range = range(o2 + 3, o4 - 1, 2)
                    else:
                        o3_range = range(o4 + l + 2 + (o4 + l) % 2 + 1, two_n - 1, 2)
                    for o3 in o3_range:
                        i3 = (i1 + o3) % two_n
                        if not (row_i1 >> i3) & 1:
                            continue
                        i3p = (i3 + 1) % two_n
                        if not (row_i2p >> i3p) & 1:
                            continue
                        if _is_cycle_edge(i1, i3, two_n):
                            continue
                        if _is_cycle_edge((i2 + 1) % two_n, i3p, two_n):
                            continue
                        yield Shortcut(kind, i1, i2, i3, i4, l, n)
                        emitted += 1
                        if cap is not None and emitted >= cap:
                            return


def count_shortcuts(g: BalancedBipartiteGraph, l: int) -> int:
    return sum(1 for _ in enumerate_shortcuts(g, l))


def find_first_shortcut(g: BalancedBipartiteGraph, l: int) -> Optional[Shortcut]:
    for s in enumerate_shortcuts(g, l, cap=1):
        return s
    return None


def enumerate_shortcuts_reference(
    g: BalancedBipartiteGraph, l: int
) -> list[Shortcut]:
    """Slow oracle: scan every anchor 4-tuple and filter via the geometry check."""
    n = g.n
    two_n = 2 * n
    out = []
    for kind in (TYPE_I, TYPE_II):
        for i1 in range(two_n):
            for i2 in range(two_n):
                for i3 in range(two_n):
                    for i4 in range(two_n):
                        if not _check_anchor_geometry(kind, i1, i2, i3, i4, l, n):
                            continue
                        s = Shortcut(kind, i1, i2, i3, i4, l, n)
                        if all(g.has_edge(u, v) for u, v in s.chords()):
                            out.append(s)
    return out


def splice_shortcut(n: int, s: Shortcut) -> tuple[CycleCertificate, CycleCertificate]:
    """The two cycles of lengths (l+8, 2n-l) carried by C_{2n} plus the shortcut."""
    if s.n != n:
        raise ValueError("shortcut built for a different n")
    if not _check_anchor_geometry(s.kind, s.i1, s.i2, s.i3, s.i4, s.l, n):
        raise ValueError("invalid shortcut anchors")
    two_n = 2 * n
    l = s.l
    if l + 8 > 2 * n:
        raise ValueError("short cycle length l+8 exceeds 2n")
    i1, i2, i3, i4 = s.i1, s.i2, s.i3, s.i4

    def arc(a: int, b: int, step: int) -> list[int]:
        """Vertices from a to b inclusive, walking around the circle by step."""
        out = [a % two_n]
        v = a
        while v % two_n != b % two_n:
            v += step
            out.append(v % two_n)
        return out

    short = (
        [i1, (i1 + 1) % two_n]
        + arc(i4, i4 + l + 1, +1)
        + [i2, (i2 + 1) % two_n, (i3 + 1) % two_n, i3]
    )
    if s.kind == TYPE_I:
        long_ = (
            arc(i1 + 1, i2, +1)
            + arc(i4 + l + 1, i1, +1)
            + arc(i3, i2 + 1, -1)
            + arc(i3 + 1, i4, +1)
        )
    else:
        long_ = (
            arc(i1 + 1, i2, +1)
            + arc(i4 + l + 1, i3, +1)
            + arc(i1, i3 + 1, -1)
            + arc(i2 + 1, i4, +1)
        )
    short_c = CycleCertificate(tuple(short))
    long_c = CycleCertificate(tuple(long_))
    assert short_c.length == l + 8, (short_c.length, l + 8)
    assert long_c.length == 2 * n - l, (long_c.length, 2 * n - l)
    return short_c, long_c


def lemma1_threshold(eps_prime: float, n: int) -> float:
    """The guaranteed shortcut count eps'^8 * n^4 / (4 * 16^7)."""
    if not 0.0 < eps_prime < 1.0:
        raise ValueError("eps_prime must lie in (0, 1)")
    return eps_prime**8 * n**4 / (4 * 16**7)


@dataclass(frozen=True)
class CensusRow:
    l: int
    count: int
    threshold: float

    @property
    def passed(self) -> bool:
        return self.count >= self.threshold


@dataclass(frozen=True)
class CensusReport:
    n: int
    eps_prime: float
    rows: tuple[CensusRow, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "eps_prime": self.eps_prime,
            "rows": [
                {
                    "l": r.l,
                    "count": r.count,
                    "threshold": r.threshold,
                    "pass": r.passed,
                }
                for r in self.rows
            ],
            "all_pass": self.all_pass,
        }


class HypothesisViolation(ValueError):
    """The edge-density hypothesis of the census does not hold for this graph."""


def shortcut_census(g: BalancedBipartiteGraph, eps_prime: float) -> CensusReport:
    """Exact shortcut counts vs. the guaranteed lower bound, for every admissible l."""
    if not 0.0 < eps_prime < 1.0:
        raise ValueError("eps_prime must lie in (0, 1)")
    n = g.n
    need = (1 + eps_prime) * n * n / 2
    if g.edge_count < need:
        raise HypothesisViolation(
            f"census needs e(g) >= (1+eps')n^2/2 = {need:.1f}, got {g.edge_count}"
        )
    l_max = int(eps_prime * n / 8)
    rows = []
    for l in range(0, l_max + 1, 2):
        rows.append(
            CensusRow(l, count_shortcuts(g, l), lemma1_threshold(eps_prime, n))
        )
    return CensusReport(n, eps_prime, tuple(rows))


def density_bound_fn(eps: float) -> float:
    """The non-decreasing density function 4*eps^8 / 16^6."""
    return 4 * eps**8 / 16**6


# --- hypergraph probes -----------------------------------------------------

_EDGE_INDEX_CACHE: dict[int, dict[tuple[int, int], int]] = {}


def _edge_index(n: int) -> dict[tuple[int, int], int]:
    idx = _EDGE_INDEX_CACHE.get(n)
    if idx is None:
        idx = {}
        for u in range(0, 2 * n, 2):
            for v in range(1, 2 * n, 2):
                idx[(u, v)] = len(idx)
        _EDGE_INDEX_CACHE[n] = idx
    return idx


def hyperedge_array(n: int, l: int) -> np.ndarray:
    """All shortcuts of K_{n,n} as rows of 4 vertex indices of the hypergraph."""
    if n > HYPERGRAPH_CAP:
        raise ValueError(f"n={n} above hypergraph cap {HYPERGRAPH_CAP}")
    idx = _edge_index(n)
    g = complete_bipartite(n)
    rows = [
        [idx[c] for c in s.chords()] for s in enumerate_shortcuts(g, l)
    ]
    return np.array(rows, dtype=np.int64).reshape(len(rows), 4)


def hypergraph_size(n: int, l: int) -> tuple[int, int]:
    """(|V|, |E|) of the shortcut hypergraph: n^2 vertices, one hyperedge per shortcut."""
    if n > HYPERGRAPH_CAP:
        raise ValueError(f"n={n} above hypergraph cap {HYPERGRAPH_CAP}")
    if l % 2 != 0 or not 0 <= l <= n:
        raise ValueError("l must be even and in [0, n]")
    return n * n, count_shortcuts(complete_bipartite(n), l)


@dataclass(frozen=True)
class DensitySample:
    subset_size: int
    inside_count: int
    bound: float


def hypergraph_density_probe(
    n: int, l: int, eps: float, trials: int, seed: int
) -> list[DensitySample]:
    """Count hyperedges inside random vertex subsets of size ceil((1/2+eps)n^2).

    Each sample is reported against 2*f(eps)*|E|, the density guarantee the
    transference framework requires of the shortcut hypergraph; passing is
    recorded, never assumed.
    """
    H = hyperedge_array(n, l)
    total = len(H)
    bound = 2 * density_bound_fn(eps) * total
    size = int(np.ceil((0.5 + eps) * n * n))
    size = min(size, n * n)
    rng = random.Random(seed)
    out = []
    verts = list(range(n * n))
    for _ in range(trials):
        chosen = rng.sample(verts, size)
        member = np.zeros(n * n, dtype=bool)
        member[chosen] = True
        inside = int(np.all(member[H], axis=1).sum()) if total else 0
        out.append(DensitySample(size, inside, bound))
    return out


@dataclass(frozen=True)
class MomentSample:
    i: int
    q: float
    estimate: float
    denominator: float

    @property
    def implied_k(self) -> float:
        return self.estimate / self.denominator


def hypergraph_degree_moment(
    n: int, l: int, i: int, q: float, trials: int, seed: int
) -> MomentSample:
    """Monte Carlo estimate of E[sum_v deg_i(v, V_q)^2] and the implied constant K.

    deg_i(v, U) counts hyperedges through v with at least i of their other
    vertices inside U; V_q keeps each hypergraph vertex independently with
    probability q.
    """
    if i not in (1, 2, 3):
        raise ValueError("i must be 1, 2 or 3")
    if not 0.0 < q <= 1.0:
        raise ValueError("q must lie in (0, 1]")
    H = hyperedge_array(n, l)
    num_v = n * n
    total = len(H)
    rng = np.random.default_rng(seed)
    if total == 0:
        return MomentSample(i, q, 0.0, q ** (2 * i) * 1.0 / num_v)
    acc = 0.0
    n_trials = 1 if q == 1.0 else trials
    for _ in range(n_trials):
        survive = rng.random(num_v) < q
        s = survive[H]  # (M, 4) bool
        c = s.sum(axis=1)
        deg = np.zeros(num_v, dtype=np.int64)
        # for vertex v in hyperedge X: |X ∩ (U \ {v})| = c - [v in U]
        hits = (c[:, None] - s.astype(np.int64)) >= i
        for col in range(4):
            np.add.at(deg, H[:, col][hits[:, col]], 1)
        acc += float((deg.astype(np.float64) ** 2).sum())
    estimate = acc / n_trials
    denominator = q ** (2 * i) * total**2 / num_v
    return MomentSample(i, q, estimate, denominator)
