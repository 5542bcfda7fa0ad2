"""Direction classes E_i, crossings, goodness audits, and the close-crossing lemma checker.

The n directions partition E(K_{n,n}); direction i holds the n edges
{x,y} with x+y = 2i+1 (mod 2n), totally ordered by distance from the arc
between i and i+1.  Crossing chord pairs from directions i and i+l/2 splice
into cycles of lengths l+2 and 2n-l+2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bigraph import BalancedBipartiteGraph, circ_dist, norm_edge
from .cycles import CycleCertificate


@dataclass(frozen=True)
class DirectionView:
    """The ordered edge class E_i: rank t holds {i-t, i+1+t} (mod 2n)."""

    n: int
    i: int
    edges: tuple[tuple[int, int], ...]

    def rank_of(self, e: tuple[int, int]) -> int:
        return self.edges.index(norm_edge(*e))


def direction_of(n: int, e: tuple[int, int]) -> int:
    """The direction index i with x + y = 2i+1 (mod 2n)."""
    u, v = e
    s = (u + v) % (2 * n)
    if s % 2 == 0:
        raise ValueError(f"{e} is not a bipartite edge")
    return ((s - 1) // 2) % n


def direction_edges(n: int, i: int) -> DirectionView:
    if not 0 <= i <= n - 1:
        raise ValueError(f"direction index {i} out of range [0, {n - 1}]")
    two_n = 2 * n
    edges = tuple(
        norm_edge((i - t) % two_n, (i + 1 + t) % two_n) for t in range(n)
    )
    return DirectionView(n, i, edges)


@dataclass(frozen=True)
class GoodnessParams:
    """Window geometry and density parameters for direction goodness."""

    beta: float
    eps_prime: float
    p: float

    def __post_init__(self) -> None:
        if not 0.0 < self.beta < 1 / 6:
            raise ValueError("beta must lie in (0, 1/6)")
        if not 0.0 < self.eps_prime < 1 / 6:
            raise ValueError("eps_prime must lie in (0, 1/6)")
        if not 0.0 < self.p <= 1.0:
            raise ValueError("p must lie in (0, 1]")

    def window(self, n: int) -> int:
        """w = round(2*beta*n); requires w >= 1 and 2w <= n."""
        w = round(2 * self.beta * n)
        if w < 1 or 2 * w > n:
            raise ValueError(f"window w={w} infeasible for n={n}")
        return w


def interval_edges(
    n: int, i: int, k: int, params: GoodnessParams
) -> tuple[tuple[int, int], ...]:
    """The k-th window of w consecutive edges of E_i (k is 1-indexed)."""
    w = params.window(n)
    if not 1 <= k <= n - w + 1:
        raise ValueError(f"window start k={k} out of range [1, {n - w + 1}]")
    view = direction_edges(n, i)
    return view.edges[k - 1 : k - 1 + w]


def middle_edges(
    n: int, i: int, params: GoodnessParams
) -> tuple[tuple[int, int], ...]:
    """E_i without the leftmost and rightmost windows: ranks w+1 .. n-w."""
    w = params.window(n)
    view = direction_edges(n, i)
    return view.edges[w : n - w]


def _is_chord(n: int, e: tuple[int, int]) -> bool:
    d = (e[0] - e[1]) % (2 * n)
    return d != 1 and d != 2 * n - 1


def is_crossing(n: int, e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    """Chords whose four endpoints are distinct and alternate around the cycle."""
    two_n = 2 * n
    x1, y1 = e1
    x2, y2 = e2
    if len({x1, y1, x2, y2}) != 4:
        return False
    if not (_is_chord(n, e1) and _is_chord(n, e2)):
        return False
    a = (y1 - x1) % two_n
    u = (x2 - x1) % two_n
    v = (y2 - x1) % two_n
    return (0 < u < a) != (0 < v < a)


def is_close_crossing(
    n: int, e1: tuple[int, int], e2: tuple[int, int], params: GoodnessParams
) -> bool:
    """Crossing with some pair of endpoints within circular distance w."""
    if not is_crossing(n, e1, e2):
        return False
    w = params.window(n)
    two_n = 2 * n
    x1, y1 = e1
    x2, y2 = e2
    return (
        min(
            circ_dist(x1 - x2, two_n),
            circ_dist(x1 - y2, two_n),
            circ_dist(y1 - x2, two_n),
            circ_dist(y1 - y2, two_n),
        )
        <= w
    )


def splice_crossing(
    n: int, e1: tuple[int, int], e2: tuple[int, int], l: int
) -> tuple[CycleCertificate, CycleCertificate]:
    """The two cycles of lengths (l+2, 2n-l+2) in C_{2n} plus a crossing pair.

    e1 must lie in direction i and e2 in direction i + l/2 (either sign of the
    offset is accepted; the unordered pair determines the same two cycles).
    """
    two_n = 2 * n
    if l % 2 != 0 or not 2 <= l <= two_n - 2:
        raise ValueError(f"l={l} must be even and in [2, {two_n - 2}]")
    if not is_crossing(n, e1, e2):
        raise ValueError(f"{e1} and {e2} are not crossing chords")
    d1, d2 = direction_of(n, e1), direction_of(n, e2)
    half = (l // 2) % n
    if (d2 - d1) % n not in (half, (-half) % n):
        raise ValueError(
            f"direction offset {(d2 - d1) % n} does not match l/2 = {l // 2}"
        )
    # normalize endpoints: offsets from a satisfy 0 < b < c < d around the
    # circle, with chords {a, c} and {b, d} (alternation puts exactly one
    # endpoint of e2 on each arc of e1)
    a, c = e1
    u = (e2[0] - a) % two_n
    v = (e2[1] - a) % two_n
    b = (a + min(u, v)) % two_n
    d = (a + max(u, v)) % two_n

    def arc(p: int, q: int, step: int) -> list[int]:
        out = [p % two_n]
        x = p
        while x % two_n != q % two_n:
            x += step
            out.append(x % two_n)
        return out

    # cycle 1: a -(chord)- c -(arc fwd)- d -(chord)- b -(arc back)- a
    cyc1 = [a] + arc(c, d, +1) + arc(b, (a + 1) % two_n, -1)
    # cycle 2: a -(chord)- c -(arc back)- b -(chord)- d -(arc fwd, wrap)- a
    cyc2 = [a] + arc(c, b, -1) + arc(d, (a - 1) % two_n, +1)
    c1 = CycleCertificate(tuple(cyc1))
    c2 = CycleCertificate(tuple(cyc2))
    lengths = {c1.length, c2.length}
    if lengths != {l + 2, 2 * n - l + 2}:
        raise ValueError(
            f"crossing pair yields lengths {sorted(lengths)}, "
            f"not {{{l + 2}, {2 * n - l + 2}}}: wrong l for this pair"
        )
    short, long_ = (c1, c2) if c1.length == l + 2 else (c2, c1)
    return short, long_


def present_chords_by_direction(
    g: BalancedBipartiteGraph,
) -> list[list[tuple[int, int]]]:
    """For each direction, the chords of E_i present in g (cycle edges excluded)."""
    n = g.n
    out = []
    for i in range(n):
        view = direction_edges(n, i)
        out.append(
            [
                e
                for e in view.edges
                if _is_chord(n, e) and g.has_edge(*e)
            ]
        )
    return out


def search_crossing_splice(
    g: BalancedBipartiteGraph,
    l: int,
    present_by_dir: Optional[list[list[tuple[int, int]]]] = None,
    pair_budget: int = 500_000,
) -> Optional[tuple[CycleCertificate, CycleCertificate]]:
    """Find any crossing pair between directions i and i+l/2 in g and splice it.

    g must be canonically labeled with C_{2n} present.  Returns the (l+2,
    2n-l+2) certificate pair, or None if no crossing is found within budget.
    """
    n = g.n
    if l % 2 != 0 or not 2 <= l <= 2 * n - 2:
        raise ValueError(f"l={l} must be even and in [2, {2 * n - 2}]")
    if present_by_dir is None:
        present_by_dir = present_chords_by_direction(g)
    half = (l // 2) % n
    checked = 0
    for i in range(n):
        j = (i + half) % n
        if j == i:
            continue
        for e1 in present_by_dir[i]:
            for e2 in present_by_dir[j]:
                checked += 1
                if checked > pair_budget:
                    return None
                if is_crossing(n, e1, e2):
                    return splice_crossing(n, e1, e2, l)
    return None


@dataclass(frozen=True)
class GoodnessVerdict:
    good: bool
    reason: str  # 'ok', or the first violated window / middle set


def direction_goodness(
    g: BalancedBipartiteGraph, i: int, params: GoodnessParams
) -> GoodnessVerdict:
    """Check every window count and the middle-set count of E_i against density p."""
    n = g.n
    w = params.window(n)
    view = direction_edges(n, i)
    present = [1 if g.has_edge(*e) else 0 for e in view.edges]
    prefix = [0]
    for x in present:
        prefix.append(prefix[-1] + x)
    wp = w * params.p
    tol = 2 * params.eps_prime * wp
    for k in range(1, n - w + 2):
        cnt = prefix[k - 1 + w] - prefix[k - 1]
        if abs(cnt - wp) > tol:
            return GoodnessVerdict(
                False, f"window k={k}: count {cnt} vs mean {wp:.3f}"
            )
    mid = prefix[n - w] - prefix[w]
    mid_mean = (n - 2 * w) * params.p
    if abs(mid - mid_mean) > 2 * params.eps_prime * mid_mean:
        return GoodnessVerdict(
            False, f"middle set: count {mid} vs mean {mid_mean:.3f}"
        )
    return GoodnessVerdict(True, "ok")


@dataclass
class AuditReport:
    """Bad-direction census plus the optional lost-crossing counters."""

    n: int
    params: GoodnessParams
    bad_directions: tuple[int, ...]
    bound: float
    l: Optional[int] = None
    x_count: Optional[int] = None
    y_count: Optional[int] = None
    x_reference: Optional[float] = None
    y_reference: Optional[float] = None
    skipped_l_equals_n: bool = False

    @property
    def bad_count(self) -> int:
        return len(self.bad_directions)

    @property
    def within_bound(self) -> bool:
        return self.bad_count <= self.bound

    def to_json_dict(self) -> dict:
        out = {
            "n": self.n,
            "beta": self.params.beta,
            "eps_prime": self.params.eps_prime,
            "p": self.params.p,
            "bad_directions": list(self.bad_directions),
            "bad_count": self.bad_count,
            "bound": self.bound,
            "within_bound": self.within_bound,
        }
        if self.l is not None:
            out.update(
                {
                    "l": self.l,
                    "x_count": self.x_count,
                    "y_count": self.y_count,
                    "x_reference": self.x_reference,
                    "y_reference": self.y_reference,
                    "skipped_l_equals_n": self.skipped_l_equals_n,
                }
            )
        return out


def audit_directions(
    g: BalancedBipartiteGraph,
    params: GoodnessParams,
    g_sub: Optional[BalancedBipartiteGraph] = None,
    eps: Optional[float] = None,
    l: Optional[int] = None,
) -> AuditReport:
    """List the not-good directions of g and compare their number to n^(5/6).

    With g_sub and l supplied, additionally counts X (close crossings of g
    between good-direction pairs at offset l/2) and Y (those with an edge
    missing from g_sub), next to the proof's reference values.
    """
    n = g.n
    if g_sub is not None and not g_sub.edges <= g.edges:
        raise ValueError("g_sub must be a subgraph of g")
    bad = tuple(
        i for i in range(n) if not direction_goodness(g, i, params).good
    )
    report = AuditReport(n, params, bad, bound=n ** (5 / 6))
    if l is None:
        return report
    if l % 2 != 0 or not 2 <= l <= 2 * n - 2:
        raise ValueError(f"l={l} must be even and in [2, {2 * n - 2}]")
    report.l = l
    if l == n:
        # E_{i+l/2} coincides with E_{i-l/2}; the double-count-free pair
        # iteration below does not apply, so this case is left unaudited.
        report.skipped_l_equals_n = True
        return report
    good = set(range(n)) - set(bad)
    present = present_chords_by_direction(g)
    half = (l // 2) % n
    x_count = 0
    y_count = 0
    sub = g_sub if g_sub is not None else g
    for i in range(n):
        j = (i + half) % n
        if i not in good or j not in good:
            continue
        for e1 in present[i]:
            for e2 in present[j]:
                if is_close_crossing(n, e1, e2, params):
                    x_count += 1
                    if not (sub.has_edge(*e1) and sub.has_edge(*e2)):
                        y_count += 1
    report.x_count = x_count
    report.y_count = y_count
    b, ep, p = params.beta, params.eps_prime, params.p
    report.x_reference = 4 * (1 - 4 * ep - 4 * b) * b * n**3 * p**2
    if eps is not None:
        report.y_reference = (4 - 2 * eps + ep) * b * n**3 * p**2
    return report


@dataclass(frozen=True)
class Lemma5Violation:
    statement: str
    i: int
    rank: int
    detail: str


@dataclass(frozen=True)
class Lemma5Report:
    n: int
    beta: float
    l: int
    violations: tuple[Lemma5Violation, ...]

    @property
    def all_hold(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "beta": self.beta,
            "l": self.l,
            "all_hold": self.all_hold,
            "violations": [
                {
                    "statement": v.statement,
                    "direction": v.i,
                    "rank": v.rank,
                    "detail": v.detail,
                }
                for v in self.violations
            ],
        }


def _runs(sorted_ranks: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive integers, as (start, length) pairs."""
    runs = []
    for r in sorted_ranks:
        if runs and r == runs[-1][0] + runs[-1][1]:
            runs[-1] = (runs[-1][0], runs[-1][1] + 1)
        else:
            runs.append((r, 1))
    return runs


def _coverable_by_two_windows(ranks: list[int], w: int, n: int) -> bool:
    """Can the rank set be covered by two length-w windows of valid starts?"""
    if not ranks:
        return True
    rs = sorted(ranks)
    m = len(rs)
    for cut in range(m + 1):
        left = rs[:cut]
        right = rs[cut:]
        if left and left[-1] - left[0] + 1 > w:
            break
        if right and right[-1] - right[0] + 1 > w:
            continue
        return True
    return False


def _is_exact_two_windows(ranks: list[int], w: int, n: int) -> bool:
    """Is the rank set exactly a union of two length-w windows (possibly abutting)?"""
    if len(ranks) != 2 * w:
        return False
    runs = _runs(sorted(ranks))
    if len(runs) == 1:
        return runs[0][1] == 2 * w
    if len(runs) == 2:
        return runs[0][1] == w and runs[1][1] == w
    return False


def lemma5_check(n: int, params: GoodnessParams, l: int) -> Lemma5Report:
    """Exhaustively verify the close-crossing interval structure for every direction.

    (i) each edge of E_i close-crosses at most 2w edges of E_{i+l/2},
    coverable by two windows; (ii) at least n-2w edges achieve exactly 2w
    partners forming a union of two windows; (iii) those edges cover M_i.
    """
    w = params.window(n)
    l_lo = 2 * w + 1  # 4*beta*n + 1 under the w-rounding convention
    l_hi = 2 * n - 2 * w - 1
    if l % 2 != 0:
        raise ValueError("l must be even")
    if not l_lo <= l <= l_hi:
        raise ValueError(f"l={l} outside the admissible range [{l_lo}, {l_hi}]")
    half = (l // 2) % n
    violations: list[Lemma5Violation] = []
    mid_lo, mid_hi = w + 1, n - w  # 1-indexed ranks of M_i
    for i in range(n):
        view_i = direction_edges(n, i)
        j = (i + half) % n
        view_j = direction_edges(n, j)
        exact_ranks = []
        for rank1, e1 in enumerate(view_i.edges, start=1):
            if not _is_chord(n, e1):
                partners = []
            else:
                partners = [
                    rank2
                    for rank2, e2 in enumerate(view_j.edges, start=1)
                    if is_close_crossing(n, e1, e2, params)
                ]
            if len(partners) > 2 * w:
                violations.append(
                    Lemma5Violation(
                        "i", i, rank1, f"{len(partners)} partners > {2 * w}"
                    )
                )
                continue
            if not _coverable_by_two_windows(partners, w, n):
                violations.append(
                    Lemma5Violation(
                        "i", i, rank1, f"partner ranks {partners} not 2-window coverable"
                    )
                )
                continue
            if _is_exact_two_windows(partners, w, n):
                exact_ranks.append(rank1)
        if len(exact_ranks) < n - 2 * w:
            violations.append(
                Lemma5Violation(
                    "ii",
                    i,
                    0,
                    f"only {len(exact_ranks)} edges with exact 2w-window partners, "
                    f"need {n - 2 * w}",
                )
            )
        covered = set(exact_ranks)
        for rank in range(mid_lo, mid_hi + 1):
            if rank not in covered:
                violations.append(
                    Lemma5Violation(
                        "iii", i, rank, "middle edge lacks exact 2w-window partners"
                    )
                )
    return Lemma5Report(n, params.beta, l, tuple(violations))
