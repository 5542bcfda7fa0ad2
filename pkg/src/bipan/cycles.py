"""Cycle certificates, Hamiltonicity, and the even-cycle spectrum engine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bigraph import BalancedBipartiteGraph, ParityPermutation

BRUTE_FORCE_CAP = 7
EXHAUSTIVE_SPECTRUM_CAP = 6
DEFAULT_DFS_BUDGET = 10**6


@dataclass(frozen=True)
class CycleCertificate:
    """An explicit vertex sequence witnessing a cycle (closed cyclically)."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def relabel(self, perm: ParityPermutation) -> "CycleCertificate":
        return CycleCertificate(tuple(perm(v) for v in self.vertices))

    def serialize(self) -> str:
        return f"cycle {self.length} " + " ".join(str(v) for v in self.vertices)


def standard_hamilton(n: int) -> CycleCertificate:
    """The canonical Hamilton cycle 0,1,...,2n-1."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return CycleCertificate(tuple(range(2 * n)))


def validate_cycle(
    g: BalancedBipartiteGraph, c: CycleCertificate
) -> tuple[bool, str]:
    """Check a certificate against g; returns (ok, reason)."""
    vs = c.vertices
    t = len(vs)
    if t % 2 != 0:
        return False, f"odd length {t}"
    if t < 4:
        return False, f"length {t} below 4"
    if len(set(vs)) != t:
        return False, "repeated vertex"
    two_n = 2 * g.n
    for v in vs:
        if not 0 <= v < two_n:
            return False, f"vertex {v} out of range"
    for a, b in zip(vs, vs[1:] + vs[:1]):
        if (a ^ b) & 1 == 0:
            return False, f"parity clash between {a} and {b}"
        if not g.has_edge(a, b):
            return False, f"missing edge {{{a},{b}}}"
    return True, "ok"


def find_cycle_of_length(
    g: BalancedBipartiteGraph,
    t: int,
    budget: int = DEFAULT_DFS_BUDGET,
) -> tuple[str, Optional[CycleCertificate], int]:
    """Backtracking search for a simple cycle of exactly length t.

    Returns (status, certificate, steps) where status is 'found', 'absent'
    (search space exhausted -- definitive) or 'unknown' (budget ran out).
    Neighbors are explored in ascending label order; the cycle is anchored at
    its smallest vertex, so the search is complete and deterministic.
    """
    if t % 2 != 0 or not 4 <= t <= 2 * g.n:
        raise ValueError(f"target length {t} must be even and in [4, {2 * g.n}]")
    adj = g.adjacency
    two_n = 2 * g.n
    steps = 0
    path = []

    for start in range(two_n):
        # cycle anchored at its minimum vertex: only use vertices > start
        allowed = ~((1 << (start + 1)) - 1)
        path = [start]
        used = 1 << start
        # stack of (vertex, remaining-neighbor bitmask)
        stack = [(start, adj[start] & allowed)]
        while stack:
            if steps >= budget:
                return "unknown", None, steps
            v, remaining = stack[-1]
            if len(path) == t:
                if (adj[v] >> start) & 1:
                    return "found", CycleCertificate(tuple(path)), steps
                # backtrack
                stack.pop()
                used ^= 1 << path.pop()
                continue
            cand = remaining & ~used
            if cand == 0:
                stack.pop()
                used ^= 1 << path.pop()
                continue
            low = cand & -cand
            w = low.bit_length() - 1
            stack[-1] = (v, remaining ^ low)
            steps += 1
            path.append(w)
            used |= low
            stack.append((w, adj[w] & allowed))
    return "absent", None, steps


def hamiltonian_bruteforce(
    g: BalancedBipartiteGraph, cap: int = BRUTE_FORCE_CAP
) -> bool:
    """Definitive spanning-cycle test by backtracking; only for n <= cap."""
    if g.n > cap:
        raise ValueError(f"n={g.n} above brute-force cap {cap}")
    two_n = 2 * g.n
    adj = g.adjacency
    # a spanning cycle needs minimum degree 2
    if any(adj[v].bit_count() < 2 for v in range(two_n)):
        return False
    status, _, _ = find_cycle_of_length(g, two_n, budget=1 << 62)
    return status == "found"


def canonicalize_hamilton(
    g: BalancedBipartiteGraph, hamilton: CycleCertificate
) -> tuple[BalancedBipartiteGraph, ParityPermutation]:
    """Relabel g so the given Hamilton cycle becomes 0,1,...,2n-1.

    Returns (relabeled graph, permutation original -> canonical).  The cycle
    alternates classes, so an allowable relabeling always exists (rotating by
    one if the cycle starts on an odd label).
    """
    ok, reason = validate_cycle(g, hamilton)
    if not ok or hamilton.length != 2 * g.n:
        raise ValueError(f"invalid Hamilton cycle: {reason}")
    vs = hamilton.vertices
    if vs[0] % 2 != 0:
        vs = vs[1:] + vs[:1]
    mapping = [0] * (2 * g.n)
    for pos, v in enumerate(vs):
        mapping[v] = pos
    perm = ParityPermutation(tuple(mapping))
    return perm.apply(g), perm


@dataclass
class SpectrumReport:
    """Per-even-length cycle status for one inspected graph."""

    n: int
    mode: str
    statuses: dict[int, str] = field(default_factory=dict)
    certificates: dict[int, CycleCertificate] = field(default_factory=dict)
    budget_used: int = 0

    def status(self, t: int) -> str:
        return self.statuses[t]

    @property
    def missing(self) -> list[int]:
        return sorted(t for t, s in self.statuses.items() if s == "absent")

    @property
    def unknown(self) -> list[int]:
        return sorted(t for t, s in self.statuses.items() if s == "unknown")

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "lengths": {str(t): self.statuses[t] for t in sorted(self.statuses)},
            "budget_used": self.budget_used,
        }

    def _certify(self, g: BalancedBipartiteGraph, t: int, cert: CycleCertificate):
        ok, reason = validate_cycle(g, cert)
        if not ok or cert.length != t:
            raise AssertionError(
                f"internal: bad certificate for length {t}: {reason}"
            )
        self.statuses[t] = "certified"
        self.certificates[t] = cert


def even_cycle_spectrum(
    g: BalancedBipartiteGraph,
    hamilton: Optional[CycleCertificate] = None,
    mode: Optional[str] = None,
    budget: int = DEFAULT_DFS_BUDGET,
) -> SpectrumReport:
    """Determine which even cycle lengths in [4, 2n] are present in g.

    Exhaustive mode (n <= 6) gives definitive certified/absent verdicts via
    complete search.  Certificate mode relabels along the supplied Hamilton
    cycle and tries crossing splices, then shortcut splices, then bounded
    backtracking; exhausted budgets yield 'unknown'.
    """
    if mode is None:
        mode = "exhaustive" if g.n <= EXHAUSTIVE_SPECTRUM_CAP else "certificate"
    if mode == "exhaustive":
        if g.n > EXHAUSTIVE_SPECTRUM_CAP:
            raise ValueError(
                f"exhaustive mode capped at n={EXHAUSTIVE_SPECTRUM_CAP}"
            )
        if hamilton is not None:
            ok, reason = validate_cycle(g, hamilton)
            if not ok:
                raise ValueError(f"invalid hamilton certificate: {reason}")
        return _spectrum_exhaustive(g)
    if mode != "certificate":
        raise ValueError(f"unknown mode {mode!r}")
    if hamilton is None:
        raise ValueError("certificate mode requires a Hamilton cycle")
    return _spectrum_certificate(g, hamilton, budget)


def _spectrum_exhaustive(g: BalancedBipartiteGraph) -> SpectrumReport:
    report = SpectrumReport(n=g.n, mode="exhaustive")
    for t in range(4, 2 * g.n + 1, 2):
        status, cert, steps = find_cycle_of_length(g, t, budget=1 << 62)
        report.budget_used += steps
        if status == "found":
            report._certify(g, t, cert)
        else:
            report.statuses[t] = "absent"
    return report


def _spectrum_certificate(
    g: BalancedBipartiteGraph, hamilton: CycleCertificate, budget: int
) -> SpectrumReport:
    from . import directions, shortcuts  # deferred: avoids an import cycle

    gc, perm = canonicalize_hamilton(g, hamilton)
    inv = perm.inverse()
    n = g.n
    report = SpectrumReport(n=n, mode="certificate")

    present_by_dir = directions.present_chords_by_direction(gc)

    for t in range(4, 2 * n + 1, 2):
        if t == 2 * n:
            report._certify(g, t, standard_hamilton(n).relabel(inv))
            continue
        # (a) crossing splice with l = t - 2
        found = directions.search_crossing_splice(
            gc, t - 2, present_by_dir=present_by_dir
        )
        if found is not None:
            short, long_ = found
            cert = short if short.length == t else long_
            report._certify(g, t, cert.relabel(inv))
            continue
        # (b) shortcut splice: l = t-8 (short form) or l = 2n-t (long form)
        cert = None
        for l, pick_short in ((t - 8, True), (2 * n - t, False)):
            if not (0 <= l <= n and l % 2 == 0):
                continue
            s = shortcuts.find_first_shortcut(gc, l)
            if s is None:
                continue
            short, long_ = shortcuts.splice_shortcut(n, s)
            cand = short if pick_short else long_
            if cand.length == t:
                cert = cand
                break
        if cert is not None:
            report._certify(g, t, cert.relabel(inv))
            continue
        # (c) bounded backtracking on the original graph
        status, found_cert, steps = find_cycle_of_length(g, t, budget=budget)
        report.budget_used += steps
        if status == "found":
            report._certify(g, t, found_cert)
        else:
            report.statuses[t] = status
    return report


@dataclass(frozen=True)
class BipancyclicVerdict:
    verdict: str  # 'yes', 'no', 'unknown'
    missing: tuple[int, ...]
    unknown: tuple[int, ...]
    report: SpectrumReport


def is_bipancyclic(
    g: BalancedBipartiteGraph,
    hamilton: Optional[CycleCertificate] = None,
    mode: Optional[str] = None,
    budget: int = DEFAULT_DFS_BUDGET,
) -> BipancyclicVerdict:
    """Yes iff every even length in [4, 2n] is certified present."""
    report = even_cycle_spectrum(g, hamilton, mode, budget)
    missing = tuple(report.missing)
    unknown = tuple(report.unknown)
    if missing:
        verdict = "no"
    elif unknown:
        verdict = "unknown"
    else:
        verdict = "yes"
    return BipancyclicVerdict(verdict, missing, unknown, report)
