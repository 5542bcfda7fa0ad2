"""Matplotlib renderings of experiment reports.

Figures are an optional companion to the delimited output: every renderer
takes already-computed records and writes a PNG next to the CSV/JSON
artifact.  The data files remain the contract; nothing here feeds back into
any computation.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_sweep(records, path: str) -> None:
    """Edge counts per trial with verdict markers for a resilience sweep."""
    trials = [r.trial for r in records]
    sampled = [r.edges_sampled for r in records]
    final = [r.edges_final for r in records]
    colors = ["tab:green" if r.verdict == "bipancyclic" else "tab:red" for r in records]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(trials, sampled, "o-", color="tab:blue", label="sampled edges", alpha=0.7)
    ax.scatter(trials, final, c=colors, zorder=3, label="final edges (green = bipancyclic)")
    ax.set_xlabel("trial")
    ax.set_ylabel("edges")
    ax.set_title(f"resilience sweep, n={records[0].n}, p={records[0].p:.4g}")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def render_audit(bad_counts, bound: float, path: str) -> None:
    """Bad-direction counts across trials against the n^(5/6) bound."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(len(bad_counts)), bad_counts, color="tab:blue")
    ax.axhline(bound, color="tab:red", linestyle="--", label=f"bound {bound:.1f}")
    ax.set_xlabel("trial")
    ax.set_ylabel("directions failing the window test")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def render_tightness(fractions, c4_after, path: str) -> None:
    """Deleted-edge fraction and residual 4-cycle count per trial."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    ax1.bar(range(len(fractions)), [f * 100 for f in fractions], color="tab:orange")
    ax1.set_xlabel("trial")
    ax1.set_ylabel("deleted edges (%)")
    ax2.bar(range(len(c4_after)), c4_after, color="tab:purple")
    ax2.set_xlabel("trial")
    ax2.set_ylabel("4-cycles after deletion")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def render_chernoff(rows, path: str) -> None:
    """Observed tail frequency vs. the concentration bound, log scale."""
    eps = [r.eps for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(eps, [max(r.observed_freq, 1e-10) for r in rows], "o-", label="observed")
    ax.semilogy(eps, [r.bound + r.slack for r in rows], "s--", label="bound + slack")
    ax.set_xlabel("relative deviation")
    ax.set_ylabel("tail frequency")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def render_spectrum(report, path: str) -> None:
    """Presence/absence strip over the even lengths of a spectrum report."""
    lengths = sorted(report.statuses)
    color_of = {"certified": "tab:green", "absent": "tab:red", "unknown": "tab:gray"}
    colors = [color_of[report.statuses[t]] for t in lengths]
    fig, ax = plt.subplots(figsize=(8, 1.8))
    ax.bar(lengths, [1] * len(lengths), width=1.6, color=colors)
    ax.set_yticks([])
    ax.set_xlabel("cycle length (green certified / red absent / gray unknown)")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
