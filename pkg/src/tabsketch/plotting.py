"""Figure rendering for the CLI report paths.

Every renderer takes already-computed rows and writes one PNG; nothing
here recomputes statistics. The Agg backend is forced so reports render
on headless machines.
"""

from __future__ import annotations

from collections import Counter

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def render_bias_figure(rows, path) -> None:
    """Implied-bias curves per family with interval whiskers.

    ``rows`` are dicts with family, n, implied_bias, implied_bias_lo,
    implied_bias_hi.
    """
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for family in sorted({r["family"] for r in rows}):
        cells = sorted((r["n"], r) for r in rows if r["family"] == family)
        ns = [n for n, _ in cells]
        mid = [r["implied_bias"] for _, r in cells]
        lo = [r["implied_bias"] - r["implied_bias_lo"] for _, r in cells]
        hi = [r["implied_bias_hi"] - r["implied_bias"] for _, r in cells]
        ax.errorbar(ns, mid, yerr=[lo, hi], marker="o", capsize=3, label=family)
    ax.axhline(0.0, color="black", linewidth=0.8, linestyle=":")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("set size n")
    ax.set_ylabel("implied bias (n+1)p - 1")
    ax.set_title("Minwise bias by family")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_similarity_figure(rows, path) -> None:
    """Estimated vs exact Jaccard scatter with the y=x reference."""
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    exact = [r["exact"] for r in rows]
    est = [r["estimate"] for r in rows]
    ax.plot([0, 1], [0, 1], color="gray", linewidth=0.8, linestyle="--")
    ax.scatter(exact, est, s=18, alpha=0.8)
    ax.set_xlim(-0.02, 1.02)
    ax.set_ylim(-0.02, 1.02)
    ax.set_xlabel("exact Jaccard")
    ax.set_ylabel("sketch estimate")
    ax.set_title("Similarity estimates vs ground truth")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_groups_figure(group_sizes, max_sizes, path) -> None:
    """Group-size distribution for one seed plus the sweep of maxima."""
    fig, axes = plt.subplots(1, 2, figsize=(9.5, 4.0))
    size_counts = Counter(group_sizes)
    axes[0].bar(sorted(size_counts), [size_counts[s] for s in sorted(size_counts)])
    axes[0].set_xlabel("group size")
    axes[0].set_ylabel("groups")
    axes[0].set_title("Twisted group sizes (first seed)")
    if max_sizes:
        max_counts = Counter(max_sizes)
        axes[1].bar(sorted(max_counts), [max_counts[s] for s in sorted(max_counts)],
                    color="tab:orange")
        axes[1].set_xlabel("max group size")
        axes[1].set_ylabel("seeds")
        axes[1].set_title(f"Max group size over {len(max_sizes)} seeds")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
