"""Figure rendering for the CLI report paths.

Each report command writes a PNG next to its delimited output: the
convergence trace, the per-term expectation breakdown, and the
dissociation-style comparison table. matplotlib is imported lazily so
library users who never plot do not pay for it.
"""

from __future__ import annotations

import math


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def save_trace_figure(path, iterations, totals, bests, warmup: int, title: str = ""):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.plot(iterations, totals, ".", ms=2.5, color="#92b4d4", label="evaluation")
    ax.plot(iterations, bests, "-", lw=1.8, color="#c23b22", label="best so far")
    if warmup > 0:
        ax.axvspan(0, warmup, color="0.88", zorder=0, label="warmup")
    ax.set_xlabel("evaluation")
    ax.set_ylabel("objective value")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize=9)
    ax.margins(x=0.01)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_terms_figure(path, labels, columns: dict, group_sizes=None, title: str = ""):
    """Per-term expectations; ``columns`` maps a method name to values."""
    plt = _pyplot()
    x = range(len(labels))
    fig, ax = plt.subplots(figsize=(max(7, 0.22 * len(labels) + 2), 4.2))
    markers = {"cafqa": "x", "hf": "o", "exact": "s"}
    colors = {"cafqa": "#c23b22", "hf": "#1f5fa6", "exact": "#2e8b57"}
    for method, values in columns.items():
        ax.plot(
            x,
            values,
            markers.get(method, "d"),
            ms=5,
            ls="none",
            color=colors.get(method, "0.3"),
            label=method,
            alpha=0.85,
        )
    if group_sizes:
        edge = 0
        for size in group_sizes[:-1]:
            edge += size
            ax.axvline(edge - 0.5, color="0.8", lw=0.8, ls="--")
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_ylim(-1.1, 1.1)
    ax.set_xlabel("Pauli term")
    ax.set_ylabel("expectation value")
    if len(labels) <= 40:
        ax.set_xticks(list(x))
        ax.set_xticklabels(labels, rotation=90, fontsize=7)
    if title:
        ax.set_title(title)
    ax.legend(loc="lower left", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_compare_figure(path, rows, title: str = ""):
    """Energy / error / recovered-correlation panels over a sweep.

    ``rows`` are dicts with keys bond_length, e_exact, e_hf, e_cafqa,
    recovered_pct (values may be None).
    """
    plt = _pyplot()
    ok = [r for r in rows if r.get("e_cafqa") is not None]
    xs = [
        r["bond_length"] if r.get("bond_length") is not None else i
        for i, r in enumerate(ok)
    ]
    fig, axes = plt.subplots(3, 1, figsize=(7, 9), sharex=True)

    series = [("e_exact", "exact", "#2e8b57"), ("e_hf", "HF", "#1f5fa6"),
              ("e_cafqa", "clifford search", "#c23b22")]
    for key, label, color in series:
        pts = [(x, r[key]) for x, r in zip(xs, ok) if r.get(key) is not None]
        if pts:
            axes[0].plot(*zip(*pts), "o-", ms=4, color=color, label=label)
    axes[0].set_ylabel("energy (Ha)")
    axes[0].legend(fontsize=9)

    for key, label, color in [("e_hf", "HF", "#1f5fa6"), ("e_cafqa", "clifford search", "#c23b22")]:
        pts = [
            (x, abs(r[key] - r["e_exact"]))
            for x, r in zip(xs, ok)
            if r.get(key) is not None and r.get("e_exact") is not None
        ]
        if pts:
            axes[1].semilogy(*zip(*pts), "o-", ms=4, color=color, label=label)
    axes[1].axhspan(1e-12, 1.6e-3, color="#ffd9a0", alpha=0.5, label="chemical accuracy")
    axes[1].set_ylabel("|error| (Ha)")
    axes[1].legend(fontsize=9)

    pts = [
        (x, r["recovered_pct"])
        for x, r in zip(xs, ok)
        if r.get("recovered_pct") is not None and math.isfinite(r["recovered_pct"])
    ]
    if pts:
        axes[2].plot(*zip(*pts), "o-", ms=4, color="#c23b22")
    axes[2].set_ylabel("correlation recovered (%)")
    axes[2].set_xlabel("bond length (angstrom)")
    axes[2].set_ylim(-5, 105)

    if title:
        axes[0].set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
