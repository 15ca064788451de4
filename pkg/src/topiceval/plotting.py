"""Figure rendering for report output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .records import EncoderSummary


def render_coherence_figure(path: str | Path, summaries: list[EncoderSummary]) -> None:
    """Mean coherence versus model size (log x), one error bar per encoder."""
    fig, ax = plt.subplots(figsize=(8, 5))
    params = [s.params for s in summaries]
    means = [s.mean_coherence for s in summaries]
    stds = [s.std_coherence for s in summaries]
    ax.errorbar(params, means, yerr=stds, fmt="o", color="black", capsize=4)
    for s in summaries:
        ax.annotate(
            s.encoder,
            (s.params, s.mean_coherence),
            textcoords="offset points",
            xytext=(6, 6),
            fontsize=8,
        )
    ax.set_xscale("log")
    ax.set_xlabel("model size (parameters)")
    ax.set_ylabel("mean topic coherence")
    ax.set_ylim(0.0, 1.0)
    ax.grid(axis="y", alpha=0.4)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
