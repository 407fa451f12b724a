"""Figure rendering for CLI reports (Agg backend, files only)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def line_plot(path, x, series: dict, xlabel, ylabel, title=None, logx=False, logy=False):
    """One figure with a line per entry of ``series`` (label -> y values)."""
    fig, ax = plt.subplots(figsize=(6, 4), dpi=120)
    for label, y in series.items():
        ax.plot(x, y, label=label, lw=1.4)
    if logx:
        ax.set_xscale("log")
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(series) > 1:
        ax.legend(frameon=False)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def carleman_plot(path, m, growth, partial_sums, title=None):
    """Growth a_m and partial Carleman sums side by side."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6), dpi=120)
    ax1.plot(m, growth, "o-", ms=3)
    ax1.set_xscale("log")
    ax1.set_yscale("log")
    ax1.set_xlabel("m")
    ax1.set_ylabel(r"$\|\Delta^m f\|^{1/(2m)}$")
    ax2.plot(m, partial_sums, "o-", ms=3, color="C1")
    ax2.set_xlabel("M")
    ax2.set_ylabel(r"$S_M$")
    for ax in (ax1, ax2):
        ax.grid(alpha=0.3)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
