"""Figures for benchmark reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import matplotlib.ticker as ticker  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "savefig.dpi": 150,
}


def plot_bench(result, path, title=None):
    """Log-log plot of combine calls against bag size.

    Greedy and oracle rows are drawn as separate series, with the fitted
    greedy power law as a dashed line. The format follows the file suffix.
    """
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3.2))
        g = result.greedy()
        o = result.oracle()
        ns = np.array([r.n for r in g], dtype=float)
        fitted = bool(np.isfinite(result.exponent))
        label = "greedy (slope %.2f)" % result.exponent if fitted \
            else "greedy"
        ax.loglog(ns, [r.combine_calls for r in g], "o-", color="C0",
                  label=label)
        if fitted:
            calls = np.array([r.combine_calls for r in g], dtype=float)
            slope, icept = np.polyfit(np.log(ns), np.log(calls), 1)
            ax.loglog(ns, np.exp(icept) * ns ** slope, "--", color="C0",
                      linewidth=0.8)
        if o:
            ax.loglog([r.n for r in o], [r.combine_calls for r in o], "s-",
                      color="C3", label="bag chart")
        ticks = sorted({r.n for r in result.rows})
        ax.set_xticks(ticks[::-(-len(ticks) // 7)])
        ax.xaxis.set_major_formatter(ticker.ScalarFormatter())
        ax.xaxis.set_minor_formatter(ticker.NullFormatter())
        ax.set_xlabel("bag size n")
        ax.set_ylabel("combine calls")
        ax.set_title(title or result.template.value)
        ax.legend(loc="upper left")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
