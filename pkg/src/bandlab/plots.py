"""Optional SVG figures drawn from the same data as the CSV results."""

from __future__ import annotations

from pathlib import Path

import numpy as np


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # fixed metadata keeps the SVG bytes reproducible
    plt.rcParams["svg.hashsalt"] = "bandlab"
    return plt


def write_plot(plot, out: Path, cfg) -> str:
    """Render ``(kind, data)`` to ``plot.svg`` in ``out`` and return the file name."""
    kind, data = plot
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    if kind == "density":
        from .analytic import rho_sc

        ax.bar(data.centers, data.density, width=np.diff(data.edges), color="0.75", label="empirical")
        x = np.linspace(-2, 2, 401)
        ax.plot(x, [rho_sc(e) for e in x], "k-", label="semicircle")
        ax.set_xlabel("E")
        ax.set_ylabel("density")
    elif kind == "f2":
        from .analytic import sine_kernel_r2

        rows = np.array([r[:5] for r in data], dtype=float)
        ax.errorbar(rows[:, 0], rows[:, 1], yerr=rows[:, 2], fmt="o", label="Monte Carlo")
        ax.plot(rows[:, 0], rows[:, 3], "s--", label=f"smoothed limit, eps={cfg.eps:g}")
        d = np.linspace(1e-3, max(rows[:, 0]) * 1.05, 300)
        ax.plot(d, sine_kernel_r2(d), "k-", label="sine kernel")
        ax.set_xlabel("xi1 - xi2")
        ax.set_ylabel("F2")
    elif kind == "crossover":
        ratios = sorted({r["ratio"] for r in data}, reverse=True)
        deltas = sorted({r["delta"] for r in data})
        z = np.array([[next(r["zscore"] for r in data if r["ratio"] == q and r["delta"] == d) for q in ratios] for d in deltas])
        im = ax.imshow(z, aspect="auto", cmap="viridis")
        ax.set_xticks(range(len(ratios)), [f"{q:g}" for q in ratios])
        ax.set_yticks(range(len(deltas)), [f"{d:g}" for d in deltas])
        ax.set_xlabel("W/n")
        ax.set_ylabel("xi1 - xi2")
        fig.colorbar(im, ax=ax, label="|z|")
    else:
        raise ValueError(f"unknown plot kind {kind!r}")
    if kind != "crossover":
        ax.legend()
    fig.tight_layout()
    name = "plot.svg"
    fig.savefig(out / name, format="svg", metadata={"Date": None})
    plt.close(fig)
    return name
