"""Figure rendering for the report path.

Each figure is built from the same rows that land in the delimited
output, so the pictures never disagree with the files.  Rendering is
headless (Agg) and writes PNGs next to the CSVs.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _save(fig, out_dir: str, name: str) -> str:
    path = os.path.join(out_dir, name)
    fig.savefig(path, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_charfn(rows, out_dir: str, sigma: float) -> str:
    models = sorted({r[0] for r in rows})
    fig, axes = plt.subplots(2, 2, figsize=(9.0, 6.5), sharex=True)
    for ax, model in zip(axes.ravel(), models):
        sub = [r for r in rows if r[0] == model]
        cases = np.array([r[1] for r in sub])
        dev = np.array(
            [abs(complex(r[3], r[4]) - complex(r[5], r[6])) for r in sub]
        )
        stderr = np.array([r[7] for r in sub])
        ratio = np.where(stderr > 0, dev / np.where(stderr > 0, stderr, 1.0), 0.0)
        ax.bar(cases, ratio, color="#4878a8", width=0.7)
        ax.axhline(sigma, color="#b04030", linestyle="--", linewidth=1.0)
        ax.set_title(model, fontsize=10)
        ax.set_ylabel("|mc - analytic| / stderr")
    for ax in axes[-1]:
        ax.set_xlabel("case")
    fig.suptitle("Empirical characteristic function deviations")
    fig.tight_layout()
    return _save(fig, out_dir, "charfn.png")


def plot_residuals(rows, out_dir: str) -> str:
    budgets = [r[0] for r in rows]
    residuals = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.loglog(budgets, residuals, "o-", color="#4878a8")
    ax.axhline(0.05, color="#b04030", linestyle="--", linewidth=1.0, label="target 0.05")
    ax.set_xlabel("frequency budget J")
    ax.set_ylabel("relative residual")
    ax.set_title("Half-space indicator vs exponential span")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, out_dir, "residuals.png")


def plot_discriminator(rows, out_dir: str) -> str:
    coords = [r[0] for r in rows]
    gaps = [r[1] for r in rows]
    expected = [r[2] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.semilogy(coords, expected, "-", color="#704888", label="2 * 2**-n * delta")
    ax.semilogy(coords, gaps, "o", color="#4878a8", label="detected gap")
    ax.set_xlabel("shifted coordinate n")
    ax.set_ylabel("exponent gap")
    ax.set_title("Profile discrimination, one coordinate shifted by 0.25")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, out_dir, "discriminator.png")


def plot_skellam_pmf(rows, out_dir: str) -> str:
    ks = [r[0] for r in rows]
    pmf = [r[1] for r in rows]
    conv = [r[2] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.vlines(ks, 0.0, pmf, color="#4878a8", linewidth=2.0, label="Bessel series")
    ax.plot(ks, conv, "o", color="#b04030", markersize=4, label="Poisson convolution")
    ax.set_xlabel("k")
    ax.set_ylabel("P(X = k)")
    ax.set_title("First-coordinate difference pmf")
    ax.legend()
    ax.grid(True, alpha=0.3)
    return _save(fig, out_dir, "skellam_pmf.png")


def render_plots(plots: dict, out_dir: str, sigma: float) -> list[str]:
    """Render every figure whose data is present; return written paths."""
    written = []
    if "charfn" in plots:
        written.append(plot_charfn(plots["charfn"][1], out_dir, sigma))
    if "residuals" in plots:
        written.append(plot_residuals(plots["residuals"][1], out_dir))
    if "discriminator" in plots:
        written.append(plot_discriminator(plots["discriminator"][1], out_dir))
    if "skellam_pmf" in plots:
        written.append(plot_skellam_pmf(plots["skellam_pmf"][1], out_dir))
    return written
