"""Static figures written next to the CSV/JSON outputs."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _figure(width=6.0, height=None):
    golden = (math.sqrt(5) - 1.0) / 2.0
    fig, ax = plt.subplots(figsize=(width, height or width * golden), facecolor="w")
    ax.tick_params(labelsize=9)
    return fig, ax


def plot_spectrum(spec, path, title=None):
    """Walsh coefficients in the complex plane (w = exp(2 pi i / 3)), sized by multiplicity."""
    re = spec.x - 0.5 * spec.y
    im = (math.sqrt(3) / 2) * spec.y
    pts, counts = np.unique(np.stack([re, im], axis=1).round(9), axis=0, return_counts=True)
    fig, ax = _figure(5.0, 5.0)
    ax.scatter(pts[:, 0], pts[:, 1], s=20 + 180 * counts / counts.max(), alpha=0.7)
    radius = 3 ** (spec.n / 2)
    t = np.linspace(0, 2 * np.pi, 256)
    ax.plot(radius * np.cos(t), radius * np.sin(t), "k--", lw=0.7, label=r"$|S|=3^{n/2}$")
    ax.set_aspect("equal")
    ax.set_xlabel("Re S(b)")
    ax.set_ylabel("Im S(b)")
    ax.set_title(title or f"Walsh spectrum, n={spec.n}")
    ax.legend(fontsize=8, loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_weight_scan(lhs, bound, path, title=None):
    """Histogram of left-hand-side values with the claimed lower bound."""
    values, counts = np.unique(np.asarray(lhs), return_counts=True)
    fig, ax = _figure()
    ax.bar(values, counts, width=0.8, color="#4c72b0")
    ax.axvline(bound - 0.5, color="r", lw=1.2, label=f"bound = {bound}")
    ax.set_yscale("log")
    ax.set_xlabel("left-hand side")
    ax.set_ylabel("count")
    ax.set_title(title or "weight inequality scan")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
