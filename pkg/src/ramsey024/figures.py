"""Matplotlib renderings written alongside the delimited text reports.

Every figure is a plain restatement of numbers that already appear in a
report, so nothing downstream may depend on these files.  The Agg backend
keeps things headless and the PNG metadata is pinned so reruns are
byte-stable.
"""

from __future__ import annotations

import os
from fractions import Fraction

os.environ.setdefault("MPLBACKEND", "Agg")

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .independence import union_bound
from .verifier import SweepReport

_META = {"Software": "ramsey024"}


def _bar_figure(labels: list[str], values: list[int], title: str, path: str) -> None:
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(labels) + 2.0), 3.2))
    ax.bar(range(len(labels)), values, color="#4878a8")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("count")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, metadata=_META)
    plt.close(fig)


def save_hcount_figure(report: SweepReport, path: str) -> None:
    values = sorted(report.h_counts)
    _bar_figure(
        [f"h={v}" for v in values],
        [report.h_counts[v] for v in values],
        f"induced parity edges per (k+1)-subset, k={report.k} N={report.N}",
        path,
    )


def save_structure_figure(report: SweepReport, path: str) -> None:
    labels = sorted(report.structure_counts)
    _bar_figure(
        labels,
        [report.structure_counts[s] for s in labels],
        f"link graph structure classes, k={report.k} N={report.N}",
        path,
    )


def save_alpha_figure(alphas: tuple[int, ...] | list[int], path: str) -> None:
    values = sorted(set(alphas))
    counts = [sum(1 for a in alphas if a == v) for v in values]
    _bar_figure(
        [str(v) for v in values],
        counts,
        f"independence number over {len(alphas)} trials",
        path,
    )


def save_motzkin_figure(counts: dict[int, int], d: int, path: str) -> None:
    values = sorted(counts)
    _bar_figure(
        [str(v) for v in values],
        [counts[v] for v in values],
        f"non-convex (d+2)-subsets per (d+3)-point set, d={d}",
        path,
    )


def save_bound_figure(k: int, n: int, p: Fraction, m: int, path: str) -> None:
    """log2 of the first-moment bound against log2 N."""
    xs = []
    ys = []
    lgn = n.bit_length()
    for bits in range(lgn, lgn + 24):
        N = 1 << bits
        if N < n:
            continue
        r = union_bound(k, n, N, p, m)
        xs.append(bits)
        ys.append(r.log2_value)
    fig, ax = plt.subplots(figsize=(4.8, 3.2))
    ax.plot(xs, ys, marker="o", markersize=3, color="#4878a8")
    ax.axhline(0.0, color="#a84848", linewidth=1, linestyle="--")
    ax.set_xlabel("log2 N")
    ax.set_ylabel("log2 C(N,n)(1-p)^m")
    ax.set_title(f"first-moment bound, k={k} n={n} m={m}")
    fig.tight_layout()
    fig.savefig(path, metadata=_META)
    plt.close(fig)
