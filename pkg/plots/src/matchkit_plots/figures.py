"""The nine standard charts for a benchmark sweep, from CSV input only.

This package never runs algorithms or reads instance files; it consumes the
results CSV schema

    n,c,seed,algorithm,rounds,proposals,direct_rejections,
    preemptive_rejections,total_rejections,idle_rounds,wall_time_s

plus optional per-trace final-pair curve CSVs (``round,proportion``) found
in any ``*curves*`` subdirectory.  Styling is fixed and nothing is random,
so identical inputs give identical figures.
"""

from __future__ import annotations

import glob
import math
import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
# Deterministic SVG element ids; together with a pinned Date this makes
# repeated renders of the same input byte-identical.
matplotlib.rcParams["svg.hashsalt"] = "matchkit-plots"

import matplotlib.pyplot as plt
import pandas as pd

REQUIRED_COLUMNS = [
    "n",
    "c",
    "seed",
    "algorithm",
    "rounds",
    "proposals",
    "direct_rejections",
    "preemptive_rejections",
    "total_rejections",
    "idle_rounds",
    "wall_time_s",
]

# DA dashed / ADA solid everywhere; one fixed colour per bias level.
STYLE = {"da": {"linestyle": "--", "marker": "o"}, "ada": {"linestyle": "-", "marker": "s"}}
C_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"]


def _save(fig, path: str) -> None:
    metadata = {"Date": None} if path.endswith(".svg") else None
    fig.savefig(path, dpi=110, bbox_inches="tight", metadata=metadata)


class PlotDataError(Exception):
    """Input CSVs are missing, empty, or lack required columns."""


@dataclass
class FigureResult:
    name: str
    path: str
    series: dict = field(default_factory=dict)


def _results_like(columns) -> bool:
    # Curve exports and aggregated summaries legitimately share a directory
    # with the per-run results; only per-run files carry a seed column (or,
    # failing that, raw per-algorithm round counts).
    cols = set(columns)
    return "seed" in cols or {"algorithm", "rounds"} <= cols


def load_results(results_dir: str) -> pd.DataFrame:
    paths = sorted(glob.glob(os.path.join(results_dir, "**", "*.csv"), recursive=True))
    frames = []
    for path in paths:
        if os.path.basename(os.path.dirname(path)).endswith("curves"):
            continue
        try:
            df = pd.read_csv(path)
        except pd.errors.EmptyDataError:
            continue
        if not _results_like(df.columns):
            continue
        missing = [col for col in REQUIRED_COLUMNS if col not in df.columns]
        if missing:
            raise PlotDataError(
                f"{path}: missing required column(s) {', '.join(missing)}"
            )
        frames.append(df)
    if not frames:
        raise PlotDataError(f"no results CSVs found under {results_dir}")
    out = pd.concat(frames, ignore_index=True)
    if out.empty:
        raise PlotDataError(f"results CSVs under {results_dir} contain no rows")
    return out


def load_curves(results_dir: str) -> dict[str, pd.DataFrame]:
    pattern = os.path.join(results_dir, "**", "*curves*", "*.csv")
    curves = {}
    for path in sorted(glob.glob(pattern, recursive=True)):
        df = pd.read_csv(path)
        if {"round", "proportion"} <= set(df.columns):
            curves[os.path.splitext(os.path.basename(path))[0]] = df
    return curves


def _c_color(c: float, c_values: list[float]) -> str:
    return C_COLORS[c_values.index(c) % len(C_COLORS)]


def _by_n(df: pd.DataFrame, metric: str, path: str, log: bool) -> FigureResult:
    fig, ax = plt.subplots(figsize=(7, 5))
    c_values = sorted(df["c"].unique())
    series = {}
    for c in c_values:
        for algo in ("da", "ada"):
            sub = df[(df["c"] == c) & (df["algorithm"] == algo)]
            if sub.empty:
                continue
            means = sub.groupby("n")[metric].mean().sort_index()
            series[(c, algo)] = means.to_dict()
            ax.plot(
                means.index,
                means.values,
                color=_c_color(c, c_values),
                label=f"{algo} c={c}",
                **STYLE[algo],
            )
    if log:
        ax.set_xscale("log", base=2)
        ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel(f"mean {metric}")
    ax.legend(fontsize=8)
    _save(fig, path)
    plt.close(fig)
    return FigureResult(os.path.basename(path), path, series)


def _by_c(df: pd.DataFrame, metric: str, path: str) -> FigureResult:
    n = df["n"].max()
    sub_n = df[df["n"] == n]
    fig, ax = plt.subplots(figsize=(7, 5))
    series = {}
    for algo in ("da", "ada"):
        sub = sub_n[sub_n["algorithm"] == algo]
        if sub.empty:
            continue
        means = sub.groupby("c")[metric].mean().sort_index()
        series[algo] = means.to_dict()
        ax.plot(means.index, means.values, color="k" if algo == "da" else "#1f77b4",
                label=algo, **STYLE[algo])
    ax.set_xlabel("c")
    ax.set_ylabel(f"mean {metric}")
    ax.set_title(f"n = {n}")
    ax.legend()
    _save(fig, path)
    plt.close(fig)
    return FigureResult(os.path.basename(path), path, series)


def rounds_by_n(df, path):
    return _by_n(df, "rounds", path, log=True)


def proposals_by_n(df, path):
    return _by_n(df, "proposals", path, log=False)


def rounds_by_c(df, path):
    return _by_c(df, "rounds", path)


def proposals_by_c(df, path):
    return _by_c(df, "proposals", path)


def rounds_distributions(df: pd.DataFrame, path: str) -> FigureResult:
    # One panel per bias level, both algorithms overlaid; the horizontal
    # axis is logarithmic because the two distributions sit decades apart.
    n = df["n"].max()
    sub_n = df[df["n"] == n]
    c_values = sorted(sub_n["c"].unique())
    fig, axes = plt.subplots(1, len(c_values), figsize=(4 * len(c_values), 4),
                             squeeze=False)
    series = {}
    for ax, c in zip(axes[0], c_values):
        sub_c = sub_n[sub_n["c"] == c]
        lo = max(int(sub_c["rounds"].min()), 1)
        hi = max(int(sub_c["rounds"].max()), lo + 1)
        bins = [lo * (hi / lo) ** (k / 20) for k in range(21)]
        for algo, color in (("da", "#d62728"), ("ada", "#1f77b4")):
            vals = sub_c[sub_c["algorithm"] == algo]["rounds"]
            if vals.empty:
                continue
            ax.hist(vals, bins=bins, alpha=0.6, color=color, label=algo)
            series[(c, algo)] = int(vals.count())
        ax.set_xscale("log")
        ax.set_xlabel("rounds")
        ax.set_title(f"c = {c}")
        ax.legend(fontsize=8)
    axes[0][0].set_ylabel("instances")
    _save(fig, path)
    plt.close(fig)
    return FigureResult(os.path.basename(path), path, series)


def rounds_scatter(df: pd.DataFrame, path: str) -> FigureResult:
    paired = df.pivot_table(
        index=["n", "c", "seed"], columns="algorithm", values="rounds"
    ).dropna()
    fig, ax = plt.subplots(figsize=(6, 6))
    series = {}
    if {"da", "ada"} <= set(paired.columns):
        c_values = sorted({c for _n, c, _s in paired.index})
        for c in c_values:
            rows = paired.xs(c, level="c")
            ax.scatter(rows["ada"], rows["da"], s=12, alpha=0.6,
                       color=_c_color(c, c_values), label=f"c={c}")
            series[c] = len(rows)
        lim = max(paired["da"].max(), paired["ada"].max())
        ax.plot([1, lim], [1, lim], color="gray", linewidth=0.8)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.legend(fontsize=8)
    ax.set_xlabel("ada rounds")
    ax.set_ylabel("da rounds")
    _save(fig, path)
    plt.close(fig)
    return FigureResult(os.path.basename(path), path, series)


def final_pair_curves(curves: dict[str, pd.DataFrame], path: str) -> FigureResult:
    if not curves:
        raise PlotDataError(
            "no final-pair curve CSVs found; export them with "
            "`matchkit sweep --curves N`"
        )
    fig, ax = plt.subplots(figsize=(7, 5))
    series = {}
    for name in sorted(curves):
        df = curves[name]
        algo = "ada" if name.endswith("ada") else "da"
        color = "#1f77b4" if algo == "ada" else "#d62728"
        ax.step(df["round"], df["proportion"], where="post", color=color,
                linestyle=STYLE[algo]["linestyle"], alpha=0.8, label=name)
        series[name] = len(df)
    ax.set_xlabel("round")
    ax.set_ylabel("proportion of final pairs matched")
    ax.set_ylim(0, 1.05)
    if len(series) <= 12:
        ax.legend(fontsize=7)
    _save(fig, path)
    plt.close(fig)
    return FigureResult(os.path.basename(path), path, series)


def runtime_hist(df: pd.DataFrame, path: str) -> FigureResult:
    n = df["n"].max()
    sub_n = df[df["n"] == n]
    c = sub_n["c"].max()
    sub = sub_n[sub_n["c"] == c]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    series = {}
    for algo, color in (("da", "#d62728"), ("ada", "#1f77b4")):
        vals = sub[sub["algorithm"] == algo]["wall_time_s"]
        if vals.empty:
            continue
        ax.hist(vals, bins=24, alpha=0.6, color=color, label=algo)
        series[algo] = float(vals.mean())
    ax.set_xlabel("runtime (s)")
    ax.set_ylabel("instances")
    ax.set_title(f"n = {n}, c = {c}")
    ax.legend()
    _save(fig, path)
    plt.close(fig)
    return FigureResult(os.path.basename(path), path, series)


def runtime_by_c(df, path):
    return _by_c(df, "wall_time_s", path)


FIGURES = [
    ("rounds_by_n", rounds_by_n),
    ("rounds_by_c", rounds_by_c),
    ("rounds_distributions", rounds_distributions),
    ("rounds_scatter", rounds_scatter),
    ("proposals_by_n", proposals_by_n),
    ("proposals_by_c", proposals_by_c),
    ("final_pair_curves", final_pair_curves),
    ("runtime_hist", runtime_hist),
    ("runtime_by_c", runtime_by_c),
]


def plot_all(results_dir: str, out_dir: str, fmt: str = "png") -> list[FigureResult]:
    """Render every figure; returns what was drawn, for inspection."""
    df = load_results(results_dir)
    curves = load_curves(results_dir)
    os.makedirs(out_dir, exist_ok=True)
    results = []
    for name, fn in FIGURES:
        path = os.path.join(out_dir, f"{name}.{fmt}")
        if fn is final_pair_curves:
            results.append(fn(curves, path))
        else:
            results.append(fn(df, path))
    return results
