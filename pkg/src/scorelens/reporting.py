"""Report documents, delimited exports, and matplotlib figure rendering.

The report path always produces machine-readable JSON/CSV first; figures
are rendered beside them from the same data.  Rendering is deterministic
(fixed figure sizes, no timestamps in metadata), so report directories are
byte-comparable across runs.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .embedding import ComparisonLayout
from .errors import DegenerateSeries, EmptySeries
from .inconsistency import DeviationClass, InversionPair, TimeAnomaly, close_share
from .ranking import Prediction
from .schema import SCHEMA_VERSION, SCORE_MAX, SCORE_MIN, SECTIONS
from .stats import IndicatorSet, SectionDuration, kurtosis

SECTION_COLORS = {
    "EB": "#A380B9",
    "Com": "#E0A142",
    "Ho": "#51A6AB",
    "ExA": "#87CC4C",
}

DEVIATION_COLORS = {
    "Higher": "#4A93FF",
    "Lower": "#FA8181",
    "Close": "#606266",
}

_RING_CMAP = "viridis"  # one linear scale shared by human and predicted scores


def indicator_document(indicators: IndicatorSet, group_id: str = "") -> dict:
    return {
        "format": "stats-v1",
        "schema_version": SCHEMA_VERSION,
        "group_id": group_id,
        "indicators": [
            {
                "name": ind.name,
                "values": list(ind.values),
                "box": asdict(ind.box) | {"outliers": list(ind.box.outliers)},
                "density": {
                    "grid": list(ind.density.grid),
                    "density": list(ind.density.density),
                    "bandwidth": ind.density.bandwidth,
                },
                "highlight": ind.highlight,
            }
            for ind in indicators.indicators
        ],
    }


def score_histograms(sheet: dict[int, dict[str, int]]) -> dict[str, dict]:
    """Per-section histogram of assigned scores with its kurtosis K.

    K is null when fewer than two scores are assigned or all scores tie.
    """
    out: dict[str, dict] = {}
    for section in SECTIONS:
        scores = [row.get(section, 0) for row in sheet.values()]
        assigned = [s for s in scores if s != 0]
        counts = {str(v): assigned.count(v) for v in range(SCORE_MIN, SCORE_MAX + 1)}
        try:
            k = kurtosis(assigned)
        except (EmptySeries, DegenerateSeries):
            k = None
        out[section] = {"counts": counts, "assigned": len(assigned), "kurtosis": k}
    return out


def inconsistency_document(
    section: str,
    deviations: Sequence[DeviationClass],
    inversions: Sequence[InversionPair],
    anomalies: Sequence[TimeAnomaly],
    model_version: str,
    tau: float,
) -> dict:
    return {
        "format": "inconsistency-v1",
        "schema_version": SCHEMA_VERSION,
        "section": section,
        "tau": tau,
        "model_version": model_version,
        "deviations": [asdict(d) for d in deviations],
        "inversions": [asdict(p) for p in inversions],
        "time_anomalies": [asdict(a) for a in anomalies],
        "close_share": close_share(deviations),
    }


def layout_document(layout: ComparisonLayout) -> dict:
    return {
        "format": "layout-v1",
        "schema_version": SCHEMA_VERSION,
        "positions": {str(a): [x, y] for a, (x, y) in sorted(layout.positions.items())},
        "centroids": {str(s): [x, y] for s, (x, y) in sorted(layout.centroids.items())},
        "polyline": list(layout.polyline),
        "kl_trace": list(layout.kl_trace),
        "config": asdict(layout.config),
    }


def write_json(path: Path, document: dict) -> None:
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_predictions_csv(path: Path, predictions: Sequence[Prediction]) -> None:
    write_csv(
        path,
        ("app_id", "v", "s_prime"),
        [(p.app_id, repr(p.v), f"{p.s_prime:.2f}") for p in predictions],
    )


def write_deviations_csv(path: Path, deviations: Sequence[DeviationClass]) -> None:
    write_csv(
        path,
        ("app_id", "section", "class", "delta"),
        [(d.app_id, d.section, d.label, repr(d.delta)) for d in deviations],
    )


def write_inversions_csv(path: Path, section: str, inversions: Sequence[InversionPair]) -> None:
    write_csv(path, ("section", "app_a", "app_b"),
              [(section, p.app_a, p.app_b) for p in inversions])


def write_anomalies_csv(path: Path, anomalies: Sequence[TimeAnomaly]) -> None:
    write_csv(
        path,
        ("app_id", "section", "seconds", "kind"),
        [(a.app_id, a.section, repr(a.seconds), a.kind) for a in anomalies],
    )


def render_indicator_figure(indicators: IndicatorSet, path: Path) -> None:
    """One card per indicator: density curve, box plot band, highlight dot."""
    fig, axes = plt.subplots(4, 3, figsize=(12, 10))
    for ax, ind in zip(axes.flat, indicators.indicators):
        grid = np.asarray(ind.density.grid)
        dens = np.asarray(ind.density.density)
        ax.fill_between(grid, dens, color="#51A6AB", alpha=0.35, linewidth=0)
        ax.plot(grid, dens, color="#51A6AB", linewidth=1.2)
        top = dens.max() if dens.size else 1.0
        y = -0.12 * top
        box = ind.box
        ax.plot([box.lower_whisker, box.upper_whisker], [y, y], color="#444444", linewidth=1)
        ax.add_patch(plt.Rectangle((box.q1, y - 0.04 * top), box.q3 - box.q1, 0.08 * top,
                                   facecolor="#cccccc", edgecolor="#444444", linewidth=1))
        ax.plot([box.median, box.median], [y - 0.04 * top, y + 0.04 * top],
                color="#444444", linewidth=1.4)
        if box.outliers:
            ax.plot(box.outliers, [y] * len(box.outliers), "o",
                    color="#444444", markersize=2.5, linestyle="none")
        if ind.highlight is not None:
            ax.plot([ind.highlight], [y], "o", color="#E0A142", markersize=6)
        ax.set_title(ind.name, fontsize=9)
        ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_score_histograms(sheet: dict[int, dict[str, int]], path: Path) -> None:
    histograms = score_histograms(sheet)
    fig, axes = plt.subplots(1, len(SECTIONS), figsize=(3.2 * len(SECTIONS), 3.2))
    for ax, section in zip(np.atleast_1d(axes), SECTIONS):
        info = histograms[section]
        values = list(range(SCORE_MIN, SCORE_MAX + 1))
        counts = [info["counts"][str(v)] for v in values]
        ax.bar(values, counts, color=SECTION_COLORS[section])
        k = info["kurtosis"]
        ax.set_title(f"{section}  K={k:.2f}" if k is not None else f"{section}  K=n/a", fontsize=10)
        ax.set_xticks(values)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_time_bars(durations: Sequence[SectionDuration], path: Path) -> None:
    """Stacked per-section time bars, one row per application."""
    by_app: dict[int, dict[str, float]] = {}
    for d in durations:
        by_app.setdefault(d.app_id, {})[d.section] = d.seconds
    app_ids = sorted(by_app)
    fig, ax = plt.subplots(figsize=(10, max(3.0, 0.22 * len(app_ids))))
    left = np.zeros(len(app_ids))
    for section in SECTIONS:
        widths = np.array([by_app[a].get(section, 0.0) for a in app_ids])
        ax.barh(range(len(app_ids)), widths, left=left,
                color=SECTION_COLORS[section], label=section)
        left += widths
    ax.set_yticks(range(len(app_ids)))
    ax.set_yticklabels([str(a) for a in app_ids], fontsize=6)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_layout_figure(
    layout: ComparisonLayout,
    deviations: Sequence[DeviationClass],
    human_scores: dict[int, int],
    predictions: dict[int, float],
    path: Path,
) -> None:
    """Comparison scatter: rings colored on one linear score scale, IDs by class."""
    label_of = {d.app_id: d.label for d in deviations}
    cmap = plt.get_cmap(_RING_CMAP)
    lo, hi = SCORE_MIN - 0.5, SCORE_MAX + 0.5

    def score_color(value: float):
        return cmap((min(max(value, lo), hi) - lo) / (hi - lo))

    fig, ax = plt.subplots(figsize=(8, 8))
    for app_id, (x, y) in sorted(layout.positions.items()):
        human = human_scores.get(app_id, 0)
        if human == 0:
            continue
        ax.scatter([x], [y], s=260, color=score_color(human), zorder=2)
        ax.scatter([x], [y], s=110, color=score_color(predictions.get(app_id, 0.0)), zorder=3)
        ax.annotate(str(app_id), (x, y), ha="center", va="center", fontsize=6,
                    color=DEVIATION_COLORS.get(label_of.get(app_id, "Close")), zorder=4)
    if layout.polyline:
        pts = [layout.centroids[s] for s in layout.polyline]
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                color="#888888", linewidth=1, zorder=1)
    for score, (x, y) in sorted(layout.centroids.items()):
        ax.scatter([x], [y], s=60, color=score_color(score), edgecolors="black",
                   linewidths=0.6, zorder=5)
    ax.set_xticks([])
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
