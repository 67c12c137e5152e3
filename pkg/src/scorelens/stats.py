"""Descriptive statistics behind the statistical view and the reports.

Pure functions over immutable inputs; everything here is callable
concurrently.  Quartiles use linear interpolation of order statistics (the
"type 7" convention, numpy's default) — fixed so the UI and exports agree.
Kurtosis is the Pearson (non-excess) flavor m4/m2^2, fixed for determinism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyGroup, EmptySeries, DegenerateSeries, NonPositiveBandwidth
from .records import Application, RankTables
from .attributes import indicator_series

KDE_GRID_POINTS = 128
KDE_FLOOR_BANDWIDTH = 0.1  # degenerate (zero-spread) series keep a usable kernel


@dataclass(frozen=True)
class BoxStats:
    min: float
    q1: float
    median: float
    q3: float
    max: float
    lower_whisker: float
    upper_whisker: float
    outliers: tuple[float, ...] = ()


@dataclass(frozen=True)
class DensityCurve:
    grid: tuple[float, ...]
    density: tuple[float, ...]
    bandwidth: float


@dataclass(frozen=True)
class IndicatorStats:
    name: str
    values: tuple[float, ...]
    box: BoxStats
    density: DensityCurve
    highlight: float | None = None  # currently selected applicant's value


@dataclass(frozen=True)
class IndicatorSet:
    """The fixed 12-indicator snapshot for one application group."""

    indicators: tuple[IndicatorStats, ...]

    def __post_init__(self):
        assert len(self.indicators) == 12


@dataclass(frozen=True)
class SectionDuration:
    app_id: int
    section: str
    milliseconds: int

    @property
    def seconds(self) -> float:
        return self.milliseconds / 1000.0


def _trapezoid(y: np.ndarray, x: np.ndarray) -> float:
    integrate = getattr(np, "trapezoid", None) or np.trapz
    return float(integrate(y, x))


def box_stats(values) -> BoxStats:
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise EmptySeries("box_stats needs a nonempty series")
    q1, median, q3 = np.percentile(arr, [25, 50, 75])
    iqr = q3 - q1
    lo_fence = q1 - 1.5 * iqr
    hi_fence = q3 + 1.5 * iqr
    inside = arr[(arr >= lo_fence) & (arr <= hi_fence)]
    # Whiskers sit on the furthest observations inside the Tukey fences.
    lower_whisker = float(inside.min())
    upper_whisker = float(inside.max())
    outliers = tuple(float(v) for v in sorted(arr[(arr < lo_fence) | (arr > hi_fence)]))
    return BoxStats(
        min=float(arr.min()),
        q1=float(q1),
        median=float(median),
        q3=float(q3),
        max=float(arr.max()),
        lower_whisker=lower_whisker,
        upper_whisker=upper_whisker,
        outliers=outliers,
    )


def silverman_bandwidth(values) -> float:
    arr = np.sort(np.asarray(values, dtype=np.float64))
    std = float(arr.std())
    q1, q3 = np.percentile(arr, [25, 75])
    iqr_scale = float(q3 - q1) / 1.34
    scales = [s for s in (std, iqr_scale) if s > 0]
    if not scales:
        return KDE_FLOOR_BANDWIDTH
    return max(0.9 * min(scales) * arr.size ** (-0.2), 1e-12)


def kde(values, bandwidth: float | None = None) -> DensityCurve:
    """Gaussian-kernel density on a 128-point grid over data range ± 3 bandwidths.

    ``bandwidth=None`` selects Silverman's rule.  The curve is renormalized
    so its trapezoidal integral over the grid is exactly 1.
    """
    # Sorting first makes the result exactly permutation-invariant (float
    # summation order would otherwise leak single-ulp differences).
    arr = np.sort(np.asarray(values, dtype=np.float64))
    if arr.size == 0:
        raise EmptySeries("kde needs a nonempty series")
    if bandwidth is None:
        bandwidth = silverman_bandwidth(arr)
    if bandwidth <= 0:
        raise NonPositiveBandwidth(f"bandwidth must be positive, got {bandwidth}")
    grid = np.linspace(arr.min() - 3 * bandwidth, arr.max() + 3 * bandwidth, KDE_GRID_POINTS)
    z = (grid[:, None] - arr[None, :]) / bandwidth
    density = np.exp(-0.5 * z**2).sum(axis=1) / (arr.size * bandwidth * np.sqrt(2 * np.pi))
    density /= _trapezoid(density, grid)
    return DensityCurve(
        grid=tuple(float(g) for g in grid),
        density=tuple(float(d) for d in density),
        bandwidth=float(bandwidth),
    )


def kurtosis(values) -> float:
    """Pearson (non-excess) kurtosis: fourth central moment / variance squared."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise EmptySeries("kurtosis needs a nonempty series")
    centered = arr - arr.mean()
    m2 = float(np.mean(centered**2))
    if arr.size < 2 or m2 == 0.0:
        raise DegenerateSeries("kurtosis undefined for zero-variance series")
    m4 = float(np.mean(centered**4))
    return m4 / m2**2


def section_durations(log) -> list[SectionDuration]:
    """Attribute the gap between consecutive scoring events to the earlier event.

    The first event is charged the time from session start (t=0) to itself.
    Totals accumulate in integer milliseconds, so the per-key sums equal the
    last event's timestamp exactly.  Events must already be in timestamp
    order (the session store guarantees it).
    """
    events = list(log)
    if not events:
        return []
    totals: dict[tuple[int, str], int] = {}
    first = events[0]
    totals[(first.app_id, first.section)] = first.timestamp
    for earlier, later in zip(events, events[1:]):
        key = (earlier.app_id, earlier.section)
        totals[key] = totals.get(key, 0) + (later.timestamp - earlier.timestamp)
    for event in events:
        totals.setdefault((event.app_id, event.section), 0)
    return [
        SectionDuration(app_id=app_id, section=section, milliseconds=ms)
        for (app_id, section), ms in totals.items()
    ]


def indicator_set(
    apps: list[Application] | tuple[Application, ...],
    tables: RankTables,
    selected_app_id: int | None = None,
) -> IndicatorSet:
    """Compute the 12 indicators with box stats, densities, and highlights."""
    if not apps:
        raise EmptyGroup("indicator_set needs at least one application")
    series = indicator_series(apps, tables)
    assert len(series) == 12
    selected_idx = None
    if selected_app_id is not None:
        for i, app in enumerate(apps):
            if app.app_id == selected_app_id:
                selected_idx = i
                break
    indicators = []
    for name, values in series.items():
        indicators.append(
            IndicatorStats(
                name=name,
                values=tuple(values),
                box=box_stats(values),
                density=kde(values),
                highlight=values[selected_idx] if selected_idx is not None else None,
            )
        )
    return IndicatorSet(indicators=tuple(indicators))
