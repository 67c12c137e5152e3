"""Deviation classes, rank inversions, and time-allocation anomalies.

These are the discover/locate computations: each compares the reviewer's
scores with the model's predictions (or the group's pacing) and surfaces
disagreements.  All functions are pure over immutable snapshots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import LengthMismatch, TooFewObservations
from .stats import SectionDuration, box_stats

DEFAULT_TAU = 0.5  # half a score step; per-session configurable

HIGHER = "Higher"
LOWER = "Lower"
CLOSE = "Close"


@dataclass(frozen=True)
class DeviationClass:
    app_id: int
    section: str
    label: str   # Higher / Lower / Close
    delta: float  # human - prediction


@dataclass(frozen=True)
class InversionPair:
    app_a: int
    app_b: int


@dataclass(frozen=True)
class TimeAnomaly:
    app_id: int
    section: str
    seconds: float
    kind: str  # TooShort / TooLong


def classify_deviations(
    app_ids: Sequence[int],
    human: Sequence[int],
    preds: Sequence[float],
    section: str,
    tau: float = DEFAULT_TAU,
) -> list[DeviationClass]:
    """One class per scored app; |delta| exactly tau still counts as Close."""
    if len(human) != len(preds) or len(app_ids) != len(human):
        raise LengthMismatch(
            f"got {len(app_ids)} ids, {len(human)} scores, {len(preds)} predictions"
        )
    out = []
    for app_id, s, p in zip(app_ids, human, preds):
        if s == 0:
            continue
        delta = float(s) - float(p)
        if delta > tau:
            label = HIGHER
        elif delta < -tau:
            label = LOWER
        else:
            label = CLOSE
        out.append(DeviationClass(app_id=app_id, section=section, label=label, delta=delta))
    return out


def find_inversions(
    app_ids: Sequence[int],
    human: Sequence[int],
    preds: Sequence[float],
) -> list[InversionPair]:
    """All app pairs whose human order and prediction order strictly disagree.

    Pairs tied on either scale are not inversions.  Quadratic scan; group
    sizes stay small.
    """
    if len(human) != len(preds) or len(app_ids) != len(human):
        raise LengthMismatch(
            f"got {len(app_ids)} ids, {len(human)} scores, {len(preds)} predictions"
        )
    scored = [(a, s, p) for a, s, p in zip(app_ids, human, preds) if s != 0]
    inversions = []
    for x in range(len(scored)):
        for y in range(x + 1, len(scored)):
            a_id, a_s, a_p = scored[x]
            b_id, b_s, b_p = scored[y]
            if (a_s - b_s) * (a_p - b_p) < 0:
                inversions.append(InversionPair(app_a=a_id, app_b=b_id))
    return inversions


def flag_time_anomalies(durations: Sequence[SectionDuration]) -> list[TimeAnomaly]:
    """Tukey-fence outliers among one section's durations, labeled by side."""
    if len(durations) < 4:
        raise TooFewObservations(
            f"need at least 4 durations to fence outliers, got {len(durations)}"
        )
    box = box_stats([d.seconds for d in durations])
    iqr = box.q3 - box.q1
    lo = box.q1 - 1.5 * iqr
    hi = box.q3 + 1.5 * iqr
    anomalies = []
    for d in durations:
        if d.seconds < lo:
            anomalies.append(TimeAnomaly(d.app_id, d.section, d.seconds, "TooShort"))
        elif d.seconds > hi:
            anomalies.append(TimeAnomaly(d.app_id, d.section, d.seconds, "TooLong"))
    return anomalies


def close_share(deviations: Sequence[DeviationClass]) -> float:
    """Fraction of scored apps whose class is Close; the aggregate trend stat."""
    if not deviations:
        return 0.0
    return sum(1 for d in deviations if d.label == CLOSE) / len(deviations)
