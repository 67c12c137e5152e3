"""Append-only scoring log, session lifecycle, and replay.

Every scoring action lands in one newline-delimited file per session: a
versioned JSON header line followed by one JSON event per line, fsynced
before the append is acknowledged.  The file is the source of truth — sheet
state, durations, and revision analytics are all replays of it, and any
prefix of the file replays to a valid state.

Sessions walk a fixed two-phase lifecycle: open-I -> (submit I) -> open-II
-> (submit II) -> closed.  Submitting a phase freezes a snapshot document
next to the log.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CorruptLog, SessionClosed, StaleSeq, ValidationError
from .schema import SCORE_MAX, SECTIONS

LOG_FORMAT_VERSION = "eventlog-v1"

ORIGINS = ("Manual", "ModelAssisted")

PHASE_I = "I"
PHASE_II = "II"
_CLOSED = "closed"


@dataclass(frozen=True)
class ScoreEvent:
    seq: int
    timestamp: int  # milliseconds since session start
    app_id: int
    section: str
    score: int
    origin: str = "Manual"


@dataclass(frozen=True)
class SessionSnapshot:
    phase: str
    submitted_at: int  # ms since session start
    sheet: dict        # app_id -> section -> score
    model_versions: dict  # section -> model hash, if trained


@dataclass(frozen=True)
class RevisionStats:
    per_key: dict              # (app_id, section) -> revision count
    per_app_average: dict      # app_id -> mean revisions across the four sections


def replay(events: Iterable[ScoreEvent]) -> dict[int, dict[str, int]]:
    """Last write wins per (app, section); validates seq continuity and time order."""
    sheet: dict[int, dict[str, int]] = {}
    prev_seq = 0
    prev_ts = 0
    for event in events:
        if event.seq != prev_seq + 1:
            raise CorruptLog(f"seq gap: expected {prev_seq + 1}, got {event.seq}")
        if event.timestamp < prev_ts:
            raise CorruptLog(
                f"timestamp went backwards at seq {event.seq}: {event.timestamp} < {prev_ts}"
            )
        prev_seq, prev_ts = event.seq, event.timestamp
        sheet.setdefault(event.app_id, {s: 0 for s in SECTIONS})[event.section] = event.score
    return sheet


def revision_stats(events: Sequence[ScoreEvent]) -> RevisionStats:
    """Revisions = scoring events beyond the first per (app, section) key.

    Re-entering the same score still counts: an event occurred.  Per-app
    averages span all four sections, counting untouched sections as zero.
    """
    counts: dict[tuple[int, str], int] = {}
    for event in events:
        key = (event.app_id, event.section)
        counts[key] = counts.get(key, 0) + 1
    per_key = {key: n - 1 for key, n in counts.items()}
    app_ids = sorted({app_id for app_id, _ in per_key})
    per_app_average = {
        app_id: sum(per_key.get((app_id, s), 0) for s in SECTIONS) / len(SECTIONS)
        for app_id in app_ids
    }
    return RevisionStats(per_key=per_key, per_app_average=per_app_average)


def _event_from_json(line: str, lineno: int) -> ScoreEvent:
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorruptLog(f"line {lineno}: not valid JSON ({exc})") from None
    try:
        return ScoreEvent(
            seq=int(raw["seq"]),
            timestamp=int(raw["timestamp"]),
            app_id=int(raw["app_id"]),
            section=str(raw["section"]),
            score=int(raw["score"]),
            origin=str(raw.get("origin", "Manual")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptLog(f"line {lineno}: bad event record ({exc})") from None


def read_log(path: str | Path) -> list[ScoreEvent]:
    """Parse a session log file; the header line is validated, then skipped."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise CorruptLog("log file is empty (missing header)")
    header = json.loads(lines[0])
    if header.get("format") != LOG_FORMAT_VERSION:
        raise CorruptLog(f"unsupported log format {header.get('format')!r}")
    return [_event_from_json(line, i + 2) for i, line in enumerate(lines[1:])]


class SessionStore:
    """Single-writer, durably-appended scoring log with lifecycle phases.

    Concurrent readers may snapshot freely (`events()` copies); all writes
    serialize through one lock.
    """

    def __init__(self, path: str | Path, session_id: str = "session"):
        self.path = Path(path)
        self.session_id = session_id
        self._lock = threading.Lock()
        self._events: list[ScoreEvent] = []
        self._phase = PHASE_I
        self._started_monotonic = time.monotonic()
        if self.path.exists() and self.path.stat().st_size > 0:
            self._events = read_log(self.path)
            replay(self._events)  # validates continuity
            self._fh = open(self.path, "a", encoding="utf-8")
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._fh = open(self.path, "a", encoding="utf-8")
            header = {
                "format": LOG_FORMAT_VERSION,
                "session_id": session_id,
                "created_at": int(time.time() * 1000),
            }
            self._write_line(json.dumps(header, sort_keys=True))
        for phase in (PHASE_I, PHASE_II):
            if self._snapshot_path(phase).exists():
                self._phase = PHASE_II if phase == PHASE_I else _CLOSED

    def _snapshot_path(self, phase: str) -> Path:
        return self.path.with_suffix(f".snapshot-{phase}.json")

    def _write_line(self, line: str) -> None:
        self._fh.write(line + "\n")
        self._fh.flush()
        os.fsync(self._fh.fileno())

    @property
    def phase(self) -> str:
        return self._phase

    @property
    def is_open(self) -> bool:
        return self._phase in (PHASE_I, PHASE_II)

    def now_ms(self) -> int:
        return int((time.monotonic() - self._started_monotonic) * 1000)

    def events(self) -> list[ScoreEvent]:
        with self._lock:
            return list(self._events)

    def append(
        self,
        app_id: int,
        section: str,
        score: int,
        origin: str = "Manual",
        timestamp: int | None = None,
        seq: int | None = None,
    ) -> int:
        """Durably append one scoring event; returns its sequence number."""
        if section not in SECTIONS:
            raise ValidationError(f"unknown section {section!r}")
        if not isinstance(score, int) or not 0 <= score <= SCORE_MAX:
            raise ValidationError(f"score must be an integer in 0..{SCORE_MAX}, got {score!r}")
        if origin not in ORIGINS:
            raise ValidationError(f"unknown origin {origin!r}")
        with self._lock:
            if not self.is_open:
                raise SessionClosed("session is closed; no further scoring allowed")
            next_seq = len(self._events) + 1
            if seq is not None and seq != next_seq:
                raise StaleSeq(f"expected seq {next_seq}, got {seq}")
            ts = self.now_ms() if timestamp is None else int(timestamp)
            if self._events and ts < self._events[-1].timestamp:
                raise ValidationError(
                    f"timestamp {ts} precedes last event at {self._events[-1].timestamp}"
                )
            event = ScoreEvent(
                seq=next_seq, timestamp=ts, app_id=app_id,
                section=section, score=score, origin=origin,
            )
            self._write_line(json.dumps(asdict(event), sort_keys=True))
            self._events.append(event)
            return next_seq

    def sheet(self) -> dict[int, dict[str, int]]:
        return replay(self.events())

    def submit(self, phase: str, model_versions: dict | None = None) -> SessionSnapshot:
        """Freeze the current sheet for the given phase and advance the lifecycle."""
        with self._lock:
            if phase not in (PHASE_I, PHASE_II) or phase != self._phase:
                raise SessionClosed(
                    f"cannot submit phase {phase!r} while session is in phase {self._phase!r}"
                )
            snapshot = SessionSnapshot(
                phase=phase,
                submitted_at=self.now_ms(),
                sheet={app: dict(sections) for app, sections in replay(self._events).items()},
                model_versions=dict(model_versions or {}),
            )
            path = self._snapshot_path(phase)
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(
                    {"format": "snapshot-v1", **asdict(snapshot)},
                    fh, sort_keys=True, indent=2,
                )
                fh.flush()
                os.fsync(fh.fileno())
            self._phase = PHASE_II if phase == PHASE_I else _CLOSED
            return snapshot

    def close(self) -> None:
        self._fh.close()
