import json
import random

import pytest

from scorelens.errors import CorruptLog, SessionClosed, StaleSeq, ValidationError
from scorelens.events import (
    PHASE_I,
    PHASE_II,
    ScoreEvent,
    SessionStore,
    read_log,
    replay,
    revision_stats,
)
from scorelens.schema import SECTIONS


def _store(tmp_path, name="s.log"):
    return SessionStore(tmp_path / name, session_id="test")


def test_first_event_gets_seq_one(tmp_path):
    store = _store(tmp_path)
    assert store.append(1, "EB", 3, timestamp=10) == 1
    assert store.append(1, "Com", 4, timestamp=20) == 2


def test_append_after_final_submit_rejected(tmp_path):
    store = _store(tmp_path)
    store.append(1, "EB", 3, timestamp=5)
    store.submit(PHASE_I)
    store.append(1, "EB", 4, timestamp=9)  # phase II is open
    store.submit(PHASE_II)
    with pytest.raises(SessionClosed):
        store.append(1, "EB", 5, timestamp=12)


def test_wrong_phase_submit_rejected(tmp_path):
    store = _store(tmp_path)
    with pytest.raises(SessionClosed):
        store.submit(PHASE_II)
    store.submit(PHASE_I)
    with pytest.raises(SessionClosed):
        store.submit(PHASE_I)


def test_explicit_stale_seq_rejected(tmp_path):
    store = _store(tmp_path)
    store.append(1, "EB", 3, timestamp=1, seq=1)
    with pytest.raises(StaleSeq):
        store.append(1, "EB", 4, timestamp=2, seq=1)


def test_backwards_timestamp_rejected(tmp_path):
    store = _store(tmp_path)
    store.append(1, "EB", 3, timestamp=100)
    with pytest.raises(ValidationError):
        store.append(1, "EB", 4, timestamp=50)


def test_invalid_score_and_section_rejected(tmp_path):
    store = _store(tmp_path)
    with pytest.raises(ValidationError):
        store.append(1, "EB", 6, timestamp=1)
    with pytest.raises(ValidationError):
        store.append(1, "XX", 3, timestamp=1)


def test_replay_last_write_wins():
    events = [
        ScoreEvent(seq=1, timestamp=0, app_id=1, section="EB", score=3),
        ScoreEvent(seq=2, timestamp=10, app_id=1, section="EB", score=4),
    ]
    sheet = replay(events)
    assert sheet[1]["EB"] == 4
    stats = revision_stats(events)
    assert stats.per_key[(1, "EB")] == 1


def test_replay_empty_log():
    assert replay([]) == {}


def test_replay_detects_seq_gap_and_time_regression():
    with pytest.raises(CorruptLog):
        replay([ScoreEvent(seq=2, timestamp=0, app_id=1, section="EB", score=3)])
    with pytest.raises(CorruptLog):
        replay([
            ScoreEvent(seq=1, timestamp=50, app_id=1, section="EB", score=3),
            ScoreEvent(seq=2, timestamp=10, app_id=1, section="EB", score=4),
        ])


def test_shuffled_then_resorted_log_replays_identically(tmp_path):
    rng = random.Random(3)
    events = []
    ts = 0
    for seq in range(1, 201):
        ts += rng.randint(0, 500)
        events.append(ScoreEvent(
            seq=seq, timestamp=ts, app_id=rng.randint(1, 10),
            section=rng.choice(SECTIONS), score=rng.randint(0, 5),
        ))
    shuffled = events[:]
    rng.shuffle(shuffled)
    resorted = sorted(shuffled, key=lambda e: e.seq)
    assert replay(resorted) == replay(events)


def test_thousand_appends_replay_matches_incremental(tmp_path):
    store = _store(tmp_path)
    rng = random.Random(11)
    incremental: dict[int, dict[str, int]] = {}
    ts = 0
    for _ in range(1000):
        app = rng.randint(1, 40)
        section = rng.choice(SECTIONS)
        score = rng.randint(0, 5)
        ts += rng.randint(0, 100)
        store.append(app, section, score, timestamp=ts)
        incremental.setdefault(app, {s: 0 for s in SECTIONS})[section] = score
    assert store.sheet() == incremental
    # And the on-disk log replays to the same state after reopen.
    store.close()
    events = read_log(store.path)
    assert replay(events) == incremental


def test_any_prefix_replays(tmp_path):
    store = _store(tmp_path)
    ts = 0
    for i in range(50):
        ts += 7
        store.append(1 + i % 5, SECTIONS[i % 4], i % 6, timestamp=ts)
    events = store.events()
    for cut in range(len(events) + 1):
        replay(events[:cut])  # must not raise


def test_full_log_replay_idempotent(tmp_path):
    store = _store(tmp_path)
    for i in range(20):
        store.append(1, "EB", i % 6, timestamp=i * 10)
    events = store.events()
    assert replay(events) == replay(events)


def test_revision_stats_counting_oracle():
    rng = random.Random(17)
    events = []
    ts = 0
    for seq in range(1, 501):
        ts += rng.randint(0, 50)
        events.append(ScoreEvent(
            seq=seq, timestamp=ts, app_id=rng.randint(1, 12),
            section=rng.choice(SECTIONS), score=rng.randint(1, 5),
        ))
    stats = revision_stats(events)
    counts: dict[tuple[int, str], int] = {}
    for e in events:
        counts[(e.app_id, e.section)] = counts.get((e.app_id, e.section), 0) + 1
    for key, n in counts.items():
        assert stats.per_key[key] == n - 1
    for app_id, avg in stats.per_app_average.items():
        expected = sum(max(0, counts.get((app_id, s), 0) - 1) for s in SECTIONS) / 4
        assert avg == expected


def test_no_revisions_all_zero():
    events = [
        ScoreEvent(seq=i + 1, timestamp=i, app_id=i + 1, section="EB", score=3)
        for i in range(5)
    ]
    stats = revision_stats(events)
    assert all(v == 0 for v in stats.per_key.values())
    assert all(v == 0 for v in stats.per_app_average.values())


def test_reopen_restores_events_and_phase(tmp_path):
    store = _store(tmp_path)
    store.append(1, "EB", 3, timestamp=4)
    store.submit(PHASE_I)
    store.close()
    reopened = SessionStore(tmp_path / "s.log")
    assert reopened.phase == PHASE_II
    assert len(reopened.events()) == 1
    reopened.append(1, "EB", 5, timestamp=999)
    assert reopened.sheet()[1]["EB"] == 5


def test_snapshot_document_replayable(tmp_path):
    store = _store(tmp_path)
    store.append(2, "Ho", 4, timestamp=3)
    snapshot = store.submit(PHASE_I, model_versions={"Ho": "abc123"})
    assert snapshot.sheet[2]["Ho"] == 4
    path = store.path.with_suffix(".snapshot-I.json")
    data = json.loads(path.read_text())
    assert data["sheet"]["2"]["Ho"] == 4
    assert data["model_versions"] == {"Ho": "abc123"}


def test_log_file_format(tmp_path):
    store = _store(tmp_path)
    store.append(1, "EB", 3, timestamp=7)
    store.close()
    lines = (tmp_path / "s.log").read_text().splitlines()
    header = json.loads(lines[0])
    assert header["format"] == "eventlog-v1"
    event = json.loads(lines[1])
    assert event == {"seq": 1, "timestamp": 7, "app_id": 1,
                     "section": "EB", "score": 3, "origin": "Manual"}
