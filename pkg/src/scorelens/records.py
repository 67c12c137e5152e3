"""Structured application records, score sheets, and reference rank tables.

Ingestion is deterministic: records arrive as already-structured JSON
documents (one group file, one rank-tables file) and are validated field by
field.  Records with missing required fields or unrecognizable enumerations
are rejected outright rather than patched.  A pluggable :class:`Extractor`
boundary is declared for other upstream sources (PDF pipelines etc.); only
the structured JSON reader ships here.

All types are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Protocol

from .errors import BadEnum, MissingField, ValidationError
from .schema import (
    HONOR_CATEGORIES,
    LEVELS,
    PUBLICATION_TIERS,
    SCHOOL_RANK_MAX,
    SCORE_MAX,
    SECTIONS,
)

GROUP_FORMAT_VERSION = "group-v1"
TABLES_FORMAT_VERSION = "tables-v1"

# Loose spellings accepted on input, canonicalized before validation.
_LEVEL_ALIASES = {
    "school": "School",
    "university": "School",
    "college": "School",
    "campus": "School",
    "provincial": "Provincial",
    "province": "Provincial",
    "regional": "Provincial",
    "national": "National",
    "nation": "National",
    "international": "International",
    "global": "International",
    "world": "International",
}

_HONOR_CATEGORY_ALIASES = {
    "scholarship": "Scholarship",
    "excellent student": "Excellent Student",
    "outstanding student": "Outstanding Student",
    "outstanding graduate": "Outstanding Graduate",
    "student officer": "Student Officer",
    "officer": "Student Officer",
    "volunteer": "Volunteer",
    "volunteering": "Volunteer",
    "social practice": "Social Practice",
    "skill certificate": "Skill Certificate",
    "certificate": "Skill Certificate",
}


@dataclass(frozen=True)
class Course:
    name: str
    grade: str


@dataclass(frozen=True)
class Basic:
    gender: str
    hometown: str
    school: str
    major: str
    skills: tuple[str, ...] = ()


@dataclass(frozen=True)
class Education:
    gpa: float
    student_rank: int
    class_size: int
    cet4: int | None = None
    cet6: int | None = None
    toefl: int | None = None
    ielts: float | None = None
    courses: tuple[Course, ...] = ()


@dataclass(frozen=True)
class Competition:
    name: str
    level: str
    time: str = ""
    award: str = ""


@dataclass(frozen=True)
class Honor:
    name: str
    level: str
    category: str
    time: str = ""


@dataclass(frozen=True)
class Project:
    name: str
    role: str
    time: str = ""
    description: str = ""


@dataclass(frozen=True)
class PaperRecord:
    title: str
    publication: str
    author_order: int = 1
    tier: str = "D"
    summary: str = ""


@dataclass(frozen=True)
class OtherActivity:
    name: str
    time: str = ""


@dataclass(frozen=True)
class Activities:
    projects: tuple[Project, ...] = ()
    papers: tuple[PaperRecord, ...] = ()
    other: tuple[OtherActivity, ...] = ()


@dataclass(frozen=True)
class Application:
    """One applicant's validated structured record."""

    app_id: int
    name: str
    basic: Basic
    education: Education
    competitions: tuple[Competition, ...] = ()
    honors: tuple[Honor, ...] = ()
    activities: Activities = field(default_factory=Activities)


@dataclass
class ScoreSheet:
    """Per-application section scores and comments; 0 means unscored."""

    app_id: int
    scores: dict[str, int] = field(default_factory=lambda: {s: 0 for s in SECTIONS})
    comments: dict[str, str] = field(default_factory=lambda: {s: "" for s in SECTIONS})

    def set_score(self, section: str, score: int) -> None:
        if section not in SECTIONS:
            raise BadEnum("section", section, SECTIONS)
        if not isinstance(score, int) or not 0 <= score <= SCORE_MAX:
            raise ValidationError(f"score must be an integer in 0..{SCORE_MAX}, got {score!r}")
        self.scores[section] = score


@dataclass(frozen=True)
class RankTables:
    """External reference tables: school ranks, venue tiers, competition levels."""

    school_rank: dict[str, int]
    publication_tier: dict[str, str]
    competition_levels: dict[str, str]


@dataclass(frozen=True)
class Group:
    schema_version: str
    group_id: str
    applications: tuple[Application, ...]

    def by_id(self) -> dict[int, Application]:
        return {a.app_id: a for a in self.applications}


class Extractor(Protocol):
    """Upstream source of raw structured records.

    Implementations turn some document store (a JSON export, a directory of
    parsed resumes, ...) into dicts shaped like the group file's
    ``applications`` entries.  Only :func:`load_group` ships; PDF/OCR
    extraction stays out of scope.
    """

    def extract(self) -> Iterable[dict]: ...


def canonical_level(value, path: str) -> str:
    if not isinstance(value, str) or not value.strip():
        raise BadEnum(path, value, LEVELS)
    key = value.strip().lower()
    if value.strip() in LEVELS:
        return value.strip()
    if key in _LEVEL_ALIASES:
        return _LEVEL_ALIASES[key]
    raise BadEnum(path, value, LEVELS)


def canonical_honor_category(value, path: str) -> str:
    if not isinstance(value, str):
        raise BadEnum(path, value, HONOR_CATEGORIES)
    stripped = value.strip()
    if stripped in HONOR_CATEGORIES:
        return stripped
    return _HONOR_CATEGORY_ALIASES.get(stripped.lower(), "Other")


def canonical_tier(value, path: str) -> str:
    if value is None or (isinstance(value, str) and not value.strip()):
        return "D"  # D doubles as "venue unknown"
    if isinstance(value, str) and value.strip().upper() in PUBLICATION_TIERS:
        return value.strip().upper()
    raise BadEnum(path, value, PUBLICATION_TIERS)


def _require(record: dict, key: str, path: str):
    if key not in record or record[key] is None:
        raise MissingField(f"{path}.{key}" if path else key)
    return record[key]


def _req_str(record: dict, key: str, path: str) -> str:
    value = _require(record, key, path)
    if not isinstance(value, str):
        raise ValidationError(f"{path}.{key} must be a string, got {type(value).__name__}")
    return value


def _req_int(record: dict, key: str, path: str, minimum: int | None = None) -> int:
    value = _require(record, key, path)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{path}.{key} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ValidationError(f"{path}.{key} must be >= {minimum}, got {value}")
    return value


def _opt_number(record: dict, key: str, path: str):
    value = record.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{path}.{key} must be numeric, got {value!r}")
    return value


def parse_application(record: dict) -> Application:
    """Validate one raw record and return the canonicalized Application."""
    if not isinstance(record, dict):
        raise ValidationError("application record must be an object")

    app_id = _req_int(record, "app_id", "", minimum=1)
    name = _req_str(record, "name", "")

    raw_basic = _require(record, "basic", "")
    basic = Basic(
        gender=_req_str(raw_basic, "gender", "basic"),
        hometown=_req_str(raw_basic, "hometown", "basic"),
        school=_req_str(raw_basic, "school", "basic"),
        major=_req_str(raw_basic, "major", "basic"),
        skills=tuple(raw_basic.get("skills") or ()),
    )

    raw_edu = _require(record, "education", "")
    gpa = _require(raw_edu, "gpa", "education")
    if isinstance(gpa, bool) or not isinstance(gpa, (int, float)):
        raise ValidationError(f"education.gpa must be numeric, got {gpa!r}")
    student_rank = _req_int(raw_edu, "student_rank", "education", minimum=1)
    class_size = _req_int(raw_edu, "class_size", "education", minimum=1)
    if student_rank > class_size:
        raise ValidationError(
            f"education.student_rank ({student_rank}) exceeds class_size ({class_size})"
        )
    courses = tuple(
        Course(name=_req_str(c, "name", f"education.courses[{i}]"),
               grade=str(c.get("grade", "")))
        for i, c in enumerate(raw_edu.get("courses") or ())
    )
    ielts = _opt_number(raw_edu, "ielts", "education")
    education = Education(
        gpa=float(gpa),
        student_rank=student_rank,
        class_size=class_size,
        cet4=_opt_number(raw_edu, "cet4", "education"),
        cet6=_opt_number(raw_edu, "cet6", "education"),
        toefl=_opt_number(raw_edu, "toefl", "education"),
        ielts=float(ielts) if ielts is not None else None,
        courses=courses,
    )

    competitions = tuple(
        Competition(
            name=_req_str(c, "name", f"competitions[{i}]"),
            level=canonical_level(_require(c, "level", f"competitions[{i}]"),
                                  f"competitions[{i}].level"),
            time=str(c.get("time", "")),
            award=str(c.get("award", "")),
        )
        for i, c in enumerate(record.get("competitions") or ())
    )

    honors = tuple(
        Honor(
            name=_req_str(h, "name", f"honors[{i}]"),
            level=canonical_level(_require(h, "level", f"honors[{i}]"),
                                  f"honors[{i}].level"),
            category=canonical_honor_category(_require(h, "category", f"honors[{i}]"),
                                              f"honors[{i}].category"),
            time=str(h.get("time", "")),
        )
        for i, h in enumerate(record.get("honors") or ())
    )

    raw_act = record.get("activities") or {}
    projects = tuple(
        Project(
            name=_req_str(p, "name", f"activities.projects[{i}]"),
            role=_req_str(p, "role", f"activities.projects[{i}]"),
            time=str(p.get("time", "")),
            description=str(p.get("description", "")),
        )
        for i, p in enumerate(raw_act.get("projects") or ())
    )
    papers = tuple(
        PaperRecord(
            title=_req_str(p, "title", f"activities.papers[{i}]"),
            publication=_req_str(p, "publication", f"activities.papers[{i}]"),
            author_order=int(p.get("author_order", 1)),
            tier=canonical_tier(p.get("tier"), f"activities.papers[{i}].tier"),
            summary=str(p.get("summary", "")),
        )
        for i, p in enumerate(raw_act.get("papers") or ())
    )
    other = tuple(
        OtherActivity(name=_req_str(o, "name", f"activities.other[{i}]"),
                      time=str(o.get("time", "")))
        for i, o in enumerate(raw_act.get("other") or ())
    )

    return Application(
        app_id=app_id,
        name=name,
        basic=basic,
        education=education,
        competitions=competitions,
        honors=honors,
        activities=Activities(projects=projects, papers=papers, other=other),
    )


def parse_group(document: dict) -> Group:
    if not isinstance(document, dict):
        raise ValidationError("group document must be an object")
    version = document.get("schema_version")
    if version != GROUP_FORMAT_VERSION:
        raise ValidationError(
            f"unsupported group schema_version {version!r}, expected {GROUP_FORMAT_VERSION!r}"
        )
    group_id = _req_str(document, "group_id", "")
    raw_apps = _require(document, "applications", "")
    applications = tuple(parse_application(r) for r in raw_apps)
    seen: set[int] = set()
    for app in applications:
        if app.app_id in seen:
            raise ValidationError(f"duplicate app_id {app.app_id} in group {group_id}")
        seen.add(app.app_id)
    return Group(schema_version=version, group_id=group_id, applications=applications)


def load_group(path: str | Path) -> Group:
    with open(path, encoding="utf-8") as fh:
        return parse_group(json.load(fh))


def parse_rank_tables(document: dict) -> RankTables:
    if not isinstance(document, dict):
        raise ValidationError("rank tables document must be an object")
    version = document.get("schema_version")
    if version != TABLES_FORMAT_VERSION:
        raise ValidationError(
            f"unsupported tables schema_version {version!r}, expected {TABLES_FORMAT_VERSION!r}"
        )
    school_rank: dict[str, int] = {}
    for school, rank in (document.get("school_rank") or {}).items():
        if isinstance(rank, bool) or not isinstance(rank, int) or not 1 <= rank <= SCHOOL_RANK_MAX:
            raise ValidationError(
                f"school_rank[{school!r}] must be an integer in 1..{SCHOOL_RANK_MAX}, got {rank!r}"
            )
        school_rank[school] = rank
    publication_tier = {
        venue: canonical_tier(tier, f"publication_tier[{venue!r}]")
        for venue, tier in (document.get("publication_tier") or {}).items()
    }
    competition_levels = {
        comp: canonical_level(level, f"competition_levels[{comp!r}]")
        for comp, level in (document.get("competition_levels") or {}).items()
    }
    return RankTables(
        school_rank=school_rank,
        publication_tier=publication_tier,
        competition_levels=competition_levels,
    )


def load_rank_tables(path: str | Path) -> RankTables:
    with open(path, encoding="utf-8") as fh:
        return parse_rank_tables(json.load(fh))
