"""Screening sections and their fixed attribute layouts.

Each of the four screening sections maps an application onto a fixed-length
numeric attribute vector.  The attribute order is part of the schema and is
versioned: model weights, normalization stats, and exported documents all
refer to positions in these tuples, so the order must never change within a
schema version.

All four sections share the two trailing attributes School Rank and
Student Rank.  School Rank is stored raw (1..200, sentinel 201 for unknown
schools, lower is better); it is flipped to ``201 - rank`` when building
model input so that every model attribute reads "higher is better".  Student
Rank is stored as a class percentile in (0, 1), already higher-is-better.
"""

from __future__ import annotations

from dataclasses import dataclass

SCHEMA_VERSION = "sections-v1"

SECTIONS = ("EB", "Com", "Ho", "ExA")

LEVELS = ("School", "Provincial", "National", "International")

SCORE_MIN = 1
SCORE_MAX = 5

SHARED_ATTRIBUTES = ("School Rank", "Student Rank")

SCHOOL_RANK_MAX = 200
SCHOOL_RANK_UNKNOWN = 201  # one worse than the 1..200 scale

COMPETITION_SUBJECTS = (
    "Mathematics",
    "English",
    "Computer",
    "Chemistry",
    "Electronics",
    "Mechanical",
    "Physics",
    "Biology",
    "InnovationEntrepreneurship",
    "Other",
)

HONOR_CATEGORIES = (
    "Scholarship",
    "Excellent Student",
    "Outstanding Student",
    "Outstanding Graduate",
    "Student Officer",
    "Volunteer",
    "Social Practice",
    "Skill Certificate",
)

PUBLICATION_TIERS = ("A", "B", "C", "D")  # D doubles as "unknown venue"

PROJECT_ROLES = ("Manager", "Participant")


@dataclass(frozen=True)
class SectionSchema:
    """Fixed, ordered attribute layout of one screening section."""

    section: str
    attribute_names: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.attribute_names)

    def index(self, name: str) -> int:
        return self.attribute_names.index(name)


_EB_ATTRS = ("CET-4", "CET-6", "TOEFL", "IELTS") + SHARED_ATTRIBUTES

_COM_ATTRS = (
    "School Award",
    "Provincial Award",
    "National Award",
    "International Award",
    "Mathematics Competition",
    "English Competition",
    "Computer Competition",
    "Chemistry Competition",
    "Electronics Competition",
    "Mechanical Competition",
    "Physics Competition",
    "Biology Competition",
    "Innovation and Entrepreneurship Competition",
    "Other Competition",
) + SHARED_ATTRIBUTES

_HO_ATTRS = (
    "School Honor",
    "Provincial Honor",
    "National Honor",
    "International Honor",
    "Scholarship",
    "Excellent Student",
    "Outstanding Student",
    "Outstanding Graduate",
    "Student Officer",
    "Volunteer",
    "Social Practice",
    "Skill Certificate",
) + SHARED_ATTRIBUTES

_EXA_ATTRS = (
    "A-tier Publication",
    "B-tier Publication",
    "C-tier Publication",
    "D-tier Publication",
    "Projects",
    "Project Manager",
    "Project Participant",
) + SHARED_ATTRIBUTES

SECTION_SCHEMAS: dict[str, SectionSchema] = {
    "EB": SectionSchema("EB", _EB_ATTRS),
    "Com": SectionSchema("Com", _COM_ATTRS),
    "Ho": SectionSchema("Ho", _HO_ATTRS),
    "ExA": SectionSchema("ExA", _EXA_ATTRS),
}

assert SECTION_SCHEMAS["EB"].size == 6
assert SECTION_SCHEMAS["Com"].size == 16
assert SECTION_SCHEMAS["Ho"].size == 14
assert SECTION_SCHEMAS["ExA"].size == 9


def schema_for(section: str) -> SectionSchema:
    from .errors import BadEnum

    try:
        return SECTION_SCHEMAS[section]
    except KeyError:
        raise BadEnum("section", section, SECTIONS) from None
