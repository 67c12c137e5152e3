"""Derivation of per-section attribute vectors from application records.

``derive_attributes`` is pure: identical inputs produce bit-identical
vectors, and list order inside a record never matters (everything is
aggregation by counting or lookup).

Conventions baked into schema version ``sections-v1``:

* Student Rank is stored as the class percentile ``1 - (rank - 0.5) / size``,
  bounded in (0, 1), higher is better.
* School Rank is stored raw: the 1..200 table rank, or sentinel 201 when the
  school is not in the table.  :func:`model_matrix` flips it to
  ``201 - rank`` so model input is uniformly higher-is-better.
* Absent language-test scores become 0 so vectors stay dense; absence is
  itself informative to the model.
* Competition levels and publication tiers found in the reference tables
  override whatever the record carries; the tables are the vetted source.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import classify_competition, classify_project_role
from .errors import BadEnum
from .records import Application, RankTables
from .schema import (
    LEVELS,
    PUBLICATION_TIERS,
    SCHOOL_RANK_UNKNOWN,
    SECTION_SCHEMAS,
    schema_for,
)


@dataclass(frozen=True)
class AttributeVector:
    """Numeric attributes of one application for one section, schema order."""

    app_id: int
    section: str
    values: tuple[float, ...]


def student_rank_percentile(rank: int, class_size: int) -> float:
    return 1.0 - (rank - 0.5) / class_size


def school_rank_of(app: Application, tables: RankTables) -> int:
    """Table rank of the applicant's school, sentinel 201 when unlisted."""
    return tables.school_rank.get(app.basic.school, SCHOOL_RANK_UNKNOWN)


def competition_level_of(name: str, recorded: str, tables: RankTables) -> str:
    return tables.competition_levels.get(name, recorded)


def publication_tier_of(venue: str, recorded: str, tables: RankTables) -> str:
    return tables.publication_tier.get(venue, recorded)


def derive_attributes(app: Application, tables: RankTables, section: str) -> AttributeVector:
    schema = schema_for(section)
    values = dict.fromkeys(schema.attribute_names, 0.0)

    values["School Rank"] = float(school_rank_of(app, tables))
    values["Student Rank"] = student_rank_percentile(
        app.education.student_rank, app.education.class_size
    )

    if section == "EB":
        edu = app.education
        values["CET-4"] = float(edu.cet4 or 0)
        values["CET-6"] = float(edu.cet6 or 0)
        values["TOEFL"] = float(edu.toefl or 0)
        values["IELTS"] = float(edu.ielts or 0)

    elif section == "Com":
        for comp in app.competitions:
            level = competition_level_of(comp.name, comp.level, tables)
            values[f"{level} Award"] += 1.0
            subject = classify_competition(comp.name)
            if subject == "InnovationEntrepreneurship":
                values["Innovation and Entrepreneurship Competition"] += 1.0
            else:
                values[f"{subject} Competition"] += 1.0

    elif section == "Ho":
        for honor in app.honors:
            values[f"{honor.level} Honor"] += 1.0
            if honor.category in values:
                values[honor.category] += 1.0

    elif section == "ExA":
        for paper in app.activities.papers:
            tier = publication_tier_of(paper.publication, paper.tier, tables)
            values[f"{tier}-tier Publication"] += 1.0
        for project in app.activities.projects:
            values["Projects"] += 1.0
            values[f"Project {classify_project_role(project.role)}"] += 1.0

    return AttributeVector(
        app_id=app.app_id,
        section=section,
        values=tuple(values[name] for name in schema.attribute_names),
    )


def derive_group_attributes(
    apps: tuple[Application, ...] | list[Application],
    tables: RankTables,
    section: str,
) -> list[AttributeVector]:
    return [derive_attributes(app, tables, section) for app in apps]


def model_matrix(vectors: list[AttributeVector], section: str) -> np.ndarray:
    """Stack vectors into an (n, M) model-input matrix.

    Applies the School Rank direction flip (``201 - rank``) so every column
    reads higher-is-better before normalization.
    """
    schema = schema_for(section)
    for vec in vectors:
        if vec.section != section or len(vec.values) != schema.size:
            raise BadEnum("vectors.section", vec.section, (section,))
    matrix = np.array([v.values for v in vectors], dtype=np.float64)
    col = schema.index("School Rank")
    matrix[:, col] = SCHOOL_RANK_UNKNOWN - matrix[:, col]
    return matrix


def indicator_series(
    apps: tuple[Application, ...] | list[Application], tables: RankTables
) -> dict[str, list[float]]:
    """The 12 group-level indicator series backing the statistical view.

    Composition (fixed with the schema version): school rank (raw, lower is
    better), normalized student rank, one count series per competition level,
    one per honor level, publication count, and best publication tier mapped
    A=4 .. D=1 (0 when the applicant has no publications).
    """
    tier_value = {t: v for t, v in zip(PUBLICATION_TIERS, (4.0, 3.0, 2.0, 1.0))}
    series: dict[str, list[float]] = {
        "School Rank": [],
        "Student Rank": [],
        **{f"{level} Award": [] for level in LEVELS},
        **{f"{level} Honor": [] for level in LEVELS},
        "Publication Count": [],
        "Best Publication Tier": [],
    }
    com_schema = SECTION_SCHEMAS["Com"]
    ho_schema = SECTION_SCHEMAS["Ho"]
    for app in apps:
        series["School Rank"].append(float(school_rank_of(app, tables)))
        series["Student Rank"].append(
            student_rank_percentile(app.education.student_rank, app.education.class_size)
        )
        com = derive_attributes(app, tables, "Com").values
        for level in LEVELS:
            series[f"{level} Award"].append(com[com_schema.index(f"{level} Award")])
        ho = derive_attributes(app, tables, "Ho").values
        for level in LEVELS:
            series[f"{level} Honor"].append(ho[ho_schema.index(f"{level} Honor")])
        series["Publication Count"].append(float(len(app.activities.papers)))
        best = 0.0
        for paper in app.activities.papers:
            tier = publication_tier_of(paper.publication, paper.tier, tables)
            best = max(best, tier_value[tier])
        series["Best Publication Tier"].append(best)
    return series
