import pytest

from scorelens.errors import BadEnum, MissingField, ValidationError
from scorelens.records import (
    GROUP_FORMAT_VERSION,
    TABLES_FORMAT_VERSION,
    _LEVEL_ALIASES,
    canonical_level,
    parse_application,
    parse_group,
    parse_rank_tables,
)

from conftest import full_record


def test_round_trip_identity():
    app = parse_application(full_record())
    assert app.app_id == 1
    assert app.basic.school == "Northgate University"
    assert app.education.student_rank == 5
    assert app.education.class_size == 120
    assert app.education.cet4 == 580
    assert app.education.toefl is None
    assert len(app.competitions) == 2
    assert app.competitions[0].level == "National"
    assert app.honors[0].category == "Scholarship"
    assert app.activities.projects[0].role == "team leader"
    assert app.activities.papers[0].tier == "A"


def test_missing_student_rank_names_path():
    record = full_record()
    del record["education"]["student_rank"]
    with pytest.raises(MissingField) as exc:
        parse_application(record)
    assert exc.value.path == "education.student_rank"


def test_level_alias_canonicalized():
    record = full_record()
    record["competitions"][0]["level"] = "Province"
    app = parse_application(record)
    assert app.competitions[0].level == "Provincial"


def test_level_alias_table_round_trips():
    # Exhaustive: every alias maps into the canonical set, and canonical
    # names map to themselves.
    for alias, expected in _LEVEL_ALIASES.items():
        assert canonical_level(alias, "x") == expected
        assert canonical_level(expected, "x") == expected
        assert canonical_level(alias.upper(), "x") == expected


def test_unknown_level_rejected():
    record = full_record()
    record["honors"][0]["level"] = "Galactic"
    with pytest.raises(BadEnum) as exc:
        parse_application(record)
    assert "honors[0].level" in str(exc.value)


def test_rank_exceeding_class_size_rejected():
    record = full_record()
    record["education"]["student_rank"] = 200
    with pytest.raises(ValidationError):
        parse_application(record)


def test_unknown_honor_category_becomes_other():
    record = full_record()
    record["honors"][0]["category"] = "Best Dressed"
    app = parse_application(record)
    assert app.honors[0].category == "Other"


def test_bad_tier_rejected_blank_tier_defaults_to_d():
    record = full_record()
    record["activities"]["papers"][0]["tier"] = ""
    assert parse_application(record).activities.papers[0].tier == "D"
    record["activities"]["papers"][0]["tier"] = "Z"
    with pytest.raises(BadEnum):
        parse_application(record)


def test_group_requires_unique_ids_and_version():
    doc = {
        "schema_version": GROUP_FORMAT_VERSION,
        "group_id": "g",
        "applications": [full_record(1), full_record(1)],
    }
    with pytest.raises(ValidationError, match="duplicate app_id"):
        parse_group(doc)
    doc["applications"] = [full_record(1)]
    doc["schema_version"] = "group-v999"
    with pytest.raises(ValidationError, match="schema_version"):
        parse_group(doc)


def test_rank_tables_validation():
    good = {
        "schema_version": TABLES_FORMAT_VERSION,
        "school_rank": {"A University": 1, "B University": 200},
        "publication_tier": {"CHI": "a"},
        "competition_levels": {"Physics Olympiad": "provincial"},
    }
    tables = parse_rank_tables(good)
    assert tables.publication_tier["CHI"] == "A"
    assert tables.competition_levels["Physics Olympiad"] == "Provincial"
    bad = dict(good, school_rank={"C University": 0})
    with pytest.raises(ValidationError):
        parse_rank_tables(bad)
    bad = dict(good, school_rank={"C University": 201})
    with pytest.raises(ValidationError):
        parse_rank_tables(bad)
