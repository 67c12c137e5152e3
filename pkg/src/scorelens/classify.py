"""Deterministic keyword classifiers for competition subjects and project roles.

These replace the ad-hoc text-classification step of the original ingestion
pipeline with fixed rule tables.  Matching is case-insensitive substring
search; the first category whose keyword list hits wins, so the category
order below is part of the contract.  Anything unmatched falls through to
the catch-all.
"""

from __future__ import annotations

# The order matters: earlier categories win when a name mentions several
# subjects ("Mathematical Modeling and Data Challenge" is Mathematics).
_COMPETITION_RULES: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("Mathematics", ("math", "calculus", "modeling contest", "modelling contest")),
    ("English", ("english", "translation", "interpreting", "foreign language")),
    (
        "Computer",
        (
            "computer",
            "programming",
            "software",
            "algorithm",
            "informatics",
            "acm",
            "icpc",
            "data mining",
            "big data",
            "artificial intelligence",
            "cybersecurity",
            "network security",
        ),
    ),
    ("Chemistry", ("chemistry", "chemical")),
    ("Electronics", ("electronic", "circuit", "embedded", "microcontroller")),
    ("Mechanical", ("mechanic", "robot", "cad", "engineering drawing")),
    ("Physics", ("physics",)),
    ("Biology", ("biology", "biological", "life science", "biomedical")),
    (
        "InnovationEntrepreneurship",
        (
            "innovation",
            "entrepreneurship",
            "business plan",
            "startup",
            "internet+",
            "internet plus",
            "venture",
        ),
    ),
)

_MANAGER_KEYWORDS = (
    "lead",       # leader, team lead, project lead
    "manager",
    "head",
    "principal",
    "founder",
    "captain",
    "president",
    "director",
    "chief",
    "organizer",
    "supervisor",
)


def classify_competition(name: str) -> str:
    """Map a competition name to one of the fixed subject categories.

    Total function: unmatched names return ``"Other"``.  Callers validate
    that the name is nonempty before aggregation.
    """
    lowered = name.lower()
    for category, keywords in _COMPETITION_RULES:
        if any(k in lowered for k in keywords):
            return category
    return "Other"


def classify_project_role(role: str) -> str:
    """Classify a project role string as ``Manager`` or ``Participant``.

    Defaults to Participant so leadership is never over-credited on
    ambiguous text.
    """
    lowered = role.lower()
    if any(k in lowered for k in _MANAGER_KEYWORDS):
        return "Manager"
    return "Participant"
