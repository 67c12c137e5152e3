import numpy as np
import pytest

from scorelens.attributes import AttributeVector, model_matrix
from scorelens.ranking import Normalization
from scorelens.records import parse_group, parse_rank_tables
from scorelens.synth import make_group, make_scores, make_tables


def full_record(app_id: int = 1) -> dict:
    """One structurally complete application record for parsing tests."""
    return {
        "app_id": app_id,
        "name": f"Applicant {app_id:03d}",
        "basic": {
            "gender": "F",
            "hometown": "Springdale",
            "school": "Northgate University",
            "major": "Computer Science",
            "skills": ["Python", "LaTeX"],
        },
        "education": {
            "gpa": 3.7,
            "student_rank": 5,
            "class_size": 120,
            "cet4": 580,
            "cet6": 540,
            "courses": [{"name": "Data Structures", "grade": "92"}],
        },
        "competitions": [
            {"name": "National Mathematical Modeling Contest", "level": "National",
             "time": "2022-09", "award": "First Prize"},
            {"name": "Physics Olympiad", "level": "Provincial",
             "time": "2021-11", "award": "Second Prize"},
        ],
        "honors": [
            {"name": "National Scholarship", "level": "National",
             "category": "Scholarship", "time": "2022"},
        ],
        "activities": {
            "projects": [
                {"name": "Campus App", "role": "team leader", "time": "2023",
                 "description": "led a four-person team"},
            ],
            "papers": [
                {"title": "A Study", "publication": "CHI", "author_order": 2,
                 "tier": "A", "summary": ""},
            ],
            "other": [{"name": "Open Day Guide", "time": "2023"}],
        },
    }


@pytest.fixture(scope="session")
def tables():
    return parse_rank_tables(make_tables())


@pytest.fixture(scope="session")
def group40():
    return parse_group(make_group(n=40, seed=7))


@pytest.fixture(scope="session")
def sheet40():
    return make_scores(make_group(n=40, seed=7), make_tables())


def latent_group(seed: int, n: int = 40, M: int = 16, section: str = "Com",
                 noise: float = 0.5, levels: int = 5):
    """Synthetic group whose attributes share latent quality factors.

    Returns (vectors, true_utility, scores_by_id): scores are the hidden
    linear utility quantized into `levels` quantile bins.
    """
    rng = np.random.default_rng(seed)
    quality = rng.uniform(0, 1, size=(n, 2))
    loadings = rng.uniform(0.5, 2.0, size=(2, M))
    raw = np.maximum(quality @ loadings + noise * rng.uniform(0, 1, size=(n, M)), 0)
    vectors = [AttributeVector(app_id=i + 1, section=section, values=tuple(raw[i]))
               for i in range(n)]
    matrix = model_matrix(vectors, section)
    normalized = Normalization.fit(matrix).apply(matrix)
    w_true = rng.uniform(0.2, 1.0, M)
    utility = normalized @ w_true
    cuts = np.percentile(utility, np.linspace(0, 100, levels + 1)[1:-1])
    scores = {i + 1: int(1 + np.searchsorted(cuts, utility[i], side="right"))
              for i in range(n)}
    return vectors, utility, scores


def stratified_training_ids(scores: dict[int, int], k: int) -> list[int]:
    """Pick k sample ids cycling through score levels, lowest id first."""
    by_level: dict[int, list[int]] = {}
    for app_id in sorted(scores):
        by_level.setdefault(scores[app_id], []).append(app_id)
    picked: list[int] = []
    idx = 0
    while len(picked) < k:
        advanced = False
        for level in sorted(by_level):
            members = by_level[level]
            if idx < len(members) and len(picked) < k:
                picked.append(members[idx])
                advanced = True
        if not advanced:
            break
        idx += 1
    return picked
