"""Deterministic synthetic fixtures: a 40-applicant group with rank tables,
a fully scored sheet driven by a known linear utility, and a scoring log.

Everything is seeded, so regenerating with the same seed reproduces the
same documents.  The scores are quantized from a hidden per-section weight
vector over the normalized attributes — which makes the group a useful
rank-recovery benchmark, not just demo data.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .attributes import model_matrix
from .records import GROUP_FORMAT_VERSION, TABLES_FORMAT_VERSION, parse_group, parse_rank_tables
from .ranking import Normalization
from .schema import SECTIONS

_SCHOOLS = [
    "Northgate University", "Riverbend Institute of Technology", "Lakeshore University",
    "Summit Polytechnic", "Harborview University", "Clearwater College",
    "Ironwood University", "Maple Grove University", "Stonebridge Institute",
    "Eastfield University", "Villa Verde College", "Foxglove Technical School",
]

# Last two schools deliberately missing from the rank table (sentinel case).
_SCHOOL_RANKS = {name: rank for name, rank in zip(_SCHOOLS[:10], (3, 12, 25, 40, 58, 77, 95, 120, 150, 190))}

_MAJORS = ["Computer Science", "Electrical Engineering", "Applied Mathematics",
           "Information Science", "Automation", "Software Engineering"]

_HOMETOWNS = ["Springdale", "Brookhaven", "Fairmont", "Creston", "Midvale", "Oakton"]

_COMPETITIONS = [
    ("National Mathematical Modeling Contest", "National"),
    ("Provincial Mathematics Competition", "Provincial"),
    ("National English Competition for College Students", "National"),
    ("ACM-ICPC Regional Contest", "Provincial"),
    ("Blue Bridge Cup Programming Contest", "National"),
    ("Chemistry Experiment Skills Competition", "School"),
    ("National Electronic Design Contest", "National"),
    ("Mechanical Innovation Design Contest", "Provincial"),
    ("Physics Olympiad", "Provincial"),
    ("Biology Knowledge Contest", "School"),
    ("Internet+ Innovation and Entrepreneurship Competition", "National"),
    ("International Collegiate Programming Contest World Finals", "International"),
    ("XYZ Cup Challenge", "School"),
]

_HONORS = [
    ("National Scholarship", "National", "Scholarship"),
    ("Provincial Government Scholarship", "Provincial", "Scholarship"),
    ("Excellent Student Award", "School", "Excellent Student"),
    ("Outstanding Student of the Year", "School", "Outstanding Student"),
    ("Outstanding Graduate", "Provincial", "Outstanding Graduate"),
    ("Student Union Officer of Merit", "School", "Student Officer"),
    ("Red Cross Volunteer of the Year", "School", "Volunteer"),
    ("Summer Social Practice Commendation", "Provincial", "Social Practice"),
    ("Senior Software Tester Certificate", "School", "Skill Certificate"),
    ("International Youth Leadership Honor", "International", "Other"),
]

_VENUES = [("CHI", "A"), ("IEEE VIS", "A"), ("Pattern Recognition Letters", "B"),
           ("Journal of Visualization", "C"), ("Campus Tech Review", "D")]

_PROJECT_ROLES = ["team leader", "project manager", "core member", "member",
                  "developer", "research assistant"]

_SKILLS = ["Python", "C++", "MATLAB", "Spanish", "Photoshop", "LaTeX"]


def make_tables() -> dict:
    return {
        "schema_version": TABLES_FORMAT_VERSION,
        "school_rank": dict(_SCHOOL_RANKS),
        "publication_tier": {venue: tier for venue, tier in _VENUES if tier != "D"},
        "competition_levels": {name: level for name, level in _COMPETITIONS[:8]},
    }


def make_group(n: int = 40, seed: int = 7, group_id: str = "synthetic-40") -> dict:
    rng = np.random.default_rng(seed)
    applications = []
    for app_id in range(1, n + 1):
        class_size = int(rng.integers(30, 180))
        student_rank = int(rng.integers(1, class_size + 1))
        competitions = []
        for _ in range(int(rng.integers(0, 5))):
            name, level = _COMPETITIONS[int(rng.integers(len(_COMPETITIONS)))]
            competitions.append({
                "name": name, "level": level,
                "time": f"20{int(rng.integers(19, 24)):02d}-0{int(rng.integers(1, 10))}",
                "award": str(rng.choice(["First Prize", "Second Prize", "Third Prize"])),
            })
        honors = []
        for _ in range(int(rng.integers(0, 4))):
            name, level, category = _HONORS[int(rng.integers(len(_HONORS)))]
            honors.append({
                "name": name, "level": level, "category": category,
                "time": f"20{int(rng.integers(19, 24)):02d}",
            })
        papers = []
        for _ in range(int(rng.integers(0, 3)) if rng.random() < 0.45 else 0):
            venue, tier = _VENUES[int(rng.integers(len(_VENUES)))]
            papers.append({
                "title": f"Study {app_id}-{len(papers) + 1}",
                "publication": venue,
                "author_order": int(rng.integers(1, 4)),
                "tier": tier,
                "summary": "",
            })
        projects = []
        for _ in range(int(rng.integers(0, 4))):
            projects.append({
                "name": f"Project {app_id}-{len(projects) + 1}",
                "role": str(rng.choice(_PROJECT_ROLES)),
                "time": f"20{int(rng.integers(20, 24)):02d}",
                "description": "",
            })
        other = []
        if rng.random() < 0.3:
            other.append({"name": "Department Open Day Guide", "time": "2023"})
        education = {
            "gpa": round(float(rng.uniform(2.6, 4.0)), 2),
            "student_rank": student_rank,
            "class_size": class_size,
            "courses": [{"name": "Data Structures", "grade": str(int(rng.integers(70, 100)))}],
        }
        if rng.random() < 0.8:
            education["cet4"] = int(rng.integers(425, 660))
        if rng.random() < 0.6:
            education["cet6"] = int(rng.integers(425, 640))
        if rng.random() < 0.2:
            education["toefl"] = int(rng.integers(80, 115))
        if rng.random() < 0.15:
            education["ielts"] = round(float(rng.uniform(5.5, 8.0)) * 2) / 2
        applications.append({
            "app_id": app_id,
            "name": f"Applicant {app_id:03d}",
            "basic": {
                "gender": str(rng.choice(["F", "M"])),
                "hometown": str(rng.choice(_HOMETOWNS)),
                "school": str(rng.choice(_SCHOOLS)),
                "major": str(rng.choice(_MAJORS)),
                "skills": [str(s) for s in rng.choice(_SKILLS, size=2, replace=False)],
            },
            "education": education,
            "competitions": competitions,
            "honors": honors,
            "activities": {"projects": projects, "papers": papers, "other": other},
        })
    return {
        "schema_version": GROUP_FORMAT_VERSION,
        "group_id": group_id,
        "applications": applications,
    }


def utility_weights(section: str, size: int, seed: int = 11) -> np.ndarray:
    """The hidden per-section weights behind the synthetic reviewer's scores."""
    rng = np.random.default_rng(seed + sum(ord(c) for c in section))
    w = rng.uniform(0.2, 1.0, size=size)
    return w / np.linalg.norm(w)


def make_scores(group_doc: dict, tables_doc: dict, seed: int = 11) -> dict[int, dict[str, int]]:
    """Quantize each section's hidden linear utility into 1..5 quintile scores."""
    from .attributes import derive_group_attributes

    group = parse_group(group_doc)
    tables = parse_rank_tables(tables_doc)
    sheet: dict[int, dict[str, int]] = {a.app_id: {} for a in group.applications}
    for section in SECTIONS:
        vectors = derive_group_attributes(group.applications, tables, section)
        matrix = model_matrix(vectors, section)
        normalized = Normalization.fit(matrix).apply(matrix)
        utility = normalized @ utility_weights(section, matrix.shape[1], seed)
        cuts = np.percentile(utility, [20, 40, 60, 80])
        for vec, u in zip(vectors, utility):
            sheet[vec.app_id][section] = int(1 + np.searchsorted(cuts, u, side="right"))
    return sheet


def make_session_log(sheet: dict[int, dict[str, int]]) -> list[dict]:
    """A plausible scoring log realizing the sheet, with a few revisions."""
    events = []
    ts = 0
    seq = 0
    app_ids = sorted(sheet)
    for i, app_id in enumerate(app_ids):
        for k, section in enumerate(SECTIONS):
            ts += 12_000 + ((i * 7 + k * 5) % 23) * 1_000
            seq += 1
            events.append({
                "seq": seq, "timestamp": ts, "app_id": app_id,
                "section": section, "score": sheet[app_id][section], "origin": "Manual",
            })
    # Late revisions: revisit a handful of earlier apps, then restore the
    # sheet's final score so replay matches the scores document.
    for offset, app_id in enumerate(app_ids[2:14:4]):
        section = SECTIONS[offset % len(SECTIONS)]
        final = sheet[app_id][section]
        ts += 9_000 + offset * 2_000
        seq += 1
        events.append({"seq": seq, "timestamp": ts, "app_id": app_id,
                       "section": section, "score": max(1, final - 1), "origin": "Manual"})
        ts += 4_000
        seq += 1
        events.append({"seq": seq, "timestamp": ts, "app_id": app_id,
                       "section": section, "score": final, "origin": "Manual"})
    return events


def write_fixtures(out_dir: str | Path, n: int = 40, seed: int = 7) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    group_doc = make_group(n=n, seed=seed)
    tables_doc = make_tables()
    sheet = make_scores(group_doc, tables_doc)
    paths = {
        "group": out / "group40.json",
        "tables": out / "tables.json",
        "scores": out / "scores.json",
        "log": out / "session.log",
    }
    paths["group"].write_text(json.dumps(group_doc, indent=2, sort_keys=True), encoding="utf-8")
    paths["tables"].write_text(json.dumps(tables_doc, indent=2, sort_keys=True), encoding="utf-8")
    paths["scores"].write_text(
        json.dumps({"format": "scores-v1",
                    "scores": {str(a): s for a, s in sorted(sheet.items())}},
                   indent=2, sort_keys=True),
        encoding="utf-8",
    )
    header = {"format": "eventlog-v1", "session_id": "fixture", "created_at": 0}
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps(e, sort_keys=True) for e in make_session_log(sheet)]
    paths["log"].write_text("\n".join(lines) + "\n", encoding="utf-8")
    return paths
