"""HTTP boundary: one session over one application group.

The service wires the library into the interactive workflow: scoring posts
append to the session log, training snapshots a preference model per
section, and the summary/layout/stats endpoints assemble read-only views.
Mutations serialize through the session store's single-writer lock; reads
are side-effect free and repeatable.  Timestamps are server-assigned so
duration math stays trustworthy.
"""

from __future__ import annotations

import threading
from dataclasses import asdict
from pathlib import Path

from fastapi import Depends, FastAPI, Header, HTTPException, Query
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .attributes import derive_attributes, derive_group_attributes
from .config import Config
from .embedding import ComparisonLayout, EmbeddingConfig, build_layout
from .errors import (
    AllTied,
    NoScoredApps,
    ScorelensError,
    SessionClosed,
    TooFewPoints,
    TooFewSamples,
    ValidationError,
)
from .inconsistency import classify_deviations, find_inversions
from .ranking import (
    PreferenceModel,
    fit_preference_model,
    map_to_scores,
    model_document,
    model_hash,
    predict_values,
    top_attributes,
)
from .records import load_group, load_rank_tables
from .reporting import indicator_document, layout_document
from .schema import SCHEMA_VERSION, SECTIONS, schema_for
from .stats import box_stats, indicator_set, section_durations
from .events import SessionStore


class ScorePost(BaseModel):
    model_config = ConfigDict(extra="forbid")
    app_id: int
    section: str
    score: int = Field(ge=0, le=5)
    origin: str = "Manual"


class TrainRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    section: str
    app_ids: list[int]
    C: float | None = None
    seed: int | None = None
    session_token: str | None = None


class SubmitRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    phase: str


class ServiceState:
    def __init__(self, group_path: str, tables_path: str, session_path: str, config: Config):
        self.config = config
        self.group = load_group(group_path)
        self.tables = load_rank_tables(tables_path)
        self.store = SessionStore(Path(session_path), session_id=self.group.group_id)
        self.vectors = {
            section: derive_group_attributes(self.group.applications, self.tables, section)
            for section in SECTIONS
        }
        self.models: dict[str, tuple[PreferenceModel, str]] = {}
        self._training: set[str] = set()
        self._training_lock = threading.Lock()
        self._layout_cache: dict[tuple, ComparisonLayout] = {}

    def scores_for(self, section: str) -> dict[int, int]:
        sheet = self.store.sheet()
        return {
            app.app_id: sheet.get(app.app_id, {}).get(section, 0)
            for app in self.group.applications
        }

    def begin_training(self, section: str) -> None:
        with self._training_lock:
            if section in self._training:
                raise HTTPException(409, detail={"code": "training_in_progress",
                                                 "message": f"training already running for {section}"})
            self._training.add(section)

    def end_training(self, section: str) -> None:
        with self._training_lock:
            self._training.discard(section)

    def layout_for(self, section: str) -> ComparisonLayout:
        scores = self.scores_for(section)
        key = (section, tuple(sorted(scores.items())),
               self.config.perplexity, self.config.seed)
        if key not in self._layout_cache:
            config = EmbeddingConfig(perplexity=self.config.perplexity, seed=self.config.seed)
            self._layout_cache[key] = build_layout(self.vectors[section], scores, config)
        return self._layout_cache[key]


def _http_error(exc: ScorelensError, status: int) -> HTTPException:
    return HTTPException(status, detail={"code": exc.code, "message": str(exc)})


def create_app(group_path: str, tables_path: str, session_path: str,
               config: Config | None = None) -> FastAPI:
    config = config or Config()
    state = ServiceState(group_path, tables_path, session_path, config)
    app = FastAPI(title="scorelens", version=__version__)
    app.state.scorelens = state

    def check_token(x_session_token: str | None = Header(default=None)):
        if config.session_token and x_session_token != config.session_token:
            raise HTTPException(401, detail={"code": "bad_token", "message": "invalid session token"})

    def envelope(payload: dict) -> dict:
        return {"schema_version": SCHEMA_VERSION, **payload}

    @app.get("/group")
    def get_group(_=Depends(check_token)):
        sheet = state.store.sheet()
        return envelope({
            "group_id": state.group.group_id,
            "phase": state.store.phase,
            "applications": [
                {
                    "app_id": a.app_id,
                    "name": a.name,
                    "school": a.basic.school,
                    "major": a.basic.major,
                    "scores": sheet.get(a.app_id, {s: 0 for s in SECTIONS}),
                }
                for a in state.group.applications
            ],
        })

    @app.get("/applications/{app_id}")
    def get_application(app_id: int, _=Depends(check_token)):
        by_id = state.group.by_id()
        if app_id not in by_id:
            raise HTTPException(404, detail={"code": "unknown_app", "message": f"no application {app_id}"})
        application = by_id[app_id]
        sheet = state.store.sheet()
        score_stats = {}
        for section in SECTIONS:
            assigned = [s.get(section, 0) for s in sheet.values() if s.get(section, 0) != 0]
            if assigned:
                box = box_stats(assigned)
                score_stats[section] = asdict(box) | {"outliers": list(box.outliers)}
            else:
                score_stats[section] = None
        return envelope({
            "application": asdict(application),
            "attributes": {
                section: dict(zip(
                    schema_for(section).attribute_names,
                    derive_attributes(application, state.tables, section).values,
                ))
                for section in SECTIONS
            },
            "sheet": {"scores": sheet.get(app_id, {s: 0 for s in SECTIONS})},
            "score_box_stats": score_stats,
        })

    @app.post("/scores")
    def post_score(body: ScorePost, _=Depends(check_token)):
        if body.section not in SECTIONS:
            raise HTTPException(422, detail={"code": "bad_enum", "message": f"unknown section {body.section!r}"})
        if body.app_id not in state.group.by_id():
            raise HTTPException(404, detail={"code": "unknown_app", "message": f"no application {body.app_id}"})
        try:
            seq = state.store.append(body.app_id, body.section, body.score, origin=body.origin)
        except SessionClosed as exc:
            raise _http_error(exc, 409)
        except ValidationError as exc:
            raise _http_error(exc, 422)
        state._layout_cache.clear()
        return envelope({"seq": seq})

    @app.post("/model/train")
    def train_model(body: TrainRequest, _=Depends(check_token)):
        if body.section not in SECTIONS:
            raise HTTPException(422, detail={"code": "bad_enum", "message": f"unknown section {body.section!r}"})
        state.begin_training(body.section)
        try:
            scores = state.scores_for(body.section)
            model = fit_preference_model(
                body.section,
                state.vectors[body.section],
                scores,
                body.app_ids,
                C=body.C if body.C is not None else state.config.C,
                seed=body.seed if body.seed is not None else state.config.seed,
            )
        except (TooFewSamples, AllTied, ValidationError) as exc:
            raise _http_error(exc, 422)
        finally:
            state.end_training(body.section)
        version = model_hash(model)
        state.models[body.section] = (model, version)
        return envelope({
            "section": body.section,
            "model_version": version,
            "top_attributes": [{"name": n, "weight": w} for n, w in top_attributes(model)],
            "training_ids": list(model.training_ids),
            "converged": model.converged,
            "iterations": model.iterations,
        })

    @app.get("/model/{section}")
    def get_model(section: str, _=Depends(check_token)):
        if section not in state.models:
            raise HTTPException(404, detail={"code": "no_model", "message": f"no model trained for {section}"})
        model, version = state.models[section]
        return envelope({"model_version": version, "model": model_document(model)})

    @app.get("/summary")
    def get_summary(
        section: str = Query(...),
        tau: float | None = Query(default=None, gt=0),
        sort: str = Query(default="app_id"),
        order: str = Query(default="asc"),
        _=Depends(check_token),
    ):
        if section not in SECTIONS:
            raise HTTPException(422, detail={"code": "bad_enum", "message": f"unknown section {section!r}"})
        tau_value = tau if tau is not None else state.config.tau
        sheet = state.store.sheet()
        durations = section_durations(state.store.events())
        seconds: dict[int, dict[str, float]] = {}
        for d in durations:
            seconds.setdefault(d.app_id, {})[d.section] = d.seconds

        app_ids = [a.app_id for a in state.group.applications]
        human = [sheet.get(a, {}).get(section, 0) for a in app_ids]

        model_entry = state.models.get(section)
        predictions_by_id: dict[int, float] = {}
        deviations = []
        inversions = []
        report = []
        model_version = None
        if model_entry is not None:
            model, model_version = model_entry
            values = predict_values(model, state.vectors[section])
            preds = map_to_scores(values, human, model.training_scores, app_ids=app_ids)
            predictions_by_id = {p.app_id: p.s_prime for p in preds}
            s_primes = [p.s_prime for p in preds]
            deviations = classify_deviations(app_ids, human, s_primes, section, tau=tau_value)
            inversions = find_inversions(app_ids, human, s_primes)
            report = [{"name": n, "weight": w} for n, w in top_attributes(model)]

        rows = []
        for a in state.group.applications:
            row = {
                "app_id": a.app_id,
                "name": a.name,
                "durations": {s: seconds.get(a.app_id, {}).get(s, 0.0) for s in SECTIONS},
                "scores": sheet.get(a.app_id, {s: 0 for s in SECTIONS}),
            }
            if model_entry is not None:
                row["mitigate"] = predictions_by_id.get(a.app_id, 0.0)
            rows.append(row)

        def sort_key(row):
            if sort == "mitigate":
                return row.get("mitigate", 0.0)
            if sort in SECTIONS:
                return row["scores"].get(sort, 0)
            if sort == "time":
                return sum(row["durations"].values())
            if sort == "name":
                return row["name"]
            return row["app_id"]

        rows.sort(key=lambda r: (sort_key(r), r["app_id"]), reverse=(order == "desc"))

        return envelope({
            "section": section,
            "tau": tau_value,
            "phase": state.store.phase,
            "model_version": model_version,
            "rows": rows,
            "deviations": [asdict(d) for d in deviations],
            "inversions": [asdict(p) for p in inversions],
            "attribute_report": report,
            "layout_ref": f"/layout?section={section}",
        })

    @app.get("/layout")
    def get_layout(section: str = Query(...), _=Depends(check_token)):
        if section not in SECTIONS:
            raise HTTPException(422, detail={"code": "bad_enum", "message": f"unknown section {section!r}"})
        try:
            layout = state.layout_for(section)
        except (NoScoredApps, TooFewPoints, ValidationError) as exc:
            raise _http_error(exc, 409)
        return envelope(layout_document(layout))

    @app.get("/stats")
    def get_stats(selected: int | None = Query(default=None), _=Depends(check_token)):
        indicators = indicator_set(list(state.group.applications), state.tables,
                                   selected_app_id=selected)
        return envelope(indicator_document(indicators, group_id=state.group.group_id))

    @app.post("/submit")
    def submit(body: SubmitRequest, _=Depends(check_token)):
        try:
            snapshot = state.store.submit(
                body.phase,
                model_versions={s: v for s, (_, v) in state.models.items()},
            )
        except SessionClosed as exc:
            raise _http_error(exc, 409)
        return envelope({
            "phase": snapshot.phase,
            "submitted_at": snapshot.submitted_at,
            "snapshot_id": f"{state.group.group_id}-{snapshot.phase}",
        })

    if config.static_dir and Path(config.static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app
