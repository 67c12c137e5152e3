"""Command-line interface: batch counterparts of the interactive service.

Subcommands: ingest, validate, stats, train, predict, report, replay, serve.
Output is machine-readable JSON by default (``--pretty`` for humans); the
report command additionally renders figures next to its CSV/JSON outputs.
Failures print one JSON error record to stderr and exit 2 (validation) or
3 (runtime).  Randomness only ever enters through ``--seed`` / config —
never the wall clock.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .attributes import derive_group_attributes
from .config import Config, load_config
from .embedding import EmbeddingConfig, build_layout
from .errors import ScorelensError, ValidationError
from .inconsistency import classify_deviations, find_inversions, flag_time_anomalies
from .ranking import (
    fit_preference_model,
    map_to_scores,
    model_document,
    model_from_document,
    model_hash,
    predict_values,
    top_attributes,
)
from .records import load_group, load_rank_tables
from .reporting import (
    indicator_document,
    inconsistency_document,
    layout_document,
    render_indicator_figure,
    render_layout_figure,
    render_score_histograms,
    render_time_bars,
    score_histograms,
    write_anomalies_csv,
    write_csv,
    write_deviations_csv,
    write_inversions_csv,
    write_json,
    write_predictions_csv,
)
from .schema import SCHEMA_VERSION, SECTIONS
from .stats import indicator_set, section_durations
from .events import read_log, replay, revision_stats

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


def _emit(document: dict, pretty: bool, out: str | None = None) -> None:
    if pretty:
        text = json.dumps(document, indent=2, sort_keys=True)
    else:
        text = json.dumps(document, sort_keys=True, separators=(",", ":"))
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _load_scores(args) -> dict[int, dict[str, int]]:
    """Scores come from a replayed session log or a scores document."""
    if getattr(args, "log", None):
        return replay(read_log(args.log))
    if getattr(args, "scores", None):
        with open(args.scores, encoding="utf-8") as fh:
            raw = json.load(fh)
        if raw.get("format") != "scores-v1":
            raise ValidationError(f"unsupported scores format {raw.get('format')!r}")
        sheet = {}
        for app_id, row in raw["scores"].items():
            for section, value in row.items():
                if section not in SECTIONS or not 0 <= int(value) <= 5:
                    raise ValidationError(
                        f"bad score entry {section}={value!r} for app {app_id}"
                    )
            sheet[int(app_id)] = {s: int(v) for s, v in row.items()}
        return sheet
    raise ValidationError("provide --log or --scores")


def cmd_validate(args, config: Config) -> dict:
    group = load_group(args.group)
    document = {
        "format": "validate-v1",
        "group_id": group.group_id,
        "applications": len(group.applications),
        "valid": True,
    }
    if args.tables:
        tables = load_rank_tables(args.tables)
        document["tables"] = {
            "schools": len(tables.school_rank),
            "venues": len(tables.publication_tier),
            "competitions": len(tables.competition_levels),
        }
    return document


def cmd_ingest(args, config: Config) -> dict:
    group = load_group(args.group)
    tables = load_rank_tables(args.tables)
    out_dir = Path(args.out or config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    store = {
        "format": "store-v1",
        "schema_version": SCHEMA_VERSION,
        "group_id": group.group_id,
        "applications": len(group.applications),
        "vectors": {},
    }
    for section in SECTIONS:
        vectors = derive_group_attributes(group.applications, tables, section)
        store["vectors"][section] = {str(v.app_id): list(v.values) for v in vectors}
    write_json(out_dir / "store.json", store)
    return {"format": "ingest-v1", "group_id": group.group_id,
            "applications": len(group.applications),
            "store": str(out_dir / "store.json")}


def cmd_stats(args, config: Config) -> dict:
    group = load_group(args.group)
    tables = load_rank_tables(args.tables)
    indicators = indicator_set(list(group.applications), tables,
                               selected_app_id=args.selected)
    return indicator_document(indicators, group_id=group.group_id)


def cmd_train(args, config: Config) -> dict:
    group = load_group(args.group)
    tables = load_rank_tables(args.tables)
    sheet = _load_scores(args)
    vectors = derive_group_attributes(group.applications, tables, args.section)
    scores = {a.app_id: sheet.get(a.app_id, {}).get(args.section, 0)
              for a in group.applications}
    training_ids = [int(x) for x in args.samples.split(",") if x.strip()]
    model = fit_preference_model(
        args.section, vectors, scores, training_ids,
        C=args.C if args.C is not None else config.C,
        seed=args.seed if args.seed is not None else config.seed,
    )
    document = {
        "format": "trained-model-v1",
        "model_version": model_hash(model),
        "model": model_document(model),
        "top_attributes": [{"name": n, "weight": w} for n, w in top_attributes(model)],
    }
    if args.out:
        write_json(Path(args.out), document)
    return document


def _predictions_for(model, group, tables, sheet):
    section = model.section
    vectors = derive_group_attributes(group.applications, tables, section)
    app_ids = [a.app_id for a in group.applications]
    human = [sheet.get(a, {}).get(section, 0) for a in app_ids]
    values = predict_values(model, vectors)
    preds = map_to_scores(values, human, model.training_scores, app_ids=app_ids)
    return app_ids, human, preds


def cmd_predict(args, config: Config) -> dict:
    group = load_group(args.group)
    tables = load_rank_tables(args.tables)
    sheet = _load_scores(args)
    with open(args.model, encoding="utf-8") as fh:
        model_doc = json.load(fh)
    model = model_from_document(model_doc.get("model", model_doc))
    _, _, preds = _predictions_for(model, group, tables, sheet)
    return {
        "format": "predictions-v1",
        "section": model.section,
        "model_version": model_hash(model),
        "predictions": [
            {"app_id": p.app_id, "v": p.v, "s_prime": round(p.s_prime, 2)} for p in preds
        ],
    }


def cmd_report(args, config: Config) -> dict:
    group = load_group(args.group)
    tables = load_rank_tables(args.tables)
    sheet = _load_scores(args)
    out_dir = Path(args.out or config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    figures_dir = out_dir / "figures"
    figures_dir.mkdir(exist_ok=True)
    tau = args.tau if args.tau is not None else config.tau
    seed = args.seed if args.seed is not None else config.seed

    report: dict = {
        "format": "report-v1",
        "schema_version": SCHEMA_VERSION,
        "group_id": group.group_id,
        "tau": tau,
        "score_histograms": score_histograms(sheet),
        "sections": {},
    }

    indicators = indicator_set(list(group.applications), tables)
    write_json(out_dir / "stats.json", indicator_document(indicators, group.group_id))
    render_indicator_figure(indicators, figures_dir / "indicators.png")
    render_score_histograms(sheet, figures_dir / "score_histograms.png")
    write_csv(
        out_dir / "kurtosis.csv",
        ("section", "assigned", "kurtosis"),
        [(s, h["assigned"], "" if h["kurtosis"] is None else repr(h["kurtosis"]))
         for s, h in report["score_histograms"].items()],
    )

    durations = []
    anomalies = []
    if getattr(args, "log", None):
        events = read_log(args.log)
        durations = section_durations(events)
        render_time_bars(durations, figures_dir / "time_bars.png")
        for section in SECTIONS:
            section_d = [d for d in durations if d.section == section]
            if len(section_d) >= 4:
                anomalies.extend(flag_time_anomalies(section_d))
        write_anomalies_csv(out_dir / "time_anomalies.csv", anomalies)
        report["time_anomalies"] = len(anomalies)

    all_deviations = []
    all_predictions = []
    for model_path in args.model or []:
        with open(model_path, encoding="utf-8") as fh:
            model_doc = json.load(fh)
        model = model_from_document(model_doc.get("model", model_doc))
        section = model.section
        app_ids, human, preds = _predictions_for(model, group, tables, sheet)
        s_primes = [p.s_prime for p in preds]
        deviations = classify_deviations(app_ids, human, s_primes, section, tau=tau)
        inversions = find_inversions(app_ids, human, s_primes)
        section_anomalies = [a for a in anomalies if a.section == section]
        report["sections"][section] = inconsistency_document(
            section, deviations, inversions, section_anomalies,
            model_hash(model), tau,
        )
        all_deviations.extend(deviations)
        all_predictions.extend(preds)
        write_inversions_csv(out_dir / f"inversions-{section}.csv", section, inversions)

        scores_by_id = dict(zip(app_ids, human))
        layout = build_layout(
            derive_group_attributes(group.applications, tables, section),
            scores_by_id,
            EmbeddingConfig(perplexity=args.perplexity or config.perplexity, seed=seed),
        )
        write_json(out_dir / f"layout-{section}.json", layout_document(layout))
        render_layout_figure(layout, deviations, scores_by_id,
                             {p.app_id: p.s_prime for p in preds},
                             figures_dir / f"layout-{section}.png")

    if all_deviations:
        write_deviations_csv(out_dir / "deviations.csv", all_deviations)
    if all_predictions:
        write_predictions_csv(out_dir / "predictions.csv", all_predictions)

    write_json(out_dir / "report.json", report)
    return {"format": "report-summary-v1", "out": str(out_dir),
            "sections": sorted(report["sections"]),
            "figures": sorted(p.name for p in figures_dir.iterdir())}


def cmd_replay(args, config: Config) -> dict:
    events = read_log(args.log)
    sheet = replay(events)
    durations = section_durations(events)
    revisions = revision_stats(events)
    return {
        "format": "replay-v1",
        "events": len(events),
        "sheet": {str(a): row for a, row in sorted(sheet.items())},
        "durations": [
            {"app_id": d.app_id, "section": d.section, "seconds": d.seconds}
            for d in durations
        ],
        "revisions": {
            "per_key": {f"{a}:{s}": n for (a, s), n in sorted(revisions.per_key.items())},
            "per_app_average": {str(a): v for a, v in sorted(revisions.per_app_average.items())},
        },
    }


def cmd_serve(args, config: Config) -> dict:
    import uvicorn

    from .service import create_app

    if args.static:
        config.static_dir = args.static
    if args.seed is not None:
        config.seed = args.seed
    app = create_app(args.group, args.tables, args.session, config)
    uvicorn.run(app, host=args.host or config.host, port=args.port or config.port)
    return {"format": "serve-v1"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scorelens")
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, tables_required=True):
        p.add_argument("--group", required=True, help="application group file")
        p.add_argument("--tables", required=tables_required, help="rank tables file")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None)

    p = sub.add_parser("validate", help="validate a group (and optionally tables) file")
    p.add_argument("--group", required=True)
    p.add_argument("--tables", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("ingest", help="validate and store derived attribute vectors")
    add_common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="export the 12-indicator statistics document")
    add_common(p)
    p.add_argument("--selected", type=int, default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("train", help="train a section preference model")
    add_common(p)
    p.add_argument("--section", required=True, choices=SECTIONS)
    p.add_argument("--samples", required=True, help="comma-separated training app ids")
    p.add_argument("--scores", default=None, help="scores document (scores-v1)")
    p.add_argument("--log", default=None, help="session log to replay for scores")
    p.add_argument("--C", type=float, default=None)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="predict scores for the whole group")
    add_common(p)
    p.add_argument("--model", required=True, help="trained model document")
    p.add_argument("--scores", default=None)
    p.add_argument("--log", default=None)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("report", help="write the inconsistency + kurtosis report with figures")
    add_common(p)
    p.add_argument("--scores", default=None)
    p.add_argument("--log", default=None)
    p.add_argument("--model", action="append", default=None,
                   help="trained model document (repeatable, one per section)")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--perplexity", type=float, default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("replay", help="replay a session log into sheet + durations")
    p.add_argument("--log", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--group", required=True)
    p.add_argument("--tables", required=True)
    p.add_argument("--session", required=True, help="session log path")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--static", default=None, help="built web-client directory to serve at /")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if args.config else Config()
        document = args.func(args, config)
    except (ValidationError, FileNotFoundError, json.JSONDecodeError) as exc:
        code = getattr(exc, "code", "validation")
        json.dump({"error": {"code": code, "message": str(exc)}}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_VALIDATION
    except ScorelensError as exc:
        json.dump({"error": {"code": exc.code, "message": str(exc)}}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_RUNTIME
    _emit(document, args.pretty, getattr(args, "out", None) if args.command in
          ("stats", "predict", "replay", "validate") else None)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
