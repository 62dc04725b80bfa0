"""Command-line interface.

Subcommands: ``profile build`` (offline generation pipeline), ``validate``
(document checks), ``analyze`` (one-shot assessment of a message file),
``eval`` (corpus evaluation with report files), ``serve`` (HTTP service).
Failures print a machine-readable JSON error to stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import date
from pathlib import Path

from . import __version__
from .agents.backends import BackendError, ChatBackend, MockBackend, OpenAICompatBackend
from .agents.pipeline import GenerationFailed, run_offline_pipeline, write_profile_dir
from .agents.prompts import GenerationInputs, InternalInformation, PublicSource
from .engine.assess import assess
from .evalharness.corpus import CorpusError, builtin_profile, load_corpus, load_manifest
from .evalharness.report import confusion_summary, format_table, write_report_files
from .evalharness.runner import run_eval
from .ingest.parser import ParseError, parse_email
from .profiles.canonical import canonicalize, parse_document
from .profiles.model import DOCUMENT_KINDS
from .profiles.validate import check_links, validate
from .service.app import create_app
from .service.config import load_config
from .service.maildrop import MaildropWatcher
from .service.store import Store


def _fail(code: str, message: str, details=None) -> int:
    body = {"error": {"code": code, "message": message}}
    if details is not None:
        body["error"]["details"] = details
    print(json.dumps(body, ensure_ascii=False, sort_keys=True), file=sys.stderr)
    return 1


def _make_backend(args) -> ChatBackend:
    if args.backend == "mock":
        return MockBackend(Path(args.fixtures))
    if args.backend == "openai":
        return OpenAICompatBackend(args.openai_base_url, args.openai_model)
    raise ValueError(f"unknown backend {args.backend!r}")


def _load_sources(path: str | None) -> tuple[PublicSource, ...]:
    if not path:
        return ()
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return tuple(
        PublicSource(source=str(d.get("source", "")), content_excerpt=str(d.get("content_excerpt", "")))
        for d in data
    )


def _load_internal(path: str | None) -> InternalInformation | None:
    if not path:
        return None
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return InternalInformation(
        roles=tuple(data.get("roles", ())),
        decision_authority=tuple(data.get("decision_authority", ())),
        approval_workflows=tuple(data.get("approval_workflows", ())),
        contact_routes=tuple(data.get("contact_routes", ())),
    )


def cmd_profile_build(args) -> int:
    inputs = GenerationInputs(
        target_name=args.name,
        organization=args.org,
        public_sources=_load_sources(args.sources),
        internal_information=_load_internal(args.internal),
    )
    try:
        backend = _make_backend(args)
        result = run_offline_pipeline(inputs, backend, max_repairs=args.max_repairs)
    except GenerationFailed as exc:
        return _fail(exc.code, str(exc), details=exc.report.to_dict())
    except (BackendError, ValueError) as exc:
        return _fail(getattr(exc, "code", "error"), str(exc))
    out_dir = Path(args.out) / result.pvp.target_id
    written = write_profile_dir(result, out_dir)
    for kind, path in written.items():
        print(f"{kind}: {path}")
    return 0


def cmd_validate(args) -> int:
    worst = 0
    for file_name in args.files:
        report = validate(Path(file_name).read_bytes(), args.kind)
        status = "ok" if report.valid else "invalid"
        print(f"{file_name}: {status}")
        for issue in report.errors:
            print(f"  {issue.path or '<root>'}: {issue.code}: {issue.message}")
            worst = 1
    return worst


def _load_trio(profiles: str, target_id: str):
    if profiles == "builtin":
        return builtin_profile()
    base = Path(profiles) / target_id
    pvp = parse_document((base / "pvp.json").read_bytes(), "pvp")
    scenarios = parse_document((base / "scenarios.json").read_bytes(), "scenario_set")
    pdp = parse_document((base / "pdp.json").read_bytes(), "pdp")
    return pvp, scenarios, pdp


def cmd_analyze(args) -> int:
    try:
        pvp, scenarios, pdp = _load_trio(args.profiles, args.target)
    except FileNotFoundError as exc:
        return _fail("unknown_target", f"profile trio not found: {exc}")
    link_report = check_links(pdp, pvp, scenarios)
    if not link_report.valid:
        return _fail("link_invalid", "stored trio fails link checking", link_report.to_dict())
    try:
        email = parse_email(Path(args.message).read_bytes())
    except ParseError as exc:
        return _fail("parse_error", str(exc), details={"byte_offset": exc.byte_offset})
    backend = None
    if args.mode == "hybrid":
        try:
            backend = _make_backend(args)
        except ValueError as exc:
            return _fail("bad_request", str(exc))
    analysis_date = date.fromisoformat(args.date) if args.date else None
    result = assess(
        email, pdp, scenarios, args.mode, backend=backend, analysis_date=analysis_date
    )
    sys.stdout.write(canonicalize(result).decode("utf-8"))
    return 0


def cmd_eval(args) -> int:
    try:
        corpus_path = None if args.corpus == "builtin" else Path(args.corpus)
        corpus = load_corpus(corpus_path)
        manifest = load_manifest(corpus_path)
    except CorpusError as exc:
        return _fail(exc.code, str(exc))
    pvp, scenarios, pdp = builtin_profile() if args.profiles == "builtin" else _load_trio(args.profiles, args.target)
    analysis_date = (
        date.fromisoformat(args.date)
        if args.date
        else date.fromisoformat(manifest.get("analysis_date", date.today().isoformat()))
    )
    report = run_eval(
        corpus,
        pdp,
        scenarios,
        analysis_date=analysis_date,
        corpus_version=str(manifest.get("corpus_version", "unversioned")),
    )
    print(format_table(report))
    print()
    print(confusion_summary(report))
    if args.out:
        paths = write_report_files(report, Path(args.out))
        print()
        for name, path in paths.items():
            print(f"{name}: {path}")
    return 0 if report.violations == 0 else 1


def cmd_serve(args) -> int:
    import uvicorn

    config = load_config(args.config)
    app = create_app(config)
    if args.maildrop:
        if not args.maildrop_target:
            return _fail("bad_request", "--maildrop requires --maildrop-target")
        store: Store = app.state.store
        watcher = MaildropWatcher(store, Path(args.maildrop), args.maildrop_target,
                                  weights=config.weights)
        watcher.start()
    uvicorn.run(app, host=config.bind_host, port=config.bind_port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="whaling-guard", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    profile = sub.add_parser("profile", help="profile generation")
    profile_sub = profile.add_subparsers(dest="profile_command", required=True)
    build = profile_sub.add_parser("build", help="run the offline generation pipeline")
    build.add_argument("--name", required=True, help="target name")
    build.add_argument("--org", required=True, help="target organization")
    build.add_argument("--sources", help="JSON file: [{source, content_excerpt}, ...]")
    build.add_argument("--internal", help="JSON file: {roles, decision_authority, ...}")
    build.add_argument("--backend", default="mock", choices=["mock", "openai"])
    build.add_argument("--fixtures", default="fixtures/mock_responses", help="mock fixtures dir")
    build.add_argument("--openai-base-url", default="https://api.openai.com/v1")
    build.add_argument("--openai-model", default="gpt-4o-mini")
    build.add_argument("--max-repairs", type=int, default=2)
    build.add_argument("--out", default="profiles", help="output directory root")
    build.set_defaults(func=cmd_profile_build)

    val = sub.add_parser("validate", help="validate profile documents")
    val.add_argument("--kind", required=True, choices=list(DOCUMENT_KINDS))
    val.add_argument("files", nargs="+")
    val.set_defaults(func=cmd_validate)

    analyze = sub.add_parser("analyze", help="assess one message file")
    analyze.add_argument("--target", required=True)
    analyze.add_argument("--message", required=True)
    analyze.add_argument("--mode", default="deterministic", choices=["deterministic", "hybrid"])
    analyze.add_argument("--profiles", default="profiles", help="profiles dir, or 'builtin'")
    analyze.add_argument("--date", help="analysis date YYYY-MM-DD (default: today)")
    analyze.add_argument("--backend", default="mock", choices=["mock", "openai"])
    analyze.add_argument("--fixtures", default="fixtures/mock_responses")
    analyze.add_argument("--openai-base-url", default="https://api.openai.com/v1")
    analyze.add_argument("--openai-model", default="gpt-4o-mini")
    analyze.set_defaults(func=cmd_analyze)

    ev = sub.add_parser("eval", help="run the evaluation harness")
    ev.add_argument("--corpus", default="builtin", help="'builtin' or corpus directory")
    ev.add_argument("--profiles", default="builtin", help="'builtin' or profiles dir")
    ev.add_argument("--target", default="t1", help="target id when --profiles is a dir")
    ev.add_argument("--date", help="analysis date YYYY-MM-DD (default: manifest value)")
    ev.add_argument("--out", help="write report.json, results.csv, and figures here")
    ev.set_defaults(func=cmd_eval)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--config", help="key-value config file")
    serve.add_argument("--maildrop", help="watch this directory for .eml files")
    serve.add_argument("--maildrop-target", help="target id for maildrop analysis")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
