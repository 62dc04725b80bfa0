"""HTTP service exposing analysis, triage queue, decisions, profiles, allowlist.

All endpoints live under /v1 and return a stable machine-readable error
shape ``{"error": {"code": ..., "message": ...}}``. When a bearer token is
configured, every /v1 endpoint requires ``Authorization: Bearer <token>``.
"""

from __future__ import annotations

import base64
import binascii
from datetime import date

from fastapi import Depends, FastAPI, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .. import ENGINE_VERSION, __version__
from ..agents.backends import ChatBackend, MockBackend, OpenAICompatBackend
from ..engine.assess import assess
from ..ingest.features import LexiconSet
from ..ingest.parser import ParseError, parse_email
from ..profiles.canonical import canonical_dict_bytes
from .config import ServiceConfig
from .store import PROFILE_FILES, Store, StoreError

_ERROR_STATUS = {
    "unknown_target": 404,
    "unknown_assessment": 404,
    "unknown_allowlist": 404,
    "already_decided": 409,
    "duplicate_allowlist": 409,
    "invalid_document": 422,
    "link_invalid": 422,
    "target_mismatch": 422,
    "parse_error": 422,
    "bad_base64": 422,
    "bad_decision": 422,
    "bad_request": 400,
    "bad_target_id": 400,
    "unauthorized": 401,
}


def _error(code: str, message: str, details=None) -> JSONResponse:
    body = {"error": {"code": code, "message": message}}
    if details is not None:
        body["error"]["details"] = details
    return JSONResponse(status_code=_ERROR_STATUS.get(code, 400), content=body)


class AnalyzeRequest(BaseModel):
    target_id: str
    raw_message: str  # base64
    mode: str = "deterministic"
    analysis_date: str | None = None


class DecisionRequest(BaseModel):
    assessment_id: str
    decision: str
    note: str = ""
    actor: str = ""


class ProfilePut(BaseModel):
    pvp: dict | None = None
    scenarios: dict | None = None
    pdp: dict | None = None
    partial: bool = False


class AllowlistRequest(BaseModel):
    address_or_domain: str
    added_by: str = ""
    linked_decision_id: str | None = None


def build_backend(config: ServiceConfig) -> ChatBackend | None:
    if config.backend == "mock":
        return MockBackend(config.mock_fixtures_dir)
    if config.backend == "openai":
        return OpenAICompatBackend(config.openai_base_url, config.openai_model)
    return None


def create_app(
    config: ServiceConfig,
    store: Store | None = None,
    backend: ChatBackend | None = None,
) -> FastAPI:
    app = FastAPI(title="whaling-guard", version=__version__)
    store = store or Store(config.store_path, store_raw_messages=config.store_raw_messages)
    backend = backend or build_backend(config)
    weights = config.weights
    lexicons = LexiconSet.load(config.lexicon_dir) if config.lexicon_dir else None

    app.state.store = store
    app.state.backend = backend

    async def require_token(request: Request) -> None:
        if not config.bearer_token:
            return
        header = request.headers.get("Authorization", "")
        if header != f"Bearer {config.bearer_token}":
            raise StoreError("unauthorized", "missing or invalid bearer token")

    auth = Depends(require_token)

    @app.exception_handler(StoreError)
    async def store_error_handler(request: Request, exc: StoreError):
        details = exc.report.to_dict() if exc.report is not None else None
        return _error(exc.code, str(exc), details)

    @app.post("/v1/analyze", dependencies=[auth])
    async def analyze(payload: AnalyzeRequest):
        try:
            trio = store.get_profile(payload.target_id)
        except StoreError as exc:
            return _error(exc.code, str(exc))
        try:
            raw = base64.b64decode(payload.raw_message, validate=True)
        except (binascii.Error, ValueError) as exc:
            return _error("parse_error", f"raw_message is not valid base64: {exc}")
        try:
            email = parse_email(raw)
        except ParseError as exc:
            return _error("parse_error", str(exc), details={"byte_offset": exc.byte_offset})
        if payload.mode not in ("deterministic", "hybrid"):
            return _error("bad_request", f"unknown mode {payload.mode!r}")
        mode = payload.mode
        if mode == "hybrid" and backend is None:
            return _error("bad_request", "hybrid mode requires a configured backend")
        try:
            analysis_date = (
                date.fromisoformat(payload.analysis_date) if payload.analysis_date else None
            )
        except ValueError as exc:
            return _error("bad_request", f"bad analysis_date: {exc}")
        allowlisted = store.is_allowlisted(email.from_address, email.from_domain())
        assessment = assess(
            email,
            trio.pdp,
            trio.scenarios,
            mode,
            backend=backend,
            analysis_date=analysis_date,
            weights=weights,
            lexicons=lexicons,
            allowlisted=allowlisted,
        )
        record = store.save_assessment(
            target_id=payload.target_id,
            assessment=assessment.to_dict(),
            subject=email.subject,
            from_address=email.from_address,
            raw_message=raw,
        )
        return record

    @app.get("/v1/assessments/{assessment_id}", dependencies=[auth])
    async def get_assessment(assessment_id: str):
        return store.get_assessment(assessment_id)

    @app.get("/v1/queue", dependencies=[auth])
    async def queue(status: str | None = None):
        if status not in (None, "pending", "decided"):
            return _error("bad_request", f"unknown queue status {status!r}")
        return store.queue(status)

    @app.post("/v1/decisions", dependencies=[auth])
    async def record_decision(payload: DecisionRequest):
        return store.record_decision(
            payload.assessment_id, payload.decision, payload.note, payload.actor
        )

    @app.get("/v1/decisions", dependencies=[auth])
    async def list_decisions():
        return store.list_decisions()

    @app.put("/v1/profiles/{target_id}", dependencies=[auth])
    async def put_profile(target_id: str, payload: ProfilePut):
        documents: dict[str, bytes] = {}
        for kind, value in (
            ("pvp", payload.pvp),
            ("scenario_set", payload.scenarios),
            ("pdp", payload.pdp),
        ):
            if value is not None:
                documents[kind] = canonical_dict_bytes(value)
        if not documents:
            return _error("bad_request", "no documents supplied")
        store.put_profile(target_id, documents, partial=payload.partial)
        return {"target_id": target_id, "stored": sorted(documents)}

    @app.get("/v1/profiles/{target_id}", dependencies=[auth])
    async def get_profile(target_id: str, doc: str | None = None):
        trio = store.get_profile(target_id)
        if doc is not None:
            if doc not in PROFILE_FILES:
                return _error("bad_request", f"unknown doc {doc!r}; expected pvp|scenario_set|pdp")
            return Response(content=trio.raw[doc], media_type="application/json")
        return {
            "target_id": target_id,
            "pvp": trio.pvp.to_dict(),
            "scenarios": trio.scenarios.to_dict(),
            "pdp": trio.pdp.to_dict(),
        }

    @app.get("/v1/targets", dependencies=[auth])
    async def targets():
        return store.list_targets()

    @app.post("/v1/allowlist", dependencies=[auth])
    async def add_allowlist(payload: AllowlistRequest):
        return store.add_allowlist(
            payload.address_or_domain, payload.added_by, payload.linked_decision_id
        )

    @app.get("/v1/allowlist", dependencies=[auth])
    async def list_allowlist():
        return store.list_allowlist()

    @app.delete("/v1/allowlist", dependencies=[auth])
    async def remove_allowlist(address_or_domain: str):
        store.remove_allowlist(address_or_domain)
        return Response(status_code=204)

    @app.get("/v1/config", dependencies=[auth])
    async def get_config():
        return {
            "engine_version": ENGINE_VERSION,
            "weights": weights.to_dict(),
            "bands": {
                "suspicious_threshold": weights.suspicious_threshold,
                "high_threshold": weights.high_threshold,
            },
            "labels": ["safe", "suspicious", "highly_suspicious"],
        }

    return app
