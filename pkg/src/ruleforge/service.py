"""HTTP/JSON facade over the mining engines and consultation sessions.

Artifacts live as flat files under <root>/<kind>/<id>; sessions are held in
memory with an idle TTL and a per-session lock so concurrent callers never
interleave one session's state transitions.
"""
from __future__ import annotations

import json
import os
import tempfile
import threading
import time
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import apriori, consult, id3
from .dataset import DatasetError, parse_dataset, to_transactions
from .knb import KnbError, parse_knb

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 7777
DATA_DIR_ENV = "RULEFORGE_DATA_DIR"
SESSION_TTL_SECONDS = 30 * 60

ARTIFACT_KINDS = ("dataset", "tree", "patterns", "kb")
_JSON_KINDS = ("tree", "patterns")


class AppError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


def _new_id() -> str:
    return uuid.uuid4().hex[:12]


@dataclass(frozen=True)
class StoredArtifact:
    kind: str
    id: str
    payload: str
    created_at: str


class ArtifactStore:
    """Append-only artifact files with atomic writes."""

    def __init__(self, root: Path):
        self.root = Path(root)

    def save(self, kind: str, payload: str) -> StoredArtifact:
        if kind not in ARTIFACT_KINDS:
            raise ValueError(f"unknown artifact kind {kind!r}")
        artifact_id = _new_id()
        directory = self.root / kind
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(payload)
            os.replace(tmp_path, directory / artifact_id)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
        return self.load(kind, artifact_id)

    def load(self, kind: str, artifact_id: str) -> StoredArtifact | None:
        path = self.root / kind / artifact_id
        if kind not in ARTIFACT_KINDS or not path.is_file():
            return None
        created = datetime.fromtimestamp(path.stat().st_mtime, tz=timezone.utc)
        return StoredArtifact(kind, artifact_id, path.read_text(encoding="utf-8"), created.isoformat())


@dataclass
class SessionRecord:
    session: consult.ConsultationSession
    last_activity: float
    lock: threading.Lock


class SessionStore:
    def __init__(self, ttl_seconds: float = SESSION_TTL_SECONDS):
        self.ttl = ttl_seconds
        self._records: dict[str, SessionRecord] = {}
        self._lock = threading.Lock()

    def create(self, session: consult.ConsultationSession) -> str:
        session_id = _new_id()
        with self._lock:
            self._sweep()
            self._records[session_id] = SessionRecord(session, time.monotonic(), threading.Lock())
        return session_id

    def get(self, session_id: str) -> SessionRecord:
        with self._lock:
            self._sweep()
            record = self._records.get(session_id)
            if record is None:
                raise AppError(404, "not_found", f"unknown or expired session {session_id}")
            record.last_activity = time.monotonic()
            return record

    def _sweep(self) -> None:
        deadline = time.monotonic() - self.ttl
        for key in [k for k, r in self._records.items() if r.last_activity < deadline]:
            del self._records[key]


def _session_view(session: consult.ConsultationSession) -> dict:
    view: dict = {"status": session.status}
    if session.status == consult.AWAITING:
        view["question"] = {
            "attribute": session.question.attribute,
            "menu": list(session.question.menu),
        }
    elif session.status == consult.CONCLUDED:
        view["conclusion"] = {
            "class": session.result.class_value,
            "probability": session.result.probability,
        }
    return view


def create_app(storage_root: str | os.PathLike | None = None) -> FastAPI:
    root = Path(storage_root or os.environ.get(DATA_DIR_ENV, "ruleforge_data"))
    store = ArtifactStore(root)
    sessions = SessionStore()

    app = FastAPI(title="ruleforge", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(AppError)
    async def on_app_error(_request: Request, exc: AppError):
        return JSONResponse(
            status_code=exc.status, content={"error": {"code": exc.code, "message": exc.message}}
        )

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422, content={"error": {"code": "invalid_request", "message": str(exc)}}
        )

    async def read_text_body(request: Request) -> str:
        try:
            return (await request.body()).decode("utf-8")
        except UnicodeDecodeError:
            raise AppError(400, "bad_encoding", "request body must be UTF-8 text") from None

    async def read_json_body(request: Request) -> dict:
        try:
            body = json.loads((await request.body()) or b"{}")
        except (json.JSONDecodeError, UnicodeDecodeError):
            raise AppError(422, "invalid_request", "request body must be a JSON object") from None
        if not isinstance(body, dict):
            raise AppError(422, "invalid_request", "request body must be a JSON object")
        return body

    @app.post("/datasets", status_code=201)
    async def upload_dataset(request: Request):
        text = await read_text_body(request)
        try:
            parse_dataset(text)
        except DatasetError as exc:
            raise AppError(400, "parse_error", str(exc)) from exc
        artifact = store.save("dataset", text)
        return {"id": artifact.id}

    @app.post("/kbs", status_code=201)
    async def upload_kb(request: Request):
        text = await read_text_body(request)
        try:
            parse_knb(text)
        except KnbError as exc:
            raise AppError(400, "parse_error", str(exc)) from exc
        artifact = store.save("kb", text)
        return {"id": artifact.id}

    @app.post("/datasets/{dataset_id}/mine")
    async def mine(dataset_id: str, request: Request):
        artifact = store.load("dataset", dataset_id)
        if artifact is None:
            raise AppError(404, "not_found", f"unknown dataset {dataset_id}")
        params = await read_json_body(request)
        kind = params.get("kind")
        if kind == "tree":
            dataset = parse_dataset(artifact.payload)
            result = id3.tree_to_json(id3.build_tree(dataset))
            stored = store.save("tree", json.dumps(result))
            location = f"/artifacts/tree/{stored.id}"
        elif kind == "assoc":
            if params.get("min_support") is None:
                raise AppError(422, "missing_param", "assoc mining requires min_support")
            try:
                cfg = apriori.MiningConfig(
                    float(params["min_support"]), float(params.get("min_confidence", 1.0))
                )
            except (TypeError, ValueError) as exc:
                raise AppError(422, "invalid_param", str(exc)) from exc
            dataset = parse_dataset(artifact.payload)
            fps = apriori.mine_frequent(to_transactions(dataset), cfg)
            rules = apriori.derive_rules(fps, cfg) if "min_confidence" in params else []
            result = apriori.patterns_to_json(fps, cfg, rules)
            stored = store.save("patterns", json.dumps(result))
            location = f"/artifacts/patterns/{stored.id}"
        else:
            raise AppError(422, "invalid_param", "kind must be 'tree' or 'assoc'")
        return JSONResponse(result, headers={"Location": location})

    @app.get("/artifacts/{kind}/{artifact_id}")
    async def get_artifact(kind: str, artifact_id: str):
        artifact = store.load(kind, artifact_id)
        if artifact is None:
            raise AppError(404, "not_found", f"no {kind} artifact {artifact_id}")
        payload = json.loads(artifact.payload) if kind in _JSON_KINDS else artifact.payload
        return {
            "kind": artifact.kind,
            "id": artifact.id,
            "created_at": artifact.created_at,
            "payload": payload,
        }

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        params = await read_json_body(request)
        kb_id = params.get("kb")
        if not kb_id:
            raise AppError(422, "missing_param", "kb id is required")
        artifact = store.load("kb", str(kb_id))
        if artifact is None:
            raise AppError(404, "not_found", f"unknown kb {kb_id}")
        session = consult.start_session(parse_knb(artifact.payload))
        session_id = sessions.create(session)
        return {"session_id": session_id, **_session_view(session)}

    @app.post("/sessions/{session_id}/answer")
    async def answer(session_id: str, request: Request):
        params = await read_json_body(request)
        value = params.get("value")
        if value is None:
            raise AppError(422, "missing_param", "value is required")
        record = sessions.get(session_id)
        with record.lock:
            session = record.session
            if session.status != consult.AWAITING:
                raise AppError(409, "conflict", "session is not awaiting an answer")
            value = str(value)
            if value not in session.question.menu and value == "exit":
                value = consult.EXIT_CODE
            try:
                consult.submit_answer(session, session.question.attribute, value)
            except consult.IllegalAnswerError as exc:
                raise AppError(422, "invalid_value", str(exc)) from exc
            return _session_view(session)

    @app.get("/sessions/{session_id}/explanation")
    async def explanation(session_id: str):
        record = sessions.get(session_id)
        with record.lock:
            session = record.session
            if session.status not in (consult.CONCLUDED, consult.FAILED):
                raise AppError(409, "conflict", "session has no explanation yet")
            view = {
                "conclusion": None,
                "known": [f"{attr}={value}" for attr, value in session.known],
            }
            if session.status == consult.CONCLUDED:
                view["conclusion"] = {
                    "class": session.result.class_value,
                    "probability": session.result.probability,
                }
            return view

    return app
