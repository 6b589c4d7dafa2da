"""HTTP session service exposing the core operations to scripts and the explorer UI."""

from __future__ import annotations

import json
import os
import secrets
import threading
import time
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from quiverkit.dt import dt_product, verify_identity
from quiverkit.fixtures import fixture, fixture_names
from quiverkit.qalgebra import AlgebraError
from quiverkit.quiver import MutationState, Quiver, QuiverError, frame
from quiverkit.search import verify_sequence

DEFAULT_MAX_DEGREE = 16


def _max_degree() -> int:
    raw = os.environ.get("QUIVERKIT_MAX_DEGREE")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_MAX_DEGREE


@dataclass
class Session:
    id: str
    state: MutationState
    created: float
    updated: float
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class SessionStore:
    """In-memory sessions; mutations within one session are serialized."""

    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, quiver: Quiver) -> Session:
        sid = secrets.token_hex(8)
        now = time.time()
        session = Session(sid, frame(quiver), now, now)
        with self._lock:
            self._sessions[sid] = session
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid}")
        return session

    def all(self) -> list[Session]:
        with self._lock:
            return list(self._sessions.values())

    def restore(self, entries: list[dict]) -> None:
        for entry in entries:
            try:
                origin = Quiver.from_dict(entry["quiver"])
                state = frame(origin).apply(entry["history"])
            except (QuiverError, KeyError, TypeError):
                continue
            session = Session(
                entry.get("id", secrets.token_hex(8)),
                state,
                entry.get("created", time.time()),
                entry.get("updated", time.time()),
            )
            with self._lock:
                self._sessions[session.id] = session

    def snapshot(self) -> list[dict]:
        out = []
        for session in self.all():
            out.append(
                {
                    "id": session.id,
                    "quiver": session.state.origin.to_dict(),
                    "history": list(session.state.history),
                    "created": session.created,
                    "updated": session.updated,
                }
            )
        return out


class CreateSessionBody(BaseModel):
    quiver: Optional[dict] = None
    fixture: Optional[str] = None


class MutationBody(BaseModel):
    vertex: int


class VerifyBody(BaseModel):
    quiver: dict
    seqA: list[int]
    seqB: list[int]
    degree: int = 8


def _state_view(session: Session) -> dict:
    state = session.state
    current = Quiver(state.n, 0, state.quiver.mutable_block())
    return {
        "id": session.id,
        "quiver": current.to_dict(),
        "origin": state.origin.to_dict(),
        "greens": state.greens(),
        "reds": state.reds(),
        "c_matrix": [list(row) for row in state.c_matrix().entries],
        "history": list(state.history),
        "all_red": state.all_red(),
    }


def _parse_quiver(data: dict) -> Quiver:
    try:
        quiver = Quiver.from_dict(data)
    except QuiverError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    if quiver.is_framed():
        raise HTTPException(status_code=422, detail="quiver must be unframed")
    return quiver


def create_app(snapshot_path: Optional[str] = None) -> FastAPI:
    """Build the service; sessions are in memory, optionally snapshotted
    to a JSON file on shutdown and restored on startup."""
    snapshot_path = snapshot_path or os.environ.get("QUIVERKIT_SNAPSHOT")
    store = SessionStore()

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        if snapshot_path and os.path.exists(snapshot_path):
            try:
                with open(snapshot_path, "r", encoding="utf-8") as fh:
                    store.restore(json.load(fh))
            except (OSError, json.JSONDecodeError):
                pass
        yield
        if snapshot_path:
            with open(snapshot_path, "w", encoding="utf-8") as fh:
                json.dump(store.snapshot(), fh)

    app = FastAPI(title="quiverkit", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    async def malformed_body(_request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        if body.fixture is not None:
            try:
                quiver = fixture(body.fixture).quiver
            except QuiverError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
        elif body.quiver is not None:
            quiver = _parse_quiver(body.quiver)
        else:
            raise HTTPException(status_code=422, detail="need a quiver or a fixture name")
        session = store.create(quiver)
        return _state_view(session)

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        return _state_view(store.get(sid))

    @app.post("/sessions/{sid}/mutations")
    def mutate_session(sid: str, body: MutationBody):
        session = store.get(sid)
        with session.lock:
            try:
                session.state = session.state.mutate(body.vertex)
            except QuiverError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            session.updated = time.time()
            return _state_view(session)

    @app.delete("/sessions/{sid}/mutations/last")
    def undo_mutation(sid: str):
        session = store.get(sid)
        with session.lock:
            if not session.state.history:
                raise HTTPException(status_code=409, detail="history is empty")
            session.state = session.state.undo()
            session.updated = time.time()
            return _state_view(session)

    @app.get("/sessions/{sid}/dt")
    def session_dt(sid: str, degree: int = 8):
        cap = _max_degree()
        if degree < 1 or degree > cap:
            raise HTTPException(
                status_code=422, detail=f"degree must be between 1 and {cap}"
            )
        session = store.get(sid)
        with session.lock:
            state = session.state
        product = dt_product(state.origin, state.history, degree)
        return {
            "degree": degree,
            "history": list(state.history),
            "factors": [{"beta": list(b), "eps": e} for b, e in product.factors],
            "series": product.value.to_json_terms(),
        }

    @app.get("/sessions/{sid}/report")
    def session_report(sid: str):
        session = store.get(sid)
        with session.lock:
            state = session.state
        return verify_sequence(state.origin, state.history).to_dict()

    @app.get("/catalog")
    def catalog():
        out = []
        for name in fixture_names():
            fx = fixture(name)
            out.append(
                {
                    "name": name,
                    "description": fx.description,
                    "quiver": fx.quiver.to_dict(),
                    "sequences": [list(s) for s in fx.sequences],
                }
            )
        return out

    @app.post("/verify")
    def verify(body: VerifyBody):
        cap = _max_degree()
        if body.degree < 1 or body.degree > cap:
            raise HTTPException(
                status_code=422, detail=f"degree must be between 1 and {cap}"
            )
        quiver = _parse_quiver(body.quiver)
        try:
            report = verify_identity(quiver, body.seqA, body.seqB, body.degree)
        except (QuiverError, AlgebraError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return report.to_dict()

    ui_dir = os.environ.get("QUIVERKIT_UI_DIR")
    if ui_dir and os.path.isdir(ui_dir):
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
