"""HTTP surface for the session service, versioned under ``/v1``.

JSON in, JSON out; board snapshots travel in the canonical text schema.
Error mapping: bad input 400, unknown session 404, stale match 409,
value/board conflicts 422.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.requests import Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import (
    CycleError,
    DomainError,
    NoMatchError,
    NotSimpleError,
    OverflowError,
    StaleMatchError,
    YupanaError,
)
from .rules import catalog_document
from .service import SessionStore, UnknownSessionError

_STATUS_BY_ERROR = (
    (UnknownSessionError, 404),
    (StaleMatchError, 409),
    (NoMatchError, 409),
    (OverflowError, 422),
    (NotSimpleError, 422),
    (CycleError, 422),
    (DomainError, 400),
)


class CreateSessionBody(BaseModel):
    rows: int = 5
    mode: str = "free"
    operation: str | None = None
    operands: list[dict] | None = None


class LoadBody(BaseModel):
    value: int = Field(ge=0)
    sign: int = 1


class MoveBody(BaseModel):
    match_id: str


class AutoBody(BaseModel):
    step_budget: int | None = None


def create_app(store: SessionStore | None = None) -> FastAPI:
    store = store if store is not None else SessionStore()
    app = FastAPI(title="yupana service", version="1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    @app.exception_handler(YupanaError)
    async def yupana_error_handler(_: Request, exc: YupanaError) -> JSONResponse:
        status = 500
        for kind, code in _STATUS_BY_ERROR:
            if isinstance(exc, kind):
                status = code
                break
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/v1/rules")
    def rules() -> list[dict]:
        return catalog_document()

    @app.post("/v1/sessions")
    def create_session(body: CreateSessionBody) -> dict:
        session = store.create_session(body.rows, body.mode, body.operation, body.operands)
        return session.status()

    @app.get("/v1/sessions/{sid}")
    def get_session(sid: str) -> dict:
        return store.get_session(sid).status()

    @app.post("/v1/sessions/{sid}/load")
    def load_operand(sid: str, body: LoadBody) -> dict:
        return store.load_operand(sid, body.value, body.sign).status()

    @app.get("/v1/sessions/{sid}/matches")
    def list_matches(sid: str, rule: list[str] | None = Query(default=None)) -> dict:
        session = store.get_session(sid)
        return {
            "revision": session.revision,
            "matches": store.list_matches(sid, rule),
        }

    @app.post("/v1/sessions/{sid}/moves")
    def apply_move(sid: str, body: MoveBody) -> dict:
        return store.apply_move(sid, body.match_id).status()

    @app.post("/v1/sessions/{sid}/auto")
    def auto_run(sid: str, body: AutoBody) -> dict:
        outcome = store.auto_run(sid, body.step_budget)
        return {
            "applied": outcome["applied"],
            "finished": outcome["finished"],
            "session": outcome["session"].status(),
        }

    @app.get("/v1/sessions/{sid}/hint")
    def hint(sid: str) -> dict:
        return store.hint(sid)

    @app.get("/v1/sessions/{sid}/trace")
    def trace(sid: str, format: str = "json") -> Response:
        if format == "lines":
            return Response(store.trace_lines(sid), media_type="text/plain")
        return JSONResponse({"steps": store.trace(sid)})

    return app


def serve(host: str = "127.0.0.1", port: int = 8177, data_dir: str | None = None) -> None:
    """Run the service with uvicorn (blocking)."""
    import uvicorn

    app = create_app(SessionStore(Path(data_dir) if data_dir else None))
    uvicorn.run(app, host=host, port=port, log_level="warning")
