"""HTTP/JSON face of the library.

All responses are canonical JSON bytes. Errors carry the structured body
``{code, message, detail}`` produced by the error taxonomy itself; judgment
conflicts answer 409 with the offending cycle, stale version tokens answer
409, unknown sessions 404, other domain errors 400.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware

from ..elicitation import ElicitationSession, SessionConfig, VariableSpec, start_session
from ..distributions import Distribution
from ..errors import (
    ConflictError,
    DomainError,
    StaleVersionError,
    StrengthLabError,
    UnknownSessionError,
)
from ..jsoncodec import canonical_bytes
from . import ops
from .storage import SessionStore


class CanonicalResponse(Response):
    media_type = "application/json"

    def render(self, content) -> bytes:
        if content is None:
            return b""
        return canonical_bytes(content)


def _status_for(exc: StrengthLabError) -> int:
    if isinstance(exc, (ConflictError, StaleVersionError)):
        return 409
    if isinstance(exc, UnknownSessionError):
        return 404
    return 400


def _field(payload: dict, key: str):
    if key not in payload:
        raise DomainError(f"request is missing the {key!r} field")
    return payload[key]


def _session_view(header: dict, session: ElicitationSession) -> dict:
    return {
        "id": session.id,
        "version": session.version,
        "status": session.status,
        "created": header.get("created"),
        "updated": header.get("updated"),
        "variable": session.spec.to_doc(),
        "config": session.config.to_doc(),
        "proposal": session.proposal.to_doc(),
        "frontier_size": len(session.frontier),
        "open_questions": session.open_question_count(),
        "judgment_count": len(session.store),
        "candidate": session.poll_candidate().to_doc()
        if session.poll_candidate() is not None
        else None,
    }


def create_app(
    store: SessionStore | str | Path | None = None,
    cors_origin: str | None = None,
) -> FastAPI:
    if not isinstance(store, SessionStore):
        store = SessionStore(store if store is not None else "./sessions")

    app = FastAPI(title="strengthlab", default_response_class=CanonicalResponse)
    app.state.store = store

    if cors_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[o.strip() for o in cors_origin.split(",")],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(StrengthLabError)
    async def domain_error(request: Request, exc: StrengthLabError):
        return CanonicalResponse(exc.to_doc(), status_code=_status_for(exc))

    @app.exception_handler(RequestValidationError)
    async def invalid_request(request: Request, exc: RequestValidationError):
        return CanonicalResponse(
            {"code": "invalid-request", "message": "malformed request body",
             "detail": str(exc)},
            status_code=422,
        )

    @app.exception_handler(Exception)
    async def internal_error(request: Request, exc: Exception):
        return CanonicalResponse(
            {"code": "internal", "message": str(exc), "detail": None},
            status_code=500,
        )

    # -- health ---------------------------------------------------------------

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    # -- sessions ---------------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session(payload: dict):
        spec = VariableSpec.from_doc(_field(payload, "variable"))
        config = (
            SessionConfig.from_doc(payload["config"])
            if payload.get("config") is not None
            else None
        )
        proposal = (
            Distribution.from_doc(payload["proposal"])
            if payload.get("proposal") is not None
            else None
        )
        session = start_session(spec, proposal=proposal, config=config)
        header = store.create(session)
        return _session_view(header, session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        header, session = store.get(session_id)
        return _session_view(header, session)

    @app.get("/sessions/{session_id}/questions")
    def get_questions(session_id: str, batch: int | None = None):
        _, session = store.get(session_id)
        return {
            "id": session.id,
            "version": session.version,
            "status": session.status,
            "questions": [q.to_doc() for q in session.next_questions(batch)],
        }

    @app.post("/sessions/{session_id}/answers")
    def post_answers(session_id: str, payload: dict):
        answers = [
            (_field(a, "question"), _field(a, "relation"))
            for a in payload.get("answers", ())
        ]
        header, session, report = store.mutate(
            session_id,
            payload.get("version"),
            lambda s: s.submit_answers(answers),
        )
        return {"id": session.id, "version": session.version, **report}

    @app.post("/sessions/{session_id}/candidates")
    def post_candidate(session_id: str, payload: dict):
        dist = Distribution.from_doc(_field(payload, "distribution"))
        header, session, result = store.mutate(
            session_id,
            payload.get("version"),
            lambda s: s.propose_candidate(dist),
        )
        return {
            "id": session.id,
            "version": session.version,
            "status": session.status,
            "result": result.to_doc(),
        }

    @app.get("/sessions/{session_id}/frontier")
    def get_frontier(session_id: str):
        _, session = store.get(session_id)
        return {
            "id": session.id,
            "version": session.version,
            "status": session.status,
            **session.frontier_report(),
        }

    # -- stateless computation ----------------------------------------------------

    @app.post("/compare/internal")
    def compare_internal(payload: dict):
        payload = dict(payload)
        payload["kind"] = "internal"
        return ops.comparison_verdict(payload)

    @app.post("/compare/external")
    def compare_external(payload: dict):
        payload = dict(payload)
        payload["kind"] = "external"
        return ops.comparison_verdict(payload)

    @app.post("/compare/sensitivity")
    def compare_sensitivity(payload: dict):
        return ops.sensitivity_report(payload)

    @app.post("/simulate/trials")
    def simulate_trials(payload: dict):
        return ops.trials_report(payload)

    @app.post("/fiducial/demo")
    def fiducial_demo(payload: dict):
        return ops.fiducial_demo_report(payload)

    return app
