"""HTTP JSON facade with in-memory sessions for the explorer UI.

Sessions hold one pseudodiagram each and are isolated; mutations are
serialized per session and guarded by an optimistic revision number (stale
writers get 409 instead of silently losing updates).  Exact rationals cross
the wire as reduced "p/q" strings.  Queries on diagrams with many
precrossings run on a worker thread and are polled via /api/jobs/{id}.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Any, Optional

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .analysis import EMPTY_ENTRY, WeReMode, forcing_number, were_set
from .diagram import CrossingAssignment, Pseudodiagram
from .errors import (
    GeneralPositionViolation,
    ParseError,
    PlknotsError,
    ValidationError,
)
from .generators import gen_random, gen_star, gen_torus
from .realizability import (
    build_constraints,
    is_partial_realizable,
    minimal_infeasible_core,
    propagate_forced,
)
from .shadow_io import read_shadow, write_shadow


class ApiError(Exception):
    """An error with a fixed HTTP status and structured body."""

    def __init__(self, status: int, code: str, message: str, details: Any = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.details = details


def _error_response(status: int, code: str, message: str, details: Any = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": {"code": code, "message": message, "details": details}},
    )


@dataclass
class Session:
    id: str
    diagram: Pseudodiagram
    revision: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)


@dataclass
class Job:
    id: str
    status: str = "running"  # running | done | failed
    done: int = 0
    total: int = 0
    result: Optional[dict] = None
    error: Optional[str] = None


class Registry:
    """Thread-safe stores for sessions and background jobs."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}
        self._jobs: dict[str, Job] = {}

    def add_session(self, diagram: Pseudodiagram) -> Session:
        session = Session(id=uuid.uuid4().hex, diagram=diagram)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def session(self, sid: str) -> Session:
        with self._lock:
            found = self._sessions.get(sid)
        if found is None:
            raise ApiError(404, "not_found", f"unknown session {sid}")
        return found

    def add_job(self) -> Job:
        job = Job(id=uuid.uuid4().hex)
        with self._lock:
            self._jobs[job.id] = job
        return job

    def job(self, jid: str) -> Job:
        with self._lock:
            found = self._jobs.get(jid)
        if found is None:
            raise ApiError(404, "not_found", f"unknown job {jid}")
        return found


def _rational(value) -> str:
    return str(value)


def _assignment_payload(diagram: Pseudodiagram) -> dict[str, str]:
    return {str(cid): v.value for cid, v in sorted(diagram.assignment.items())}


def _session_payload(session: Session) -> dict:
    diagram = session.diagram
    shadow = diagram.shadow
    return {
        "id": session.id,
        "revision": session.revision,
        "vertices": [[_rational(v.x), _rational(v.y)] for v in shadow.vertices],
        "crossings": [
            {
                "id": cid,
                "edge_a": c.edge_a,
                "edge_b": c.edge_b,
                "s": _rational(c.s),
                "t": _rational(c.t),
                "point": [_rational(c.point.x), _rational(c.point.y)],
            }
            for cid, c in enumerate(shadow.crossings)
        ],
        "assignments": _assignment_payload(diagram),
        "precrossings": list(diagram.precrossings()),
    }


def _diagram_from_source(body: dict) -> Pseudodiagram:
    generator = body.get("generator")
    document = body.get("document")
    if (generator is None) == (document is None):
        raise ApiError(
            400, "bad_request", "body must contain exactly one of: generator, document"
        )
    if document is not None:
        import json as _json

        return read_shadow(_json.dumps(document))
    kind = generator.get("kind")
    try:
        if kind == "star":
            return Pseudodiagram.bare(gen_star(int(generator["n"])))
        if kind == "torus":
            return Pseudodiagram.bare(
                gen_torus(int(generator["n"]), int(generator["subdiv"]))
            )
        if kind == "random":
            return Pseudodiagram.bare(
                gen_random(int(generator["vertices"]), int(generator["seed"]))
            )
    except KeyError as exc:
        raise ApiError(400, "bad_request", f"generator spec missing field {exc}") from exc
    raise ApiError(400, "bad_request", f"unknown generator kind {kind!r}")


def _mutation_payload(session: Session) -> dict:
    """Feasibility, forced-propagation and core data for the current state."""
    diagram = session.diagram
    feasible, witness = is_partial_realizable(diagram)
    payload: dict[str, Any] = {
        "revision": session.revision,
        "assignments": _assignment_payload(diagram),
        "precrossings": list(diagram.precrossings()),
        "realizable": feasible,
        "witness": (
            {str(i): _rational(h) for i, h in enumerate(witness)} if witness else None
        ),
    }
    outcome = propagate_forced(diagram)
    payload["propagation"] = {
        "status": outcome.status.value,
        "derived": [[cid, value.value] for cid, value in outcome.derived],
        "remaining": sorted(outcome.remaining),
    }
    payload["core"] = (
        sorted(minimal_infeasible_core(build_constraints(diagram)))
        if not feasible
        else None
    )
    return payload


def _were_payload(diagram: Pseudodiagram, mode: WeReMode, progress=None) -> dict:
    were = were_set(diagram, mode, progress=progress)
    entries = {name: _rational(prob) for name, prob in sorted(were.entries.items())}
    if were.empty_prob:
        entries["empty"] = _rational(were.empty_prob)
    return {"mode": mode.value, "entries": entries}


def _forcing_payload(diagram: Pseudodiagram, progress=None) -> dict:
    report = forcing_number(diagram, progress=progress)
    payload: dict[str, Any] = {
        "forcing_number": report.forcing_number,
        "witness_set": sorted(report.witness_set) if report.witness_set else None,
        "witness_assignment": (
            {str(cid): v.value for cid, v in sorted(report.witness_assignment.items())}
            if report.witness_assignment
            else None
        ),
        "vacuous": report.vacuous,
    }
    if report.propagation_trace is not None:
        payload["derived"] = [
            [cid, value.value] for cid, value in report.propagation_trace.derived
        ]
    else:
        payload["derived"] = None
    return payload


def create_app(inline_threshold: int = 12, static_dir: Optional[str] = None) -> FastAPI:
    """Build the API application.

    ``inline_threshold``: queries on diagrams with at most this many
    precrossings are answered in the request; larger ones come back as 202
    plus a job to poll.
    """
    app = FastAPI(title="plknots", docs_url=None, redoc_url=None)
    registry = Registry()
    app.state.registry = registry

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return _error_response(exc.status, exc.code, str(exc), exc.details)

    @app.exception_handler(ParseError)
    async def _parse_error(_request: Request, exc: ParseError):
        return _error_response(400, "parse_error", str(exc))

    @app.exception_handler(ValidationError)
    async def _validation_error(_request: Request, exc: ValidationError):
        return _error_response(400, "validation_error", str(exc))

    @app.exception_handler(GeneralPositionViolation)
    async def _position_error(_request: Request, exc: GeneralPositionViolation):
        details = [
            {"kind": v.kind, "detail": v.detail, "involved": list(v.involved)}
            for v in exc.violations
        ]
        return _error_response(400, "general_position", str(exc), details)

    @app.exception_handler(PlknotsError)
    async def _domain_error(_request: Request, exc: PlknotsError):
        return _error_response(400, "domain_error", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _request_error(_request: Request, exc: RequestValidationError):
        return _error_response(400, "bad_request", "malformed request", exc.errors())

    def _run_job(job: Job, work) -> None:
        def progress(done: int, total: int) -> None:
            job.done, job.total = done, total

        try:
            job.result = work(progress)
            job.status = "done"
        except PlknotsError as exc:
            job.status = "failed"
            job.error = str(exc)

    def _inline_or_job(session: Session, work):
        """Answer now for small diagrams, else hand back a pollable job."""
        open_count = len(session.diagram.precrossings())
        if open_count <= inline_threshold:
            return JSONResponse(status_code=200, content=work(None))
        job = registry.add_job()
        thread = threading.Thread(target=_run_job, args=(job, work), daemon=True)
        thread.start()
        return JSONResponse(
            status_code=202,
            content={"job": job.id, "status_url": f"/api/jobs/{job.id}"},
        )

    @app.post("/api/sessions", status_code=201)
    async def create_session(request: Request):
        body = await request.json()
        if not isinstance(body, dict):
            raise ApiError(400, "bad_request", "body must be a JSON object")
        diagram = _diagram_from_source(body)
        session = registry.add_session(diagram)
        return _session_payload(session)

    @app.get("/api/sessions/{sid}")
    async def get_session(sid: str):
        session = registry.session(sid)
        import json as _json

        payload = _session_payload(session)
        payload["document"] = _json.loads(write_shadow(session.diagram))
        return payload

    @app.get("/api/sessions/{sid}/document")
    async def get_document(sid: str):
        session = registry.session(sid)
        return Response(
            content=write_shadow(session.diagram), media_type="application/json"
        )

    @app.put("/api/sessions/{sid}/crossings/{cid}")
    async def set_crossing(sid: str, cid: int, request: Request):
        session = registry.session(sid)
        body = await request.json()
        if not isinstance(body, dict) or "revision" not in body:
            raise ApiError(400, "bad_request", "body must carry value and revision")
        raw_value = body.get("value")
        if raw_value is None:
            value = None
        else:
            try:
                value = CrossingAssignment(raw_value)
            except ValueError:
                raise ApiError(
                    400,
                    "validation_error",
                    f"bad value {raw_value!r}; use first_over, second_over or null",
                ) from None
        if not 0 <= cid < session.diagram.num_crossings:
            raise ApiError(404, "not_found", f"unknown crossing {cid}")
        with session.lock:
            if body["revision"] != session.revision:
                raise ApiError(
                    409,
                    "revision_conflict",
                    f"client revision {body['revision']} != server revision {session.revision}",
                    {"server_revision": session.revision},
                )
            session.diagram = session.diagram.with_assignment(cid, value)
            session.revision += 1
            return _mutation_payload(session)

    @app.get("/api/sessions/{sid}/wereset")
    async def get_wereset(sid: str, mode: str = "pl"):
        session = registry.session(sid)
        try:
            were_mode = WeReMode(mode)
        except ValueError:
            raise ApiError(
                400, "validation_error", f"mode must be pl or smooth, got {mode!r}"
            ) from None
        diagram = session.diagram
        return _inline_or_job(
            session, lambda progress: _were_payload(diagram, were_mode, progress)
        )

    @app.get("/api/sessions/{sid}/forcing-number")
    async def get_forcing(sid: str):
        session = registry.session(sid)
        diagram = session.diagram
        if not diagram.precrossings():
            raise ApiError(
                422, "no_precrossings", "forcing number needs at least one precrossing"
            )
        return _inline_or_job(
            session, lambda progress: _forcing_payload(diagram, progress)
        )

    @app.get("/api/jobs/{jid}")
    async def get_job(jid: str):
        job = registry.job(jid)
        return {
            "status": job.status,
            "progress": {"done": job.done, "total": job.total},
            "result": job.result,
            "error": job.error,
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
