"""Session-scoped HTTP facade for interactive scene teaching.

Each session owns one memory graph plus grounding configuration.
Mutating endpoints on a session are linearized through a per-session
lock; a second concurrent mutation is rejected with 409 rather than
queued.  ``what-if`` classification is observationally pure: any number
of calls between two observations leaves the memory byte-identical.
All degrees in responses carry full precision; rounding is the
client's concern.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from . import persistence
from .engine import (
    DEFAULT_FUZZINESS,
    DEFAULT_MEMBERSHIP_THRESHOLD,
    DEFAULT_SIMILARITY_THRESHOLD,
    MemoryGraph,
    bootstrap_step,
    classify,
    classify_with_fuzziness,
    encode,
)
from .errors import FsitError
from .grounding import (
    DEFAULT_SHAPE_TYPES,
    GeometricObject,
    KernelConfig,
    NoiseConfig,
    ground,
    spatial_interface,
)
from .model import ReificationMode

SCHEMA_VERSION = 1


class ObjectPayload(BaseModel):
    id: str
    x: float
    y: float
    shapes: dict[str, float]


class CreateSessionPayload(BaseModel):
    fuzziness: float = Field(default=DEFAULT_FUZZINESS, ge=0.0, le=1.0)
    th_membership: float = Field(default=DEFAULT_MEMBERSHIP_THRESHOLD, ge=0.0, le=1.0)
    th_similarity: float = Field(default=DEFAULT_SIMILARITY_THRESHOLD, ge=0.0)
    mode: str = ReificationMode.SIMPLIFIED.value
    types: list[str] = Field(default_factory=lambda: list(DEFAULT_SHAPE_TYPES))
    kernel: dict[str, Any] | None = None
    noise: dict[str, Any] | None = None
    seed: int = 0


class ScenePayload(BaseModel):
    objects: list[ObjectPayload]
    scene_id: str = "observation"
    force_learn: bool = False


class WhatIfPayload(BaseModel):
    objects: list[ObjectPayload]
    scene_id: str = "what_if"
    fuzziness_override: float | None = Field(default=None, ge=0.0, le=1.0)


class AnnotationPayload(BaseModel):
    category_id: int
    label: str | None


class ParamsPayload(BaseModel):
    th_membership: float | None = Field(default=None, ge=0.0, le=1.0)
    th_similarity: float | None = Field(default=None, ge=0.0)


@dataclass
class Session:
    id: str
    memory: MemoryGraph
    kernel: KernelConfig
    noise: NoiseConfig | None
    th_membership: float
    th_similarity: float
    rng: np.random.Generator
    observations: list[dict[str, Any]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def params_doc(self) -> dict[str, Any]:
        return {
            "fuzziness": self.memory.fuzziness,
            "th_membership": self.th_membership,
            "th_similarity": self.th_similarity,
            "mode": self.memory.interface.mode.value,
            "types": list(self.memory.interface.types),
            "kernel": persistence.kernel_to_doc(self.kernel),
            "noise": persistence.noise_to_doc(self.noise) if self.noise else None,
        }


def create_app() -> FastAPI:
    app = FastAPI(title="fsit teaching service")
    # The teaching console is served as static files from another origin.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    @app.exception_handler(FsitError)
    async def fsit_error(_request: Request, error: FsitError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(error)})

    @app.exception_handler(RequestValidationError)
    async def invalid_payload(
        _request: Request, error: RequestValidationError
    ) -> JSONResponse:
        diagnostics = [
            {"field": ".".join(str(part) for part in item["loc"]), "message": item["msg"]}
            for item in error.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": diagnostics})

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return session

    def acquire_writer(session: Session) -> None:
        if not session.lock.acquire(blocking=False):
            raise HTTPException(
                status_code=409,
                detail="another mutation is in flight for this session",
            )

    def ground_payload(session: Session, objects, scene_id: str):
        geometric = [GeometricObject(o.id, o.x, o.y, o.shapes) for o in objects]
        return ground(
            geometric,
            session.kernel,
            session.memory.interface,
            session.noise,
            rng=session.rng,
            scene_id=scene_id,
        )

    @app.post("/sessions", status_code=201)
    def create_session(payload: CreateSessionPayload) -> dict[str, Any]:
        try:
            mode = ReificationMode(payload.mode)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown mode {payload.mode!r}")
        kernel = (
            persistence.kernel_from_doc(payload.kernel)
            if payload.kernel
            else KernelConfig()
        )
        noise = persistence.noise_from_doc(payload.noise) if payload.noise else None
        session = Session(
            id=uuid.uuid4().hex,
            memory=MemoryGraph(
                spatial_interface(mode, tuple(payload.types)), payload.fuzziness
            ),
            kernel=kernel,
            noise=noise,
            th_membership=payload.th_membership,
            th_similarity=payload.th_similarity,
            rng=np.random.default_rng(payload.seed),
        )
        with registry_lock:
            sessions[session.id] = session
        return {
            "schema_version": SCHEMA_VERSION,
            "session_id": session.id,
            "params": session.params_doc(),
        }

    @app.get("/sessions/{session_id}")
    def session_info(session_id: str) -> dict[str, Any]:
        session = get_session(session_id)
        return {
            "schema_version": SCHEMA_VERSION,
            "session_id": session.id,
            "params": session.params_doc(),
            "memory_size": len(session.memory),
            "observation_count": len(session.observations),
        }

    @app.post("/sessions/{session_id}/scenes")
    def post_scene(session_id: str, payload: ScenePayload) -> dict[str, Any]:
        session = get_session(session_id)
        acquire_writer(session)
        try:
            edges_before = set(session.memory.edges)
            scene = ground_payload(session, payload.objects, payload.scene_id)
            _, graph, learned = bootstrap_step(
                session.memory,
                scene,
                session.th_membership,
                session.th_similarity,
                force_learn=payload.force_learn,
            )
            added_edges = [
                {"child": child, "parent": parent, "degree": session.memory.edges[(child, parent)]}
                for (child, parent) in sorted(set(session.memory.edges) - edges_before)
            ]
            learned_id = max(session.memory.categories) if learned else None
            session.observations.append(
                {"scene_id": payload.scene_id, "learned": learned}
            )
            return {
                "schema_version": SCHEMA_VERSION,
                "learned": learned,
                "classification": persistence.classification_to_doc(graph),
                "memory_delta": {
                    "learned_category_id": learned_id,
                    "added_edges": added_edges,
                },
                "memory_size": len(session.memory),
            }
        finally:
            session.lock.release()

    @app.post("/sessions/{session_id}/what-if")
    def what_if(session_id: str, payload: WhatIfPayload) -> dict[str, Any]:
        session = get_session(session_id)
        with session.lock:
            # Noise-free grounding keeps this endpoint pure: the session's
            # rng state is reserved for real observations.
            geometric = [
                GeometricObject(o.id, o.x, o.y, o.shapes) for o in payload.objects
            ]
            scene = ground(
                geometric,
                session.kernel,
                session.memory.interface,
                scene_id=payload.scene_id,
            )
            beliefs = encode(scene, session.memory.interface)
            if payload.fuzziness_override is None:
                graph = classify(session.memory, beliefs)
                fuzziness = session.memory.fuzziness
            else:
                graph = classify_with_fuzziness(
                    session.memory, beliefs, payload.fuzziness_override
                )
                fuzziness = payload.fuzziness_override
            return {
                "schema_version": SCHEMA_VERSION,
                "fuzziness": fuzziness,
                "classification": persistence.classification_to_doc(graph),
                "beliefs": persistence.beliefs_to_doc(beliefs),
            }

    @app.get("/sessions/{session_id}/memory")
    def get_memory(session_id: str, format: str = Query(default="json")):
        session = get_session(session_id)
        with session.lock:
            if format == "dot":
                return PlainTextResponse(persistence.export_dot(session.memory))
            if format != "json":
                raise HTTPException(status_code=400, detail=f"unknown format {format!r}")
            return {
                "schema_version": SCHEMA_VERSION,
                "memory": persistence.memory_to_doc(session.memory),
            }

    @app.post("/sessions/{session_id}/annotations")
    def annotate(session_id: str, payload: AnnotationPayload) -> dict[str, Any]:
        session = get_session(session_id)
        acquire_writer(session)
        try:
            try:
                session.memory.annotate(payload.category_id, payload.label)
            except KeyError:
                raise HTTPException(
                    status_code=404,
                    detail=f"unknown category {payload.category_id}",
                )
            return {"schema_version": SCHEMA_VERSION, "ok": True}
        finally:
            session.lock.release()

    @app.patch("/sessions/{session_id}/params")
    def set_params(session_id: str, payload: ParamsPayload) -> dict[str, Any]:
        session = get_session(session_id)
        acquire_writer(session)
        try:
            if payload.th_membership is not None:
                session.th_membership = payload.th_membership
            if payload.th_similarity is not None:
                session.th_similarity = payload.th_similarity
            return {
                "schema_version": SCHEMA_VERSION,
                "params": session.params_doc(),
            }
        finally:
            session.lock.release()

    return app


app = create_app()
