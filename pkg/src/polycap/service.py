"""JSON session service for the mutation explorer.

Sessions hold a polygon plus its snapshot history for undo; replay is the
client's job (create a fresh session, apply the word).  All payloads use
the exact JSON encodings of the core modules; decimals are attached for
display only.  Mutation errors surface as 409 with the engine error name,
unknown sessions as 404, malformed input as 400.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import atf, ech, perfclass, staircase
from .cli import default_digits, default_sweep_samples
from .exactnum import QuadNum


@dataclass
class Session:
    id: str
    beta: QuadNum
    history: list[atf.AtfPolygon] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def polygon(self) -> atf.AtfPolygon:
        return self.history[-1]


class CreateSession(BaseModel):
    beta: Optional[dict] = None
    preset: Optional[str] = None


class MutateBody(BaseModel):
    vertex: str


_ENGINE_ERRORS = (atf.NoIntersectionError, atf.AmbiguousHitError,
                  atf.ConvexityLostError, atf.LabelError,
                  atf.EmbeddingPreconditionError)


def _error_name(exc: Exception) -> str:
    name = type(exc).__name__
    return name[:-5] if name.endswith("Error") else name


def _resolve_beta(body: CreateSession) -> QuadNum:
    if body.beta is not None:
        return QuadNum.from_json(body.beta)
    preset = body.preset or "main"
    if preset == "main":
        return staircase.MAIN_BETA
    if preset.startswith("n="):
        return perfclass.family_n(int(preset[2:])).beta
    raise ValueError(f"unknown preset {preset!r}")


def _classes_within(k_max: int) -> list[perfclass.QuasiPerfectClass]:
    out = []
    k = 0
    while True:
        c = perfclass.outer_family(k)
        if perfclass.ech_index(c) > k_max:
            break
        out.append(c)
        k += 1
    k = 1
    while True:
        c = perfclass.inner_family(k)
        if perfclass.ech_index(c) > k_max:
            break
        out.append(c)
        k += 1
    if perfclass.ech_index(perfclass.STEP_MAIN) <= k_max:
        out.append(perfclass.STEP_MAIN)
    return out


def create_app() -> FastAPI:
    app = FastAPI(title="polycap session service")
    sessions: dict[str, Session] = {}

    @app.exception_handler(RequestValidationError)
    async def malformed(_req: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "Malformed",
                                                      "detail": str(exc)})

    def get_session(sid: str) -> Optional[Session]:
        return sessions.get(sid)

    def polygon_payload(poly: atf.AtfPolygon) -> dict:
        """Core polygon JSON (identical to the CLI's) plus display-only
        decimals/radical strings so the client never computes anything."""
        digits = min(default_digits(), 29)
        display = {
            "labels": dict(poly.labels()),
            "side_decimals": {name: v.decimal(digits, "down")
                              for name, v in poly.side_lengths().items()},
            "side_pretty": {name: v.pretty()
                            for name, v in poly.side_lengths().items()},
            "vertex_decimals": [[n.vertex[0].decimal(digits, "down"),
                                 n.vertex[1].decimal(digits, "down")]
                                for n in poly.nodes],
        }
        return {"polygon": poly.to_json(), "display": display}

    def embedding_payload(poly: atf.AtfPolygon) -> Optional[dict]:
        try:
            sample = atf.extract_embedding(poly)
        except _ENGINE_ERRORS:
            return None
        digits = default_digits()
        body = sample.to_json()
        body["z_decimal"] = sample.z.decimal(digits, "down")
        assert sample.lam is not None
        body["lambda_decimal"] = sample.lam.decimal(digits, "down")
        return body

    @app.post("/sessions")
    def create_session(body: CreateSession):
        try:
            beta = _resolve_beta(body)
            poly = atf.init_polydisk(beta)
        except (ValueError, KeyError) as exc:
            return JSONResponse(status_code=400,
                                content={"error": "Malformed", "detail": str(exc)})
        sid = uuid.uuid4().hex
        sessions[sid] = Session(id=sid, beta=beta, history=[poly])
        return {"id": sid, **polygon_payload(poly)}

    @app.get("/sessions/{sid}/polygon")
    def get_polygon(sid: str):
        s = get_session(sid)
        if s is None:
            return JSONResponse(status_code=404, content={"error": "UnknownSession"})
        return polygon_payload(s.polygon)

    @app.post("/sessions/{sid}/mutate")
    def do_mutate(sid: str, body: MutateBody):
        s = get_session(sid)
        if s is None:
            return JSONResponse(status_code=404, content={"error": "UnknownSession"})
        if body.vertex not in ("x", "y", "v"):
            return JSONResponse(status_code=400,
                                content={"error": "Malformed",
                                         "detail": "vertex must be x, y or v"})
        with s.lock:
            try:
                poly = atf.mutate(s.polygon, body.vertex)
            except _ENGINE_ERRORS as exc:
                return JSONResponse(status_code=409,
                                    content={"error": _error_name(exc),
                                             "detail": str(exc)})
            s.history.append(poly)
            return {**polygon_payload(poly),
                    "embedding": embedding_payload(poly)}

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        s = get_session(sid)
        if s is None:
            return JSONResponse(status_code=404, content={"error": "UnknownSession"})
        with s.lock:
            if len(s.history) > 1:
                s.history.pop()
            return polygon_payload(s.polygon)

    @app.get("/sessions/{sid}/embedding")
    def get_embedding(sid: str):
        s = get_session(sid)
        if s is None:
            return JSONResponse(status_code=404, content={"error": "UnknownSession"})
        body = embedding_payload(s.polygon)
        if body is None:
            return JSONResponse(status_code=409,
                                content={"error": "EmbeddingPrecondition",
                                         "detail": "polygon does not admit extraction"})
        return body

    @app.get("/sessions/{sid}/bounds")
    def get_bounds(sid: str, kmax: int = 500, lo: str = "1", hi: str = "9",
                   samples: int = 80):
        s = get_session(sid)
        if s is None:
            return JSONResponse(status_code=404, content={"error": "UnknownSession"})
        try:
            zs = default_sweep_samples(Fraction(lo), Fraction(hi), samples, 64)
        except (ValueError, ZeroDivisionError) as exc:
            return JSONResponse(status_code=400,
                                content={"error": "Malformed", "detail": str(exc)})
        digits = default_digits()
        classes = _classes_within(kmax)
        env = staircase.envelope(s.beta, classes, zs)
        sweep = ech.lower_bound_sweep(s.beta, kmax, zs)
        marks = []
        for poly in s.history[1:]:
            body = embedding_payload(poly)
            if body is not None:
                marks.append(body)
        def with_dec(sample):
            body = sample.to_json()
            if sample.lam is not None:
                body["lambda_decimal"] = sample.lam.decimal(digits, "down")
            body["z_decimal"] = sample.z.decimal(digits, "down")
            return body
        return {
            "envelope": [with_dec(e) for e in env],
            "sweep": [with_dec(e) for e in sweep],
            "volume": [{"z": QuadNum.of(z).to_json(),
                        "z_decimal": QuadNum.of(z).decimal(digits, "down"),
                        "value": staircase.volume_curve_decimal(z, s.beta, digits)}
                       for z in zs],
            "embeddings": marks,
        }

    return app
