"""HTTP API over the pipeline for the interactive explorer.

Sessions hold an uploaded cloud in memory, expire after an idle window and
cache each built graph's canonical JSON bytes so repeated builds with the
same (epsilon, seed) return byte-identical payloads.  Error mapping:
400 malformed request, 404 unknown session or ball, 422 domain errors with
a machine-readable ``code``.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import analysis, regression
from .errors import BallMapperError, UnknownBallError
from .mapper import BallMapperGraph, build, graph_to_json, layout
from .pointcloud import PointCloud, load_cloud

DEFAULT_ROW_CAP = 100_000
DEFAULT_PAYLOAD_CAP = 64 * 1024 * 1024
DEFAULT_IDLE_SECONDS = 3600.0


@dataclass
class Session:
    session_id: str
    cloud: PointCloud
    created: float
    last_access: float
    graphs: dict[tuple[float, int], BallMapperGraph] = field(default_factory=dict)
    graph_bytes: dict[tuple[float, int], bytes] = field(default_factory=dict)
    colorings: dict[str, dict] = field(default_factory=dict)
    build_locks: dict[tuple[float, int], threading.Lock] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, idle_seconds: float = DEFAULT_IDLE_SECONDS):
        self.idle_seconds = idle_seconds
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, cloud: PointCloud) -> Session:
        session = Session(
            session_id=secrets.token_hex(16),
            cloud=cloud,
            created=time.monotonic(),
            last_access=time.monotonic(),
        )
        with self._lock:
            self._purge()
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            self._purge()
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_access = time.monotonic()
            return session

    def _purge(self):
        now = time.monotonic()
        stale = [
            sid
            for sid, session in self._sessions.items()
            if now - session.last_access > self.idle_seconds
        ]
        for sid in stale:
            del self._sessions[sid]


class SessionBody(BaseModel):
    csv_text: str
    axes: list[str]
    id_column: str
    attribute_columns: list[str] = Field(default_factory=list)


class GraphKey(BaseModel):
    epsilon: float
    seed: int = 0


class GraphBody(GraphKey):
    pass


class ColoringBody(BaseModel):
    graph: GraphKey
    kind: str
    attribute: str | None = None
    aggregator: str = "mean"
    value: str | None = None
    outcome: str | None = None
    regressors: list[str] | None = None
    threshold: float | None = None
    targets: list[int] | None = None


class ComparisonBody(BaseModel):
    graph: GraphKey
    group_a: list[int]
    group_b: list[int]


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"code": code, "message": message}
    )


def _coloring_payload(coloring) -> dict:
    return {
        "label": coloring.label,
        "scale_min": coloring.scale_min,
        "scale_max": coloring.scale_max,
        "values": {str(k): v for k, v in sorted(coloring.values.items())},
    }


def create_app(
    row_cap: int = DEFAULT_ROW_CAP,
    payload_cap: int = DEFAULT_PAYLOAD_CAP,
    idle_seconds: float = DEFAULT_IDLE_SECONDS,
) -> FastAPI:
    app = FastAPI(title="ballmapper", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(idle_seconds=idle_seconds)
    app.state.sessions = store

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return _error(400, "malformed_request", str(exc.errors()[:1]))

    @app.exception_handler(BallMapperError)
    async def domain_error(request: Request, exc: BallMapperError):
        if isinstance(exc, UnknownBallError):
            return _error(404, exc.code, str(exc))
        return _error(422, exc.code, str(exc))

    def _session_or_none(session_id: str) -> Session | None:
        return store.get(session_id)

    def _built_graph(session: Session, key: GraphKey):
        cache_key = (float(key.epsilon), int(key.seed))
        with session.lock:
            if cache_key in session.graphs:
                return session.graphs[cache_key], session.graph_bytes[cache_key]
            build_lock = session.build_locks.setdefault(cache_key, threading.Lock())
        with build_lock:
            with session.lock:
                if cache_key in session.graphs:
                    return session.graphs[cache_key], session.graph_bytes[cache_key]
            graph = build(session.cloud, key.epsilon, key.seed)
            payload = graph_to_json(graph, session.cloud).encode("utf-8")
            with session.lock:
                session.graphs[cache_key] = graph
                session.graph_bytes[cache_key] = payload
            return graph, payload

    @app.post("/sessions")
    async def create_session(body: SessionBody):
        if len(body.csv_text) > payload_cap:
            return _error(422, "payload_too_large", "CSV payload exceeds the cap")
        report = load_cloud(
            body.csv_text, body.axes, body.id_column, body.attribute_columns
        )
        if report.cloud.n_rows > row_cap:
            return _error(422, "row_cap_exceeded", f"row cap is {row_cap}")
        session = store.create(report.cloud)
        return {
            "session_id": session.session_id,
            "rows": report.cloud.n_rows,
            "dropped_rows": report.dropped_rows,
            "axes": list(report.cloud.axis_names),
            "attributes": list(report.cloud.attributes),
        }

    @app.post("/sessions/{session_id}/graphs")
    async def build_graph_endpoint(session_id: str, body: GraphBody):
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", "no such session")
        _, payload = _built_graph(session, body)
        return Response(content=payload, media_type="application/json")

    @app.get("/sessions/{session_id}/sweep")
    async def sweep(session_id: str, epsilons: str, seed: int = 0):
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", "no such session")
        try:
            grid = [float(token) for token in epsilons.split(",") if token.strip()]
        except ValueError:
            return _error(400, "malformed_request", "epsilons must be numbers")
        if not grid:
            return _error(400, "malformed_request", "epsilons is empty")
        rows = analysis.radius_sweep(session.cloud, grid, seed)
        return {
            "rows": [
                {
                    "epsilon": row.epsilon,
                    "balls": row.ball_count,
                    "size_mean": row.size_mean,
                    "size_sd": row.size_sd,
                    "edges_per_ball": row.edges_per_ball,
                }
                for row in rows
            ]
        }

    @app.post("/sessions/{session_id}/colorings")
    async def coloring(session_id: str, body: ColoringBody):
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", "no such session")
        cache_key = body.model_dump_json()
        with session.lock:
            cached = session.colorings.get(cache_key)
        if cached is not None:
            return cached
        graph, _ = _built_graph(session, body.graph)
        cloud = session.cloud
        if body.kind == "attribute":
            if not body.attribute:
                return _error(400, "malformed_request", "attribute is required")
            if body.aggregator not in ("mean", "sd"):
                return _error(400, "malformed_request", "aggregator must be mean|sd")
            values = cloud.numeric_attribute(body.attribute)
            result = analysis.color_by(
                graph,
                values.tolist(),
                body.aggregator,
                label=f"{body.attribute}_{body.aggregator}",
            )
        elif body.kind == "region":
            if not body.attribute or body.value is None:
                return _error(
                    400, "malformed_request", "attribute and value are required"
                )
            flags = analysis.region_flags(cloud, body.attribute, body.value)
            result = analysis.subgroup_fraction(
                graph, flags, label=f"fraction_{body.attribute}_{body.value}"
            )
        elif body.kind == "residual-threshold":
            if not body.outcome or not body.regressors or body.threshold is None:
                return _error(
                    400,
                    "malformed_request",
                    "outcome, regressors and threshold are required",
                )
            fit = regression.ols_fit(cloud, body.outcome, body.regressors)
            (result,) = regression.residual_threshold_fractions(
                graph, fit, [body.threshold]
            )
        elif body.kind == "distance-to-balls":
            if not body.targets:
                return _error(400, "malformed_request", "targets is required")
            analysis.validate_ball_ids(graph, body.targets)
            label = "dist_to_" + "_".join(str(b) for b in body.targets)
            result = analysis.distance_coloring(graph, cloud, body.targets, label=label)
        else:
            return _error(400, "malformed_request", f"unknown kind {body.kind!r}")
        payload = _coloring_payload(result)
        with session.lock:
            session.colorings[cache_key] = payload
        return payload

    @app.post("/sessions/{session_id}/comparisons")
    async def comparison(session_id: str, body: ComparisonBody):
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", "no such session")
        graph, _ = _built_graph(session, body.graph)
        analysis.validate_ball_ids(graph, body.group_a + body.group_b)
        report = analysis.compare_groups(
            graph, session.cloud, body.group_a, body.group_b
        )
        return {
            "group_a": list(report.group_a_balls),
            "group_b": list(report.group_b_balls),
            "size_a": report.size_a,
            "size_b": report.size_b,
            "rows": [
                {
                    "axis": row.axis,
                    "mean_a": row.mean_a,
                    "mean_b": row.mean_b,
                    "diff": row.diff,
                    "std_diff": row.std_diff,
                }
                for row in report.rows
            ],
        }

    @app.get("/sessions/{session_id}/layout")
    async def layout_endpoint(session_id: str, graph: str, layout_seed: int = 0):
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", "no such session")
        try:
            eps_text, seed_text = graph.split(",")
            key = GraphKey(epsilon=float(eps_text), seed=int(seed_text))
        except ValueError:
            return _error(
                400, "malformed_request", "graph must be '<epsilon>,<seed>'"
            )
        built, _ = _built_graph(session, key)
        positions = layout(built, layout_seed)
        return {
            "positions": {
                str(ball_id): [x, y] for ball_id, (x, y) in sorted(positions.items())
            }
        }

    return app
