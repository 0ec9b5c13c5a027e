"""Stateless HTTP JSON API over a loaded index bundle.

Handlers are read-only: all interaction state (last selected path, visited
topics) lives with the client and arrives in each request, so identical
requests get identical responses in any order.

The ``*_view`` functions build the response dicts; the CLI reuses them so
command output and API bodies match byte-for-byte (modulo whitespace).
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from .bundle import IndexBundle
from .coordination import SessionState, nearest_copy, promising_branches
from .errors import (
    EmptyQueryError,
    InvalidPathError,
    LcsxError,
    NotFoundError,
)
from .hierarchy import children_of, occurrence_count, tree_stats, validate_path
from .search import rank, tokenize

DEFAULT_LIMIT = 10
MAX_LIMIT = 100  # aligned with the promising-branch window


class ApiException(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


class SearchBody(BaseModel):
    query: str | None = None
    topic: int | None = None
    descendants: bool = False
    limit: int = Field(DEFAULT_LIMIT, ge=1, le=MAX_LIMIT)
    offset: int = Field(0, ge=0)
    last_selected: list[int] | None = None


def parse_path_param(raw: str) -> tuple[int, ...]:
    """Comma-separated topic ids; malformed input is an invalid path."""
    try:
        return tuple(int(part) for part in raw.split(","))
    except ValueError:
        raise InvalidPathError(f"malformed path {raw!r}", step=0) from None


# -- response builders (shared with the CLI) --------------------------------


def stats_view(bundle: IndexBundle) -> dict[str, Any]:
    stats = tree_stats(bundle.graph)
    return {
        "records": bundle.graph.n_records,
        **stats.as_dict(),
        "prune": bundle.prune_params.as_dict(),
    }


def children_view(bundle: IndexBundle, path: tuple[int, ...]) -> dict[str, Any]:
    entries = children_of(bundle.graph, path)
    return {
        "path": list(path),
        "children": [
            {
                "id": e.id,
                "heading": e.heading,
                "direct_count": e.direct_count,
                "subtree_count": e.subtree_count,
                "has_children": e.has_children,
                "copy_count": occurrence_count(bundle.graph, e.id),
            }
            for e in entries
        ],
    }


def _anchor_or_none(bundle: IndexBundle, anchor: tuple[int, ...] | None) -> tuple[int, ...] | None:
    """Anchors are advisory: stale or broken ones degrade to no anchor."""
    if not anchor:
        return None
    try:
        validate_path(bundle.graph, anchor)
    except InvalidPathError:
        return None
    return anchor


def search_view(
    bundle: IndexBundle,
    query: str | None = None,
    topic: int | None = None,
    descendants: bool = False,
    limit: int = DEFAULT_LIMIT,
    offset: int = 0,
    last_selected: tuple[int, ...] | None = None,
) -> dict[str, Any]:
    terms = tokenize(query) if query else []
    if not terms and topic is None:
        raise EmptyQueryError("provide query terms, a topic filter, or both")
    ranking = rank(bundle.index, bundle.graph, terms, topic, descendants)
    session = SessionState(last_selected=_anchor_or_none(bundle, last_selected))
    promising = promising_branches(ranking, bundle.graph, session)
    page = ranking[offset : offset + limit]
    return {
        "total": len(ranking),
        "results": [
            {
                "id": r.id,
                "score": round(r.score, 6),
                "title": r.title,
                "year": r.year,
                "series": r.series,
                "topics": [{"id": t, "heading": h} for t, h in r.assigned_topics],
            }
            for r in page
        ],
        "promising": [
            {
                "topic": b.topic,
                "heading": bundle.graph.headings[b.topic],
                "support": b.support,
                "path": list(b.path),
            }
            for b in promising
        ],
    }


def locate_view(
    bundle: IndexBundle, topic: int, anchor: tuple[int, ...] | None = None
) -> dict[str, Any]:
    path = nearest_copy(bundle.graph, topic, _anchor_or_none(bundle, anchor))
    return {
        "topic": topic,
        "heading": bundle.graph.headings[topic],
        "path": list(path),
        "copy_count": occurrence_count(bundle.graph, topic),
    }


def record_view(bundle: IndexBundle, record_id: str) -> dict[str, Any]:
    record = bundle.bib(record_id)
    if record is None:
        raise NotFoundError(f"unknown record id {record_id!r}")
    graph = bundle.graph
    return {
        "id": record.id,
        "title": record.title,
        "statement": record.statement,
        "year": record.year,
        "series": record.series,
        "subjects": list(record.subjects),
        "topics": [
            {"id": t, "heading": graph.headings[t]}
            for t in graph.record_topics.get(record.id, [])
        ],
    }


# -- app --------------------------------------------------------------------


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def _map_engine_error(exc: LcsxError) -> ApiException:
    if isinstance(exc, EmptyQueryError):
        return ApiException(400, "EMPTY_QUERY", str(exc))
    if isinstance(exc, NotFoundError):
        return ApiException(404, "NOT_FOUND", str(exc))
    if isinstance(exc, InvalidPathError):
        return ApiException(400, "INVALID_PATH", str(exc))
    return ApiException(400, "BAD_REQUEST", str(exc))


def create_app(bundle: IndexBundle | None = None, cors_origin: str | None = None) -> FastAPI:
    app = FastAPI(title="lcsx", docs_url=None, redoc_url=None)
    app.state.bundle = bundle

    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin] if cors_origin else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiException)
    async def handle_api_exception(_request: Request, exc: ApiException) -> JSONResponse:
        return _error_response(exc.status, exc.code, exc.message)

    @app.exception_handler(LcsxError)
    async def handle_engine_error(_request: Request, exc: LcsxError) -> JSONResponse:
        mapped = _map_engine_error(exc)
        return _error_response(mapped.status, mapped.code, mapped.message)

    @app.exception_handler(RequestValidationError)
    async def handle_validation(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return _error_response(400, "BAD_REQUEST", str(exc.errors()[:1]))

    @app.exception_handler(StarletteHTTPException)
    async def handle_http(_request: Request, exc: StarletteHTTPException) -> JSONResponse:
        code = "NOT_FOUND" if exc.status_code == 404 else "BAD_REQUEST"
        return _error_response(exc.status_code, code, str(exc.detail))

    def need_bundle() -> IndexBundle:
        loaded = app.state.bundle
        if loaded is None:
            raise ApiException(503, "BAD_REQUEST", "no index bundle loaded")
        return loaded

    @app.get("/api/stats")
    async def get_stats() -> JSONResponse:
        return JSONResponse(stats_view(need_bundle()))

    @app.get("/api/tree/children")
    async def get_children(path: str = "0") -> JSONResponse:
        loaded = need_bundle()
        return JSONResponse(children_view(loaded, parse_path_param(path)))

    @app.post("/api/search")
    async def post_search(body: SearchBody) -> JSONResponse:
        loaded = need_bundle()
        return JSONResponse(
            search_view(
                loaded,
                query=body.query,
                topic=body.topic,
                descendants=body.descendants,
                limit=body.limit,
                offset=body.offset,
                last_selected=tuple(body.last_selected) if body.last_selected else None,
            )
        )

    @app.get("/api/locate")
    async def get_locate(topic: int, anchor: str | None = None) -> JSONResponse:
        loaded = need_bundle()
        anchor_path = parse_path_param(anchor) if anchor else None
        return JSONResponse(locate_view(loaded, topic, anchor_path))

    @app.get("/api/record/{record_id:path}")
    async def get_record(record_id: str) -> JSONResponse:
        loaded = need_bundle()
        return JSONResponse(record_view(loaded, record_id))

    return app
