"""JSON-over-HTTP API: the single backend for the web explorer and scripts.

Datasets are loaded once at startup from snapshot files named in a JSON
config; after that every request path is read-only over immutable data,
so the app is safe under full request concurrency. Every non-2xx response
body is one ApiError object {code, message, detail?}.

Config file shape:

    {
      "listen": "127.0.0.1:8080",
      "snapshots": ["maven.snapshot.json", ...],
      "model": "lexicon.json",            // optional pre-trained lexicon
      "cors_origins": ["http://localhost:5173"],
      "static_dir": "frontend/dist"       // optional: serve the web UI
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from edx import analytics, annotator, serialize
from edx.errors import EdxError, FormatMismatch, InvalidArgument, NotFound
from edx.index import CorpusLookup, instances_for_event, instances_for_trigger, load_snapshot, top_triggers
from edx.model import normalize_trigger

API_PREFIX = "/api/v1"


@dataclass(frozen=True)
class ApiError:
    code: str  # not_found | invalid_argument | internal
    message: str
    detail: object | None = None


@dataclass
class Dataset:
    """One loaded snapshot plus everything derived from it."""

    name: str
    corpus: object
    index: object
    lookup: CorpusLookup
    model: annotator.LexiconModel | None


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    snapshots: list[str] = field(default_factory=list)
    model: str | None = None
    cors_origins: list[str] = field(default_factory=list)
    static_dir: str | None = None


def load_config(path) -> ServiceConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatMismatch(f"config {path} is not valid JSON: {exc}") from None
    base = Path(path).resolve().parent

    def resolve(p):
        return str((base / p) if not Path(p).is_absolute() else Path(p))

    try:
        listen = raw.get("listen", "127.0.0.1:8080")
        host, _, port = listen.rpartition(":")
        return ServiceConfig(
            host=host or "127.0.0.1",
            port=int(port),
            snapshots=[resolve(p) for p in raw.get("snapshots", [])],
            model=resolve(raw["model"]) if raw.get("model") else None,
            cors_origins=list(raw.get("cors_origins", [])),
            static_dir=resolve(raw["static_dir"]) if raw.get("static_dir") else None,
        )
    except (AttributeError, TypeError, ValueError) as exc:
        raise FormatMismatch(f"config {path} is malformed: {exc}") from None


def load_datasets(config: ServiceConfig) -> dict[str, Dataset]:
    """Load snapshots and attach a lexicon to each dataset.

    A lexicon is trained from each dataset's own index; a pre-trained
    model file from the config replaces the trained one for the dataset
    it was built from (matched by source corpus name).
    """
    override = annotator.load_model(config.model) if config.model else None
    datasets: dict[str, Dataset] = {}
    for snap_path in config.snapshots or []:
        corpus, index = load_snapshot(snap_path)
        if corpus.name in datasets:
            raise InvalidArgument(f"two snapshots load the same dataset name {corpus.name!r}")
        if override is not None and override.source == corpus.name:
            model = override
        else:
            try:
                model = annotator.train_lexicon(index)
            except InvalidArgument:
                model = None  # no positive triggers; /annotate will refuse
        datasets[corpus.name] = Dataset(
            name=corpus.name, corpus=corpus, index=index,
            lookup=CorpusLookup(corpus), model=model,
        )
    return datasets


class AnnotateRequest(BaseModel):
    text: str
    dataset: str
    tau_neg: float | None = None
    tau_event: float | None = None


def _error(status: int, err: ApiError) -> JSONResponse:
    body = {"code": err.code, "message": err.message}
    if err.detail is not None:
        body["detail"] = err.detail
    return JSONResponse(status_code=status, content=body)


def _check_paging(page: int, size: int) -> None:
    if page < 1:
        raise InvalidArgument(f"page must be >= 1, got {page}")
    if not 1 <= size <= 200:
        raise InvalidArgument(f"size must be in [1,200], got {size}")


def create_app(datasets: dict[str, Dataset], cors_origins=(), static_dir=None) -> FastAPI:
    app = FastAPI(title="edx", docs_url=None, redoc_url=None, openapi_url=None)
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
            expose_headers=["X-Total-Count"],
        )

    def dataset(name: str) -> Dataset:
        ds = datasets.get(name)
        if ds is None:
            raise NotFound(f"unknown dataset {name!r}")
        return ds

    def paged_response(payload: dict) -> JSONResponse:
        return JSONResponse(content=payload, headers={"X-Total-Count": str(payload["total"])})

    @app.exception_handler(NotFound)
    async def _not_found(request: Request, exc: NotFound):
        return _error(404, ApiError("not_found", str(exc)))

    @app.exception_handler(InvalidArgument)
    async def _invalid(request: Request, exc: InvalidArgument):
        return _error(400, ApiError("invalid_argument", str(exc)))

    @app.exception_handler(EdxError)
    async def _data_error(request: Request, exc: EdxError):
        return _error(500, ApiError("internal", str(exc)))

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError):
        detail = [{"loc": list(map(str, e.get("loc", []))), "msg": e.get("msg", "")} for e in exc.errors()]
        return _error(400, ApiError("invalid_argument", "malformed request parameters", detail))

    @app.exception_handler(StarletteHTTPException)
    async def _http(request: Request, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code == 404 else (
            "invalid_argument" if exc.status_code in (400, 405, 422) else "internal")
        return _error(exc.status_code, ApiError(code, str(exc.detail)))

    @app.exception_handler(Exception)
    async def _internal(request: Request, exc: Exception):
        return _error(500, ApiError("internal", "internal server error"))

    @app.get(API_PREFIX + "/datasets")
    def list_datasets():
        return [
            {"name": ds.name, "domain": ds.corpus.domain, "totals": serialize.totals_payload(ds.index)}
            for ds in datasets.values()
        ]

    @app.get(API_PREFIX + "/datasets/{ds}/overview")
    def dataset_overview(ds: str):
        d = dataset(ds)
        return serialize.overview_payload(analytics.overview(d.index, d.corpus))

    @app.get(API_PREFIX + "/datasets/{ds}/events")
    def list_events(ds: str, sort: str = "count", page: int = 1, size: int = 50):
        d = dataset(ds)
        _check_paging(page, size)
        if sort == "count":
            entries = sorted(d.index.by_event.values(), key=lambda e: (-e.mention_count, e.event.name))
        elif sort == "name":
            entries = sorted(d.index.by_event.values(), key=lambda e: e.event.name)
        else:
            raise InvalidArgument(f"sort must be 'count' or 'name', got {sort!r}")
        window = entries[(page - 1) * size:page * size]
        payload = {
            "items": [serialize.event_entry_payload(e) for e in window],
            "total": len(entries),
            "page": page,
            "size": size,
        }
        return paged_response(payload)

    @app.get(API_PREFIX + "/datasets/{ds}/events/{event}/triggers")
    def event_triggers(ds: str, event: str, limit: int = 10):
        d = dataset(ds)
        return serialize.top_triggers_payload(event, top_triggers(d.index, event, limit))

    @app.get(API_PREFIX + "/datasets/{ds}/events/{event}/instances")
    def event_instances(ds: str, event: str, page: int = 1, size: int = 20):
        d = dataset(ds)
        result = instances_for_event(d.index, d.corpus, event, page=page, page_size=size, lookup=d.lookup)
        return paged_response(serialize.page_payload(result, serialize.rendered_instance_payload))

    @app.get(API_PREFIX + "/datasets/{ds}/triggers/{word}")
    def trigger_summary(ds: str, word: str):
        d = dataset(ds)
        entry = d.index.by_trigger.get(normalize_trigger(word))
        if entry is None:
            raise NotFound(f"unknown trigger {word!r}")
        return serialize.trigger_entry_payload(entry)

    @app.get(API_PREFIX + "/datasets/{ds}/triggers/{word}/instances")
    def trigger_instances(ds: str, word: str, event: str | None = None, page: int = 1, size: int = 20):
        d = dataset(ds)
        result = instances_for_trigger(d.index, d.corpus, word, event_filter=event,
                                       page=page, page_size=size, lookup=d.lookup)
        return paged_response(serialize.page_payload(result, serialize.rendered_instance_payload))

    @app.get(API_PREFIX + "/datasets/{ds}/stats/sparsity")
    def stats_sparsity(ds: str, k: int = 20):
        d = dataset(ds)
        config = analytics.AnalyticsConfig(min_instances=k)
        return serialize.sparsity_payload(analytics.sparsity(d.index, config))

    @app.get(API_PREFIX + "/datasets/{ds}/stats/dominance")
    def stats_dominance(ds: str, ratio: float = 5.0, k: int = 20):
        d = dataset(ds)
        config = analytics.AnalyticsConfig(min_instances=k, dominance_ratio=ratio)
        return serialize.dominance_payload(analytics.dominance(d.index, config))

    @app.get(API_PREFIX + "/datasets/{ds}/review-candidates")
    def review_candidates(ds: str, category: str | None = None, page: int = 1, size: int = 50):
        d = dataset(ds)
        _check_paging(page, size)
        if category is not None and category not in analytics.CATEGORIES:
            raise InvalidArgument(f"unknown category {category!r}; expected one of {', '.join(analytics.CATEGORIES)}")
        candidates = analytics.flag_review_candidates(d.index, d.corpus)
        if category is not None:
            candidates = [c for c in candidates if c.category == category]
        return paged_response(serialize.candidates_payload(candidates, page, size))

    @app.post(API_PREFIX + "/annotate")
    def annotate_text(request: AnnotateRequest):
        d = dataset(request.dataset)
        if d.model is None:
            raise InvalidArgument(f"dataset {request.dataset!r} has no trainable lexicon")
        model = annotator.with_thresholds(d.model, request.tau_neg, request.tau_event)
        return serialize.annotated_payload(annotator.annotate(model, request.text), d.name)

    if static_dir:
        root = Path(static_dir).resolve()

        @app.api_route("/{path:path}", methods=["GET", "HEAD"])
        def static_files(path: str):
            if path.startswith("api/"):
                raise NotFound(f"unknown API path /{path}")
            candidate = (root / path).resolve() if path else root / "index.html"
            if candidate.is_file() and candidate.is_relative_to(root):
                return FileResponse(candidate)
            # SPA fallback: deep links resolve to the app shell.
            return FileResponse(root / "index.html")

    return app


def app_from_config(path) -> FastAPI:
    config = load_config(path)
    return create_app(load_datasets(config), config.cors_origins, config.static_dir)


def serve(config: ServiceConfig) -> None:
    import uvicorn

    app = create_app(load_datasets(config), config.cors_origins, config.static_dir)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
