"""Stateless HTTP API wrapping the discovery engine.

Endpoints: ``POST /api/evaluate`` (coordinates only, the fast path for
dragging), ``POST /api/discover`` (full report, bounded by a server-side
wall-time cap on top of the per-check budget), ``GET /api/health``.
Constructions travel in each request, either as DSL text or as a step-list
JSON object; there is no session state.
"""

from __future__ import annotations

import asyncio
import hashlib
import json
import threading
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import __version__
from .construction import Construction
from .dsl import construction_from_json, parse_dsl
from .engine import DiscoveryConfig, discover
from .errors import (
    DegenerateInstanceError,
    DegenerateStepError,
    DiscoveryCancelledError,
    DslError,
    GeodiscoverError,
    WallTimeExceededError,
)

ConstructionPayload = Union[str, dict]


class ConfigModel(BaseModel):
    timeout_s: float = Field(default=5.0, gt=0)
    tolerance: float = Field(default=1e-8, gt=0)
    resamples: int = Field(default=4, ge=1)
    seed: int = 0
    hide: List[str] = Field(default_factory=list)
    prune: bool = True
    pin: bool = True
    wall_cap_s: Optional[float] = Field(default=None, gt=0)


class EvaluateRequest(BaseModel):
    construction: ConstructionPayload


class EvaluateResponse(BaseModel):
    coordinates: Dict[str, Tuple[float, float]]
    request_hash: str


class DiscoverRequest(BaseModel):
    construction: ConstructionPayload
    target: str
    config: ConfigModel = Field(default_factory=ConfigModel)


class DiscoverResponse(BaseModel):
    report: dict
    coordinates: Dict[str, Tuple[float, float]]
    request_hash: str


def _hash_of(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _build_construction(payload: ConstructionPayload) -> Construction:
    try:
        if isinstance(payload, str):
            return parse_dsl(payload).construction
        return construction_from_json(payload)
    except DslError as exc:
        raise HTTPException(
            status_code=400,
            detail={"message": exc.message, "line": exc.line, "column": exc.column},
        )
    except DegenerateStepError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except (KeyError, TypeError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=f"malformed construction: {exc}")


def create_app(wall_cap_s: float = 60.0, frontend_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="geodiscover", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/health")
    def health():
        return {"name": "geodiscover", "version": __version__}

    @app.post("/api/evaluate", response_model=EvaluateResponse)
    def evaluate(req: EvaluateRequest):
        construction = _build_construction(req.construction)
        try:
            coords = construction.coords
        except DegenerateInstanceError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return EvaluateResponse(
            coordinates={k: (x, y) for k, (x, y) in coords.items()},
            request_hash=_hash_of(req.model_dump()),
        )

    @app.post("/api/discover", response_model=DiscoverResponse)
    async def discover_endpoint(req: DiscoverRequest, request: Request):
        construction = _build_construction(req.construction)
        if req.config.hide:
            construction = construction.with_hidden(req.config.hide)
        cap = min(req.config.wall_cap_s or wall_cap_s, wall_cap_s)
        cancel = threading.Event()
        config = DiscoveryConfig(
            tolerance=req.config.tolerance,
            resamples=req.config.resamples,
            seed=req.config.seed,
            timeout_s=req.config.timeout_s,
            prune=req.config.prune,
            pin=req.config.pin,
            wall_cap_s=cap,
            cancel=cancel.is_set,
        )
        if not construction.has_point(req.target):
            raise HTTPException(status_code=400, detail=f"unknown target '{req.target}'")

        loop = asyncio.get_running_loop()
        job = loop.run_in_executor(None, lambda: discover(construction, req.target, config))

        async def watch_disconnect():
            while not job.done():
                if await request.is_disconnected():
                    cancel.set()
                    return
                await asyncio.sleep(0.2)

        watcher = asyncio.ensure_future(watch_disconnect())
        try:
            report = await job
        except WallTimeExceededError as exc:
            raise HTTPException(status_code=408, detail=str(exc))
        except DiscoveryCancelledError as exc:
            raise HTTPException(status_code=408, detail=f"cancelled: {exc}")
        except DegenerateInstanceError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        except GeodiscoverError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        finally:
            watcher.cancel()
        return DiscoverResponse(
            report=report.to_dict(),
            coordinates={k: (x, y) for k, (x, y) in construction.coords.items()},
            request_hash=_hash_of(req.model_dump()),
        )

    front = Path(frontend_dir) if frontend_dir else Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if front.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(front), html=True), name="ui")
    return app


app = create_app()
