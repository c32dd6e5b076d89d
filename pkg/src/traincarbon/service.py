"""Stateless HTTP JSON API over the estimation engine.

The catalog is loaded once at startup and never mutated, so every request
handler is a pure function of its inputs and requests can be served
concurrently in any order. Error payloads carry a machine-readable code:

* ``not_found``   -> 404 (unknown hardware/region, with suggestions)
* ``bad_request`` -> 400 (malformed body, unknown provider/metric)
* ``range_error`` -> 422 (out-of-range values, empty comparisons)
* ``internal``    -> 500

Endpoints mirror the CLI 1:1 and render through the same reporting layer,
so responses match ``traincarbon --format json`` output field for field.
Every response embeds the dataset version string.
"""

from __future__ import annotations

import argparse
import os
from pathlib import Path
from typing import Any, Mapping, Sequence

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import catalog as cat
from . import engine, reporting
from .errors import (
    EmptyComparisonError,
    NotFoundError,
    RangeError,
    TrainCarbonError,
)

UI_DIR_ENV = "TRAINCARBON_UI_DIR"
CORS_ORIGIN_ENV = "TRAINCARBON_CORS_ORIGIN"


class ApiError(TrainCarbonError):
    """Request failure with an HTTP status and a stable error code."""

    def __init__(
        self,
        status: int,
        code: str,
        message: str,
        suggestions: Sequence[str] | None = None,
    ):
        self.status = status
        self.code = code
        self.suggestions = list(suggestions) if suggestions else None
        super().__init__(message)

    def response(self) -> JSONResponse:
        body: dict[str, Any] = {"code": self.code, "message": str(self)}
        if self.suggestions:
            body["suggestions"] = self.suggestions
        return JSONResponse(status_code=self.status, content=body)


def _bad_request(message: str) -> ApiError:
    return ApiError(400, "bad_request", message)


# ---------------------------------------------------------------------------
# Body parsing: plain dicts in, engine types out, ApiError on anything off.
# ---------------------------------------------------------------------------


def _require_number(body: Mapping[str, Any], key: str, default: float | None) -> float:
    value = body.get(key, default)
    if value is None and default is None:
        raise _bad_request(f"missing required field {key!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _bad_request(f"field {key!r} must be a number")
    return float(value)


def _optional_number(body: Mapping[str, Any], key: str) -> float | None:
    value = body.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _bad_request(f"field {key!r} must be a number")
    return float(value)


def _require_int(body: Mapping[str, Any], key: str, default: int) -> int:
    value = body.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise _bad_request(f"field {key!r} must be an integer")
    return value


def _require_str(body: Mapping[str, Any], key: str) -> str:
    value = body.get(key)
    if not isinstance(value, str) or not value:
        raise _bad_request(f"missing required string field {key!r}")
    return value


def _parse_provider(raw: str) -> cat.Provider:
    try:
        return cat.Provider(raw.lower())
    except ValueError:
        valid = ", ".join(p.value for p in cat.Provider)
        raise _bad_request(f"unknown provider {raw!r}; expected one of {valid}") from None


def _parse_workload(body: Mapping[str, Any]) -> engine.Workload:
    return engine.Workload(
        hardware_name=_require_str(body, "hardware_name"),
        hours=_require_number(body, "hours", None),
        device_count=_require_int(body, "device_count", 1),
        pue_override=_optional_number(body, "pue_override"),
        utilization=_require_number(body, "utilization", 1.0),
    )


def _parse_estimate_request(body: Mapping[str, Any]) -> engine.EstimateRequest:
    workload = _parse_workload(body)
    return engine.EstimateRequest(
        provider=_parse_provider(_require_str(body, "provider")),
        region_code=_require_str(body, "region_code"),
        hardware_name=workload.hardware_name,
        hours=workload.hours,
        device_count=workload.device_count,
        pue_override=workload.pue_override,
        utilization=workload.utilization,
    )


async def _json_body(request: Request) -> Mapping[str, Any]:
    try:
        body = await request.json()
    except Exception:
        raise _bad_request("request body must be a JSON object") from None
    if not isinstance(body, Mapping):
        raise _bad_request("request body must be a JSON object")
    return body


# ---------------------------------------------------------------------------
# Application factory
# ---------------------------------------------------------------------------


def create_app(
    catalog: cat.DataCatalog | None = None,
    geo_map: Mapping[str, str] | None = None,
    ui_dir: str | Path | None = None,
    cors_origin: str | None = None,
) -> FastAPI:
    """Build the service with the catalog loaded once, up front."""
    if catalog is None:
        catalog = cat.load_catalog()
    if geo_map is None:
        geo_map = cat.load_geo_map()
    if cors_origin is None:
        cors_origin = os.environ.get(CORS_ORIGIN_ENV, "*")

    app = FastAPI(title="traincarbon", version=catalog.version, docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return exc.response()

    @app.exception_handler(NotFoundError)
    async def _not_found(_request: Request, exc: NotFoundError) -> JSONResponse:
        return ApiError(404, "not_found", str(exc), suggestions=exc.suggestions).response()

    @app.exception_handler(RangeError)
    async def _range_error(_request: Request, exc: RangeError) -> JSONResponse:
        return ApiError(422, "range_error", str(exc)).response()

    @app.exception_handler(EmptyComparisonError)
    async def _empty_comparison(_request: Request, exc: EmptyComparisonError) -> JSONResponse:
        return ApiError(422, "range_error", str(exc)).response()

    @app.exception_handler(TrainCarbonError)
    async def _internal(_request: Request, exc: TrainCarbonError) -> JSONResponse:
        return ApiError(500, "internal", str(exc)).response()

    @app.get("/healthz")
    async def healthz() -> dict[str, Any]:
        return {"status": "ok", "dataset_version": catalog.version}

    @app.get("/v1/providers")
    async def providers() -> dict[str, Any]:
        return {
            "providers": [p.value for p in catalog.providers()],
            "dataset_version": catalog.version,
        }

    @app.get("/v1/regions")
    async def regions(provider: str | None = Query(default=None)) -> dict[str, Any]:
        parsed = _parse_provider(provider) if provider is not None else None
        return {
            "regions": [reporting.region_dict(r) for r in cat.list_regions(catalog, parsed)],
            "dataset_version": catalog.version,
        }

    @app.get("/v1/hardware")
    async def hardware(efficiency: bool = Query(default=False)) -> dict[str, Any]:
        return {
            "hardware": [
                reporting.hardware_dict(
                    p, engine.hardware_efficiency(p) if efficiency else None
                )
                for p in cat.list_hardware(catalog)
            ],
            "dataset_version": catalog.version,
        }

    @app.post("/v1/estimate")
    async def estimate(request: Request) -> dict[str, Any]:
        body = await _json_body(request)
        parsed = _parse_estimate_request(body)
        result = engine.estimate_emissions(catalog, parsed)
        return reporting.estimate_dict(result, catalog.version)

    @app.post("/v1/compare")
    async def compare(request: Request) -> dict[str, Any]:
        body = await _json_body(request)
        workload = _parse_workload(body)
        provider_raw = body.get("provider")
        provider = None
        if provider_raw is not None:
            if not isinstance(provider_raw, str):
                raise _bad_request("field 'provider' must be a string")
            provider = _parse_provider(provider_raw)
        metric_raw = body.get("metric", "gross")
        try:
            metric = engine.ComparisonMetric(metric_raw)
        except ValueError:
            valid = ", ".join(m.value for m in engine.ComparisonMetric)
            raise _bad_request(f"unknown metric {metric_raw!r}; expected one of {valid}") from None
        comparison = engine.compare_regions(catalog, workload, provider=provider, metric=metric)
        return reporting.comparison_dict(comparison, catalog.version)

    @app.get("/v1/stats")
    async def stats() -> dict[str, Any]:
        return reporting.stats_dict(engine.regional_stats(catalog, geo_map), catalog.version)

    if ui_dir is None:
        ui_dir = os.environ.get(UI_DIR_ENV)
    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


# ---------------------------------------------------------------------------
# Standalone runner: python -m traincarbon.service
# ---------------------------------------------------------------------------


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="traincarbon-service",
        description="Serve the traincarbon JSON API (and web UI, if built).",
    )
    parser.add_argument("--host", default=os.environ.get("TRAINCARBON_HOST", "127.0.0.1"))
    parser.add_argument(
        "--port", type=int, default=int(os.environ.get("TRAINCARBON_PORT", "8000"))
    )
    parser.add_argument("--regions-file", default=None)
    parser.add_argument("--hardware-file", default=None)
    parser.add_argument("--geo-file", default=None)
    parser.add_argument(
        "--ui-dir",
        default=None,
        help="Directory with the built web UI (default: $TRAINCARBON_UI_DIR "
        "or ./frontend/dist when present).",
    )
    parser.add_argument("--cors-origin", default=None)
    args = parser.parse_args(list(argv) if argv is not None else None)

    import uvicorn

    ui_dir = args.ui_dir
    if ui_dir is None and os.environ.get(UI_DIR_ENV) is None:
        default_ui = Path("frontend/dist")
        if default_ui.is_dir():
            ui_dir = str(default_ui)

    app = create_app(
        catalog=cat.load_catalog(args.regions_file, args.hardware_file),
        geo_map=cat.load_geo_map(args.geo_file),
        ui_dir=ui_dir,
        cors_origin=args.cors_origin,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
