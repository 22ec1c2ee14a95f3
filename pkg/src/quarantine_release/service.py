"""Stateless JSON/HTTP facade over the evaluation engine.

Computation endpoints (/v1/posterior, /v1/what-if/min-tests) are
referentially transparent: identical request bodies produce identical
response bytes, because all numbers go through the deterministic
12-significant-digit encoder and nothing on these paths touches the
store. Preset writes go through the compare-and-set document store.

Every 4xx body is {"code", "message"} plus "field_path" when the
failure points at a specific request field.
"""

from __future__ import annotations

import datetime as dt

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import engine
from .cohort import read_cohort_csv
from .decision import DecisionPolicy, min_tests_for_release
from .errors import QuarantineModelError
from .posterior import TestSchedule
from .serialize import encode_json
from .store import PresetStore, VersionConflictError, seed_defaults


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, field_path: str | None = None):
        self.status = status
        self.code = code
        self.message = message
        self.field_path = field_path
        super().__init__(message)


def _schema_error(message: str, field_path: str | None = None) -> ApiError:
    return ApiError(400, "schema_violation", message, field_path)


def _json_response(doc, status: int = 200) -> Response:
    return Response(content=encode_json(doc), status_code=status, media_type="application/json")


def _error_response(status: int, code: str, message: str, field_path: str | None = None) -> Response:
    body = {"code": code, "message": message}
    if field_path is not None:
        body["field_path"] = field_path
    return _json_response(body, status=status)


# -- body validation helpers -------------------------------------------------


def _require_object(body, name: str) -> dict:
    if not isinstance(body, dict):
        raise _schema_error(f"{name} must be a JSON object", name)
    return body


def _get_number(body: dict, field: str, *, required: bool = False, default=None):
    if field not in body or body[field] is None:
        if required:
            raise _schema_error(f"missing required field {field!r}", field)
        return default
    value = body[field]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _schema_error(f"{field} must be a number", field)
    return float(value)


def _get_int(body: dict, field: str, *, required: bool = False, default=None):
    if field not in body or body[field] is None:
        if required:
            raise _schema_error(f"missing required field {field!r}", field)
        return default
    value = body[field]
    if isinstance(value, bool) or not isinstance(value, int):
        raise _schema_error(f"{field} must be an integer", field)
    return value


def _get_str(body: dict, field: str, *, required: bool = False, default=None):
    if field not in body or body[field] is None:
        if required:
            raise _schema_error(f"missing required field {field!r}", field)
        return default
    value = body[field]
    if not isinstance(value, str):
        raise _schema_error(f"{field} must be a string", field)
    return value


def _get_bool(body: dict, field: str, default: bool = False) -> bool:
    if field not in body or body[field] is None:
        return default
    value = body[field]
    if not isinstance(value, bool):
        raise _schema_error(f"{field} must be a boolean", field)
    return value


def _threshold_from(body: dict, fallback: float) -> float:
    value = _get_number(body, "threshold")
    if value is None:
        return fallback
    if not 0.0 < value < 1.0:
        raise _schema_error(f"threshold must lie strictly between 0 and 1, got {value}", "threshold")
    return value


def _parse_schedule_groups(raw, group_size: int) -> TestSchedule:
    if not isinstance(raw, list):
        raise _schema_error("schedule must be an array of {day, count} objects", "schedule")
    groups = []
    for i, item in enumerate(raw):
        item = _require_object(item, f"schedule[{i}]")
        day = _get_int(item, "day", required=True)
        count = _get_int(item, "count", required=True)
        groups.append((day, count))
    return TestSchedule(group_size=group_size, groups=tuple(groups))


# -- app factory ---------------------------------------------------------------


def create_app(store_dir: str, default_threshold: float = 0.9) -> FastAPI:
    store = PresetStore(store_dir)
    seed_defaults(store, default_threshold=default_threshold)

    app = FastAPI(title="quarantine-release", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.store = store
    app.state.default_threshold = default_threshold
    # the browser UI is served statically from elsewhere; the API carries no
    # credentials, so a permissive CORS policy is safe
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(_request: Request, exc: ApiError):
        return _error_response(exc.status, exc.code, exc.message, exc.field_path)

    @app.exception_handler(QuarantineModelError)
    async def handle_model_error(_request: Request, exc: QuarantineModelError):
        return _error_response(422, exc.code, str(exc))

    @app.exception_handler(VersionConflictError)
    async def handle_conflict(_request: Request, exc: VersionConflictError):
        return _error_response(409, "version_conflict", str(exc))

    @app.exception_handler(StarletteHTTPException)
    async def handle_http_error(_request: Request, exc: StarletteHTTPException):
        codes = {404: "not_found", 405: "method_not_allowed"}
        code = codes.get(exc.status_code, "http_error")
        return _error_response(exc.status_code, code, str(exc.detail))

    async def _read_json(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception:
            raise _schema_error("request body must be valid JSON") from None
        return _require_object(body, "body")

    def _resolve_targets(body: dict) -> tuple[float, float, dict | None]:
        """Scenario targets from scenario_id or inline prior_targets."""
        scenario_id = _get_str(body, "scenario_id")
        inline = body.get("prior_targets")
        if (scenario_id is None) == (inline is None):
            raise _schema_error(
                "provide exactly one of scenario_id or prior_targets", "scenario_id"
            )
        if scenario_id is not None:
            doc = store.get_scenario(scenario_id)
            if doc is None:
                raise ApiError(404, "scenario_not_found", f"unknown scenario {scenario_id!r}", "scenario_id")
            return doc["p_any_transmission"], doc["mean_given_transmission"], doc
        inline = _require_object(inline, "prior_targets")
        p_any = _get_number(inline, "p_any_transmission", required=True)
        mean = _get_number(inline, "mean_given_transmission", required=True)
        return p_any, mean, None

    def _resolve_curve(body: dict, scenario_doc: dict | None):
        curve_id = _get_str(body, "curve_id")
        if curve_id is None and scenario_doc is not None:
            curve_id = scenario_doc.get("curve_id")
        if curve_id is None:
            curve_id = "pcr_default"
        curve = store.get_curve(curve_id)
        if curve is None:
            raise ApiError(404, "curve_not_found", f"unknown curve {curve_id!r}", "curve_id")
        return curve

    @app.post("/v1/posterior")
    async def posterior_endpoint(request: Request):
        body = await _read_json(request)
        p_any, mean, scenario_doc = _resolve_targets(body)
        curve = _resolve_curve(body, scenario_doc)
        fallback = scenario_doc.get("threshold", default_threshold) if scenario_doc else default_threshold
        policy = DecisionPolicy(_threshold_from(body, fallback))
        allow_failure = _get_bool(body, "allow_fit_failure")

        has_schedule = body.get("schedule") is not None
        has_cohort = body.get("cohort_csv") is not None
        if has_schedule == has_cohort:
            raise _schema_error("provide exactly one of schedule or cohort_csv", "schedule")

        if has_cohort:
            csv_text = _get_str(body, "cohort_csv", required=True)
            records = read_cohort_csv(csv_text)
            event_date_raw = _get_str(body, "event_date")
            event_date = dt.date.fromisoformat(event_date_raw) if event_date_raw else None
            evaluation = engine.evaluate_records(
                records, p_any, mean, curve,
                policy=policy, event_date=event_date, allow_fit_failure=allow_failure,
            )
            declared_m = _get_int(body, "group_size")
            if declared_m is not None and declared_m != evaluation.result.schedule_echo.group_size:
                raise ApiError(
                    422,
                    "configuration_error",
                    f"declared group_size {declared_m} disagrees with the cohort's "
                    f"included count {evaluation.result.schedule_echo.group_size}",
                    "group_size",
                )
        else:
            group_size = _get_int(body, "group_size", required=True)
            schedule = _parse_schedule_groups(body["schedule"], group_size)
            evaluation = engine.evaluate_schedule(
                schedule, p_any, mean, curve, policy=policy, allow_fit_failure=allow_failure
            )
        return _json_response(evaluation.payload())

    @app.post("/v1/what-if/min-tests")
    async def min_tests_endpoint(request: Request):
        body = await _read_json(request)
        p_any, mean, scenario_doc = _resolve_targets(body)
        curve = _resolve_curve(body, scenario_doc)
        fallback = scenario_doc.get("threshold", default_threshold) if scenario_doc else default_threshold
        policy = DecisionPolicy(_threshold_from(body, fallback))
        group_size = _get_int(body, "group_size", required=True)
        day = _get_int(body, "day", required=True)
        allow_failure = _get_bool(body, "allow_fit_failure")

        prior, _status = engine.fit_scenario_prior(
            group_size, p_any, mean, allow_fit_failure=allow_failure
        )
        n_star = min_tests_for_release(prior, day, curve, policy)
        if n_star is None:
            doc = {"min_tests": None, "fraction_of_group": None, "reason": "not_achievable"}
        else:
            doc = {"min_tests": n_star, "fraction_of_group": n_star / group_size}
        return _json_response(doc)

    @app.get("/v1/scenarios")
    async def list_scenarios():
        return _json_response({"scenarios": store.list_scenarios()})

    @app.put("/v1/scenarios/{scenario_id}")
    async def put_scenario(scenario_id: str, request: Request):
        body = await _read_json(request)
        name = _get_str(body, "name", required=True)
        p_any = _get_number(body, "p_any_transmission", required=True)
        mean = _get_number(body, "mean_given_transmission", required=True)
        if not 0.0 < p_any < 1.0:
            raise _schema_error(f"p_any_transmission must lie in (0, 1), got {p_any}", "p_any_transmission")
        if mean <= 1.0:
            raise _schema_error(f"mean_given_transmission must exceed 1, got {mean}", "mean_given_transmission")
        threshold = _threshold_from(body, default_threshold)
        curve_id = _get_str(body, "curve_id", default="pcr_default")
        if store.get_curve(curve_id) is None:
            raise _schema_error(f"scenario references unknown curve {curve_id!r}", "curve_id")
        version = _get_int(body, "version", default=0)
        doc = store.put_scenario(
            scenario_id,
            {
                "name": name,
                "p_any_transmission": p_any,
                "mean_given_transmission": mean,
                "curve_id": curve_id,
                "threshold": threshold,
            },
            expected_version=version,
        )
        return _json_response(doc)

    @app.get("/v1/curves")
    async def list_curves():
        docs = []
        for curve_id in store.list_curve_ids():
            curve = store.get_curve(curve_id)
            docs.append({"id": curve_id, "name": curve.name, "point_count": len(curve.points)})
        return _json_response({"curves": docs})

    @app.get("/v1/curves/{curve_id}")
    async def get_curve(curve_id: str):
        curve = store.get_curve(curve_id)
        if curve is None:
            raise ApiError(404, "curve_not_found", f"unknown curve {curve_id!r}", "curve_id")
        return _json_response(
            {
                "id": curve_id,
                "name": curve.name,
                "specificity": curve.specificity,
                "points": [{"day": d, "sensitivity": s} for d, s in curve.points],
            }
        )

    return app
