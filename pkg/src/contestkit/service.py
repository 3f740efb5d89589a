"""HTTP JSON API over the assessment toolkit.

The service is a thin layer: request bodies are the same versioned JSON
documents the file formats define, all computation happens in the pure
modules, and results are serialized with the shared payload builders so
API responses and CLI output agree exactly.  Errors map to JSON bodies
``{code, message, field?}``: 400 for validation problems, 404 for unknown
ids, 409 for schema-version mismatches, 500 otherwise.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from contestkit.errors import (
    InputError,
    SchemaVersionError,
    UndefinedValueError,
    UnknownIdError,
)
from contestkit.formal import (
    DEFAULT_AGGREGATE_WEIGHTS,
    AggregateResult,
    ModeTally,
    aggregate_contest,
    ledger_from_json,
    make_aggregate_weights,
    partition_modes,
)
from contestkit.jsonio import display_number
from contestkit.questionnaire import (
    ScoredAssessment,
    _rubric_doc,
    score_assessment,
    sheet_from_json,
    sheet_to_json,
)
from contestkit.reporting import (
    REPORT_FORMATS,
    build_bundle,
    render_report,
    scenario_payload,
    scored_payload,
)
from contestkit.scoring import (
    WeightConfig,
    default_weight_config,
    weights_from_json,
    weights_to_json,
)
from contestkit.store import WorkspaceStore
from contestkit.taxonomy import (
    LEVEL_VALUES,
    RELIANCE_VALUES,
    default_catalog,
    resolve_requirements,
)
from contestkit.whatif import (
    apply_scenario,
    make_modification,
    rank_interventions,
    scenario_from_json,
)

_MEDIA_TYPES = {
    "markdown": "text/markdown; charset=utf-8",
    "json": "application/json",
    "csv": "text/csv; charset=utf-8",
}


def _error_body(code: str, message: str, field: str | None = None) -> dict:
    body = {"code": code, "message": message}
    if field is not None:
        body["field"] = field
    return body


async def _json_body(request: Request) -> dict:
    try:
        payload = json.loads(await request.body() or b"null")
    except json.JSONDecodeError as exc:
        raise InputError(f"request body is not valid JSON: {exc}") from exc
    if payload is None:
        raise InputError("request body is required")
    if not isinstance(payload, dict):
        raise InputError("request body must be a JSON object")
    return payload


def _config_from(payload: dict) -> WeightConfig:
    """Weight config from an optional 'weights' block, else the default."""
    block = payload.get("weights")
    if block is None:
        return default_weight_config()
    return weights_from_json(block, "weights")


def _aggregate_payload(
    result: AggregateResult, modes: dict[str, ModeTally]
) -> dict:
    return {
        "xlc": {
            "holds": result.xlc.holds,
            "counterexample": (
                list(result.xlc.counterexample) if result.xlc.counterexample else None
            ),
        },
        "slc": {
            "holds": result.slc.holds,
            "missing_stakeholder": result.slc.missing_stakeholder,
        },
        "min_success_rate": {
            "value": float(result.min_success_rate),
            "display": display_number(result.min_success_rate),
        },
        "success_rates": {
            stakeholder: float(rate)
            for stakeholder, rate in sorted(result.success_rates.items())
        },
        "weights": {
            "alpha": float(result.weights.alpha),
            "beta": float(result.weights.beta),
            "gamma": float(result.weights.gamma),
        },
        "total": {
            "value": float(result.total),
            "display": display_number(result.total),
        },
        "modes": {
            mode: {
                "attempts": tally.attempts,
                "successes": tally.successes,
                "success_rate": (
                    float(tally.success_rate)
                    if tally.success_rate is not None
                    else None
                ),
            }
            for mode, tally in sorted(modes.items())
        },
    }


def create_app(
    store: WorkspaceStore | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Build the API application over a workspace store.

    When ``static_dir`` points at a built UI bundle, it is served from the
    web root; API routes take precedence.
    """
    if store is None:
        store = WorkspaceStore()

    app = FastAPI(title="contestkit", docs_url=None, redoc_url=None)

    # -- error translation --

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError):
        return JSONResponse(
            status_code=400,
            content=_error_body("validation_error", exc.message, exc.field),
        )

    @app.exception_handler(UndefinedValueError)
    async def _undefined_error(request: Request, exc: UndefinedValueError):
        return JSONResponse(
            status_code=400, content=_error_body("undefined_value", exc.message)
        )

    @app.exception_handler(UnknownIdError)
    async def _unknown_id(request: Request, exc: UnknownIdError):
        return JSONResponse(
            status_code=404, content=_error_body("unknown_id", str(exc))
        )

    @app.exception_handler(SchemaVersionError)
    async def _schema_error(request: Request, exc: SchemaVersionError):
        return JSONResponse(
            status_code=409, content=_error_body("schema_version_mismatch", str(exc))
        )

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content=_error_body("validation_error", str(exc))
        )

    @app.exception_handler(Exception)
    async def _internal_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content=_error_body("internal_error", "unexpected server error"),
        )

    # -- scoring over stored assessments --

    def _score_stored(
        assessment_id: str, config: WeightConfig
    ) -> ScoredAssessment:
        document = store.load("assessments", assessment_id)
        sheet = sheet_from_json(document, f"assessment {assessment_id}")
        return score_assessment(sheet, config)

    @app.post("/assessments")
    async def create_assessment(request: Request):
        payload = await _json_body(request)
        sheet = sheet_from_json(payload)
        config = default_weight_config()
        scored = score_assessment(sheet, config)
        assessment_id = store.save("assessments", sheet_to_json(sheet))
        return {"id": assessment_id, "assessment": scored_payload(scored, config)}

    @app.get("/assessments/{assessment_id}")
    async def get_assessment(assessment_id: str):
        document = store.load("assessments", assessment_id)
        return {"id": assessment_id, "document": document}

    @app.post("/assessments/{assessment_id}/score")
    async def score_assessment_endpoint(assessment_id: str, request: Request):
        raw = await request.body()
        payload = await _json_body(request) if raw else {}
        config = _config_from(payload)
        scored = _score_stored(assessment_id, config)
        return {"id": assessment_id, "assessment": scored_payload(scored, config)}

    # -- scenarios --

    def _resolve_baseline(block: dict) -> ScoredAssessment:
        if "id" in block:
            try:
                document = store.load("assessments", str(block["id"]))
            except UnknownIdError:
                raise InputError(
                    f"baseline assessment {block['id']!r} is not stored in the "
                    f"workspace",
                    "baseline",
                ) from None
            sheet = sheet_from_json(document, "baseline")
        elif "sheet" in block:
            sheet = sheet_from_json(block["sheet"], "baseline")
        else:
            raise InputError(
                "scenario baseline must name a stored assessment {'id': ...} "
                "or embed a sheet {'sheet': {...}}",
                "baseline",
            )
        return score_assessment(sheet)

    @app.post("/scenarios/evaluate")
    async def evaluate_scenario(request: Request):
        payload = await _json_body(request)
        scenario = scenario_from_json(payload, _resolve_baseline)
        result = apply_scenario(scenario)
        return {"result": scenario_payload(result)}

    @app.post("/interventions/rank")
    async def rank_endpoint(request: Request):
        payload = await _json_body(request)
        baseline_block = payload.get("baseline")
        if not isinstance(baseline_block, dict) or not baseline_block:
            raise InputError(
                "ranking needs a baseline block (stored id or embedded sheet)",
                "baseline",
            )
        baseline = _resolve_baseline(baseline_block)
        raw_candidates = payload.get("candidates")
        if not isinstance(raw_candidates, list) or not raw_candidates:
            raise InputError(
                "ranking needs a non-empty candidates array", "candidates"
            )
        candidates = []
        for index, item in enumerate(raw_candidates):
            prefix = f"candidates[{index}]"
            if not isinstance(item, dict):
                raise InputError(f"{prefix} must be an object", prefix)
            if "property" not in item or "new_score" not in item:
                raise InputError(
                    f"{prefix} needs 'property' and 'new_score'", prefix
                )
            candidates.append(
                make_modification(
                    item["property"],
                    item["new_score"],
                    item.get("feasibility", "highly"),
                    item.get("rationale", ""),
                    item.get("dimension"),
                )
            )
        ranked = rank_interventions(baseline, candidates)
        return {
            "baseline_total": {
                "value": float(baseline.cas.total),
                "display": display_number(baseline.cas.total),
            },
            "ranked": [
                {
                    "property": item.modification.property_id,
                    "new_score": float(item.modification.new_score),
                    "feasibility": item.modification.feasibility,
                    "delta": {
                        "value": float(item.delta),
                        "display": display_number(item.delta),
                    },
                    "new_total": {
                        "value": float(item.new_total),
                        "display": display_number(item.new_total),
                    },
                }
                for item in ranked
            ],
        }

    # -- taxonomy --

    @app.get("/taxonomy/{reliance}/{level}")
    async def taxonomy_cell(reliance: str, level: str):
        if reliance not in RELIANCE_VALUES:
            raise InputError(
                f"unknown reliance {reliance!r}; expected one of "
                + ", ".join(RELIANCE_VALUES),
                "reliance",
            )
        if level not in LEVEL_VALUES:
            raise InputError(
                f"unknown contestability level {level!r}; expected one of "
                + ", ".join(LEVEL_VALUES),
                "level",
            )
        catalog = default_catalog()
        requirements = resolve_requirements(reliance, level, catalog)
        cell = catalog.cell(reliance, level)
        return {
            "reliance": reliance,
            "level": level,
            "flags": sorted(cell.flags),
            "examples": list(cell.examples),
            "clusters": list(cell.cluster_ids),
            "criteria": [
                {
                    "id": criterion.id,
                    "name": criterion.name,
                    "cluster": criterion.cluster,
                    "dimensions": list(criterion.dimensions),
                    "description": criterion.description,
                }
                for criterion in requirements
            ],
        }

    # -- ledgers --

    @app.post("/ledgers/evaluate")
    async def evaluate_ledger(request: Request):
        payload = await _json_body(request)
        weights_block = payload.pop("aggregate_weights", None)
        if weights_block is not None:
            if not isinstance(weights_block, dict):
                raise InputError(
                    "aggregate_weights must be an object with alpha/beta/gamma",
                    "aggregate_weights",
                )
            weights = make_aggregate_weights(
                weights_block.get("alpha", 0),
                weights_block.get("beta", 0),
                weights_block.get("gamma", 0),
            )
        else:
            weights = DEFAULT_AGGREGATE_WEIGHTS
        ledger = ledger_from_json(payload)
        result = aggregate_contest(ledger, weights)
        modes = partition_modes(ledger)
        return _aggregate_payload(result, modes)

    # -- reports --

    @app.get("/reports/{assessment_id}")
    async def report_endpoint(assessment_id: str, format: str = "markdown"):
        if format not in REPORT_FORMATS:
            raise InputError(
                f"unsupported report format {format!r}; choose one of "
                + ", ".join(REPORT_FORMATS),
                "format",
            )
        config = default_weight_config()
        scored = _score_stored(assessment_id, config)
        bundle = build_bundle(scored, config)
        return Response(
            content=render_report(bundle, format), media_type=_MEDIA_TYPES[format]
        )

    # -- reference data for clients --

    @app.get("/rubrics")
    async def rubrics_endpoint():
        return _rubric_doc()

    @app.get("/configs/default")
    async def default_config_endpoint():
        return weights_to_json(default_weight_config())

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    if static_dir is not None:
        static_path = Path(static_dir)
        if static_path.is_dir():
            app.mount(
                "/", StaticFiles(directory=static_path, html=True), name="ui"
            )

    return app
