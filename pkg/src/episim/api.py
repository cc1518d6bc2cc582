"""HTTP gateway: scenario creation, runs, branching, frames/series/exports.

All endpoints live under /v1 and exchange JSON; the frame export is CSV.
Error bodies follow one shape: {"code", "message", "details"} where details
lists field-level diagnostics. Status mapping: 400 invalid configuration,
404 unknown scenario/county, 409 branch-history violations and runs not yet
available, 422 out-of-range day or unknown metric.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import Body, FastAPI, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from . import engine
from .config import (action_from_mapping, config_from_mapping,
                     config_to_mapping)
from .dataio import InputBundle, frames_csv_text
from .errors import (HistoryViolationError, NotFoundError, ValidationError)
from .store import ScenarioStore


def _error(status, code, message, details=None):
    return JSONResponse(status_code=status, content={
        "code": code, "message": message, "details": details or []})


def _validation_details(exc: ValidationError):
    return [{"field": f, "message": m} for f, m in exc.problems]


def create_app(bundle: InputBundle, store: ScenarioStore = None,
               network=None, ui_dir=None) -> FastAPI:
    """Wire the service around one loaded input bundle.

    ``ui_dir`` optionally mounts a built browser client at the root path.
    """
    app = FastAPI(title="episim gateway", version="1.0")
    store = store if store is not None else ScenarioStore()
    network = network if network is not None else bundle.network()

    @app.exception_handler(NotFoundError)
    async def not_found(request: Request, exc: NotFoundError):
        return _error(404, "not_found", str(exc))

    @app.exception_handler(HistoryViolationError)
    async def history_violation(request: Request, exc: HistoryViolationError):
        return _error(409, "history_violation", str(exc))

    def scenario_info(scenario):
        return {
            "id": scenario.id,
            "parent_id": scenario.parent_id,
            "branch_day": scenario.branch_day,
            "actions": [{"kind": a.kind, "start_day": a.start_day,
                         "ramp_days": a.ramp_days, "reduction": a.reduction}
                        for a in scenario.config.actions],
            "horizon": scenario.config.params.horizon,
            "status": "complete" if store.has_result(scenario.id) else "created",
        }

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    @app.post("/v1/scenarios", status_code=201)
    def create_scenario(payload: dict = Body(...)):
        raw = payload.get("config", payload)
        try:
            config, provenance = config_from_mapping(raw)
            scenario = engine.create_scenario(config, network)
        except ValidationError as exc:
            return _error(400, "validation_error", str(exc),
                          _validation_details(exc))
        store.add(scenario)
        return {"id": scenario.id, "config": config_to_mapping(config),
                "provenance": provenance}

    @app.get("/v1/scenarios")
    def list_scenarios():
        return {"scenarios": [scenario_info(s) for s in store.list()]}

    @app.post("/v1/scenarios/{scenario_id}/run")
    def run_scenario(scenario_id: str):
        already = store.has_result(scenario_id)
        store.run(scenario_id, network)
        return {"id": scenario_id, "status": "complete", "cached": already}

    @app.post("/v1/scenarios/{scenario_id}/branch", status_code=201)
    def branch(scenario_id: str, payload: dict = Body(...)):
        parent = store.get(scenario_id)
        branch_day = payload.get("branch_day")
        raw_actions = payload.get("actions", [])
        if not isinstance(raw_actions, list):
            return _error(400, "validation_error", "actions must be a list")
        try:
            actions = [action_from_mapping(a) for a in raw_actions]
            child = engine.branch_scenario(parent, branch_day, actions)
        except ValidationError as exc:
            return _error(400, "validation_error", str(exc),
                          _validation_details(exc))
        store.add(child)
        return {"id": child.id, "parent_id": parent.id,
                "branch_day": child.branch_day}

    def _result_or_conflict(scenario_id):
        store.get(scenario_id)  # 404 first for unknown ids
        result = store.result(scenario_id, missing_ok=True)
        if result is None:
            raise HistoryViolationError(
                f"scenario {scenario_id} has not been run yet")
        return result

    @app.get("/v1/scenarios/{scenario_id}/frames/{day}")
    def get_frame(scenario_id: str, day: int, metric: str = Query(...)):
        result = _result_or_conflict(scenario_id)
        try:
            values, normalized = engine.frame(result, day, metric)
        except ValidationError as exc:
            return _error(422, "out_of_range", str(exc),
                          _validation_details(exc))
        return {"day": day, "metric": metric, "values": values,
                "normalized": normalized}

    @app.get("/v1/scenarios/{scenario_id}/series")
    def get_series(scenario_id: str, metric: str = Query(...),
                   counties: str = Query("")):
        result = _result_or_conflict(scenario_id)
        wanted = [c for c in counties.split(",") if c] if counties else []
        try:
            data = engine.series(result, wanted, metric)
        except ValidationError as exc:
            return _error(422, "out_of_range", str(exc),
                          _validation_details(exc))
        return {"metric": metric,
                "series": {fips: values for fips, values in data.items()}}

    @app.get("/v1/scenarios/{scenario_id}/summary")
    def get_summary(scenario_id: str):
        result = _result_or_conflict(scenario_id)
        summary = engine.summarize(result)
        return {
            "peak_sick_day": summary.peak_sick_day,
            "peak_sick_count": summary.peak_sick_count,
            "outbreak_duration": summary.outbreak_duration,
            "total_sick": summary.total_sick,
            "total_deaths": summary.total_deaths,
            "total_hospitalizations": summary.total_hospitalizations,
        }

    @app.get("/v1/scenarios/{scenario_id}/export.csv")
    def export_csv(scenario_id: str):
        result = _result_or_conflict(scenario_id)
        return PlainTextResponse(frames_csv_text(result), media_type="text/csv")

    @app.get("/v1/inputs/geometry")
    def geometry():
        if bundle.geometry is None:
            raise NotFoundError("no geometry file was loaded")
        return bundle.geometry

    @app.get("/v1/inputs/counties")
    def counties():
        return {"counties": [
            {"fips": c.fips, "name": c.name, "population": c.population,
             "density_class": c.density_class, "total_beds": c.total_beds,
             "has_airport": c.has_airport}
            for c in network.counties]}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True),
                  name="ui")

    return app
