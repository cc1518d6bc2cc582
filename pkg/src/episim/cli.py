"""Batch CLI: simulate, branch, summarize, and serve.

``simulate`` persists the scenario store and the loaded input paths under
--out, so later ``branch``/``summary`` invocations on the same directory can
reload everything. Exit codes: 0 success, 1 engine/input errors (with
diagnostics on stderr), 2 usage errors.
"""
from __future__ import annotations

import json
import sys
from dataclasses import replace
from pathlib import Path

import click

from . import engine
from .config import action_from_mapping, config_to_mapping
from .dataio import (export_frames_csv, export_summary_csv, load_bundle,
                     load_config)
from .errors import EpisimError
from .store import ScenarioStore


def _fail(exc):
    click.echo(f"error: {exc}", err=True)
    sys.exit(1)


def _load_inputs(counties, adjacency, air, geometry):
    return load_bundle(counties, adjacency, air_path=air,
                       geometry_path=geometry)


def _write_outputs(out_dir, scenario, result, provenance=None):
    target = Path(out_dir) / scenario.id
    target.mkdir(parents=True, exist_ok=True)
    export_frames_csv(result, target / "export.csv")
    export_summary_csv(engine.summarize(result), target / "summary.csv")
    echo = {"config": config_to_mapping(scenario.config)}
    if provenance is not None:
        echo["provenance"] = provenance
    (target / "config_echo.json").write_text(json.dumps(echo, indent=2),
                                             encoding="utf-8")
    return target


def _reload_store(out_dir):
    out = Path(out_dir)
    inputs_path = out / "inputs.json"
    if not inputs_path.exists():
        raise EpisimError(f"{inputs_path} not found; run simulate first")
    paths = json.loads(inputs_path.read_text(encoding="utf-8"))
    bundle = _load_inputs(paths["counties"], paths["adjacency"],
                          paths.get("air"), paths.get("geometry"))
    return ScenarioStore(out / "store"), bundle.network()


@click.group()
def main():
    """County-level epidemic scenario simulator."""


@main.command()
@click.option("--config", "-c", "config_path", required=True,
              type=click.Path(exists=True), help="Model config JSON.")
@click.option("--counties", required=True, type=click.Path(exists=True))
@click.option("--adjacency", required=True, type=click.Path(exists=True))
@click.option("--air", type=click.Path(exists=True),
              help="Optional air-routes CSV (default: all airport pairs).")
@click.option("--geometry", type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path(),
              help="Output/store directory.")
@click.option("--seed", type=int,
              help="Run with seeded stochastic rounding instead of half-even.")
def simulate(config_path, counties, adjacency, air, geometry, out, seed):
    """Run one scenario and write export.csv + summary.csv."""
    try:
        bundle = _load_inputs(counties, adjacency, air, geometry)
        config, provenance = load_config(config_path)
        if seed is not None:
            config = replace(config, rounding="stochastic", rng_seed=seed)
        network = bundle.network()
        store = ScenarioStore(Path(out) / "store")
        scenario = store.add(engine.create_scenario(config, network))
        result = store.run(scenario.id, network)
        (Path(out) / "inputs.json").write_text(
            json.dumps(bundle.paths, indent=2), encoding="utf-8")
        target = _write_outputs(out, scenario, result, provenance)
    except EpisimError as exc:
        _fail(exc)
    summary = engine.summarize(result)
    click.echo(f"scenario {scenario.id}: peak day {summary.peak_sick_day}, "
               f"duration {summary.outbreak_duration} days, "
               f"{summary.total_sick} total sick")
    click.echo(f"wrote {target / 'export.csv'}")


@main.command()
@click.option("--out", required=True, type=click.Path(exists=True),
              help="Directory of a previous simulate run.")
@click.option("--parent", required=True, help="Parent scenario id.")
@click.option("--branch-day", required=True, type=int)
@click.option("--action", "actions", multiple=True,
              help="KIND:START[:RAMP[:REDUCTION]]; repeatable.")
def branch(out, parent, branch_day, actions):
    """Branch a stored scenario, run the child, write its exports."""
    try:
        store, network = _reload_store(out)
        parsed = []
        for spec_str in actions:
            parts = spec_str.split(":")
            entry = {"kind": parts[0], "start_day": int(parts[1])}
            if len(parts) > 2:
                entry["ramp_days"] = int(parts[2])
            if len(parts) > 3:
                entry["reduction"] = float(parts[3])
            parsed.append(action_from_mapping(entry))
        child = engine.branch_scenario(store.get(parent), branch_day, parsed)
        store.add(child)
        result = store.run(child.id, network)
        target = _write_outputs(out, child, result)
    except (EpisimError, ValueError, IndexError) as exc:
        _fail(exc)
    click.echo(f"branched {parent} -> {child.id} at day {branch_day}")
    click.echo(f"wrote {target / 'export.csv'}")


@main.command()
@click.option("--out", required=True, type=click.Path(exists=True))
@click.option("--id", "scenario_id", required=True)
def summary(out, scenario_id):
    """Print the stored scenario's statewide summary as JSON."""
    try:
        store, network = _reload_store(out)
        result = store.run(scenario_id, network)
    except EpisimError as exc:
        _fail(exc)
    s = engine.summarize(result)
    click.echo(json.dumps({
        "peak_sick_day": s.peak_sick_day,
        "peak_sick_count": s.peak_sick_count,
        "outbreak_duration": s.outbreak_duration,
        "total_sick": s.total_sick,
        "total_deaths": s.total_deaths,
        "total_hospitalizations": s.total_hospitalizations,
    }, indent=2))


@main.command()
@click.option("--counties", required=True, type=click.Path(exists=True))
@click.option("--adjacency", required=True, type=click.Path(exists=True))
@click.option("--air", type=click.Path(exists=True))
@click.option("--geometry", type=click.Path(exists=True))
@click.option("--store", "store_dir", type=click.Path(),
              help="Persist scenarios/results here (restart-safe).")
@click.option("--ui", "ui_dir", type=click.Path(exists=True),
              help="Serve a built browser client from this directory.")
@click.option("--port", "-p", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(counties, adjacency, air, geometry, store_dir, ui_dir, port, host):
    """Start the HTTP gateway."""
    import uvicorn

    from .api import create_app
    try:
        bundle = _load_inputs(counties, adjacency, air, geometry)
        store = ScenarioStore(store_dir) if store_dir else ScenarioStore()
        app = create_app(bundle, store=store, ui_dir=ui_dir)
    except EpisimError as exc:
        _fail(exc)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
