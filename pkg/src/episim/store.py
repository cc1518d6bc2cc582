"""Append-only scenario store with disk-backed, restart-safe results.

Scenarios append to ``scenarios.jsonl``; completed runs are cached both in
memory and as ``results/<id>.npz``. Per-scenario locks make runs
single-flight: concurrent run requests for one scenario compute it once.
"""
from __future__ import annotations

import json
import threading
from pathlib import Path

import numpy as np

from . import engine
from .config import config_from_mapping, config_to_mapping
from .engine import Scenario, SimulationResult
from .errors import NotFoundError


def scenario_to_mapping(scenario: Scenario) -> dict:
    return {
        "id": scenario.id,
        "parent_id": scenario.parent_id,
        "branch_day": scenario.branch_day,
        "network_ref": scenario.network_ref,
        "config": config_to_mapping(scenario.config),
    }


def scenario_from_mapping(data: dict) -> Scenario:
    config, _ = config_from_mapping(data["config"])
    return Scenario(
        id=data["id"],
        config=config,
        network_ref=data.get("network_ref", "default"),
        parent_id=data.get("parent_id"),
        branch_day=data.get("branch_day", 0),
    )


class ScenarioStore:
    """Keeps the scenario tree and completed results for one input bundle."""

    def __init__(self, root=None):
        self._scenarios = {}
        self._order = []
        self._results = {}
        self._locks = {}
        self._registry_lock = threading.Lock()
        self.root = Path(root) if root is not None else None
        if self.root is not None:
            self.root.mkdir(parents=True, exist_ok=True)
            (self.root / "results").mkdir(exist_ok=True)
            self._load_persisted()

    # -- scenario registry -------------------------------------------------

    def add(self, scenario: Scenario) -> Scenario:
        with self._registry_lock:
            self._scenarios[scenario.id] = scenario
            self._order.append(scenario.id)
            if self.root is not None:
                with open(self.root / "scenarios.jsonl", "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(scenario_to_mapping(scenario)) + "\n")
        return scenario

    def get(self, scenario_id: str) -> Scenario:
        try:
            return self._scenarios[scenario_id]
        except KeyError:
            raise NotFoundError(f"unknown scenario {scenario_id}") from None

    def list(self):
        return [self._scenarios[sid] for sid in self._order]

    def has_result(self, scenario_id: str) -> bool:
        return scenario_id in self._results or (
            self.root is not None
            and (self.root / "results" / f"{scenario_id}.npz").exists())

    # -- runs ---------------------------------------------------------------

    def run(self, scenario_id: str, network) -> SimulationResult:
        """Run a scenario at most once; later calls return the cached result."""
        scenario = self.get(scenario_id)
        with self._registry_lock:
            lock = self._locks.setdefault(scenario_id, threading.Lock())
        with lock:
            result = self.result(scenario_id, missing_ok=True)
            if result is not None:
                return result
            result = engine.run(scenario, network)
            self._results[scenario_id] = result
            if self.root is not None:
                self._save_result(result)
            return result

    def result(self, scenario_id: str, missing_ok: bool = False):
        if scenario_id in self._results:
            return self._results[scenario_id]
        if self.root is not None:
            path = self.root / "results" / f"{scenario_id}.npz"
            if path.exists():
                result = self._load_result(scenario_id, path)
                self._results[scenario_id] = result
                return result
        if missing_ok:
            return None
        if scenario_id not in self._scenarios:
            raise NotFoundError(f"unknown scenario {scenario_id}")
        raise NotFoundError(f"scenario {scenario_id} has no completed run")

    # -- persistence ---------------------------------------------------------

    def _save_result(self, result: SimulationResult):
        path = self.root / "results" / f"{result.scenario_id}.npz"
        np.savez_compressed(
            path,
            fips=np.array(result.fips),
            populations=np.array(result.populations, dtype=np.int64),
            **result.arrays,
        )

    def _load_result(self, scenario_id: str, path) -> SimulationResult:
        with np.load(path) as data:
            fips = tuple(str(x) for x in data["fips"])
            populations = tuple(int(x) for x in data["populations"])
            arrays = {key: data[key] for key in data.files
                      if key not in ("fips", "populations")}
        for array in arrays.values():
            array.setflags(write=False)
        return SimulationResult(scenario_id=scenario_id, fips=fips,
                                populations=populations, arrays=arrays)

    def _load_persisted(self):
        path = self.root / "scenarios.jsonl"
        if not path.exists():
            return
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                scenario = scenario_from_mapping(json.loads(line))
                self._scenarios[scenario.id] = scenario
                self._order.append(scenario.id)
