"""Scenario assembly, the daily simulation loop, and result views.

A scenario bundles a configuration with a reference to the loaded county
network. Running it executes, for each day: seed activation, importation
pressure accumulation, outbreak triggering, the combined intervention
multiplier, one step per started county, and a frame record. Branched
scenarios recompute from day zero; because every operation is deterministic
their pre-branch frames are identical to the parent's.
"""
from __future__ import annotations

import uuid
from dataclasses import dataclass, replace

import numpy as np

from .config import ScenarioConfig
from .county import (effective_bed_capacity, make_rounder, seed_county,
                     step_county)
from .curve import build_prevalence_curve
from .errors import (HistoryViolationError, NotFoundError, ValidationError)
from .interventions import combined_multiplier, validate_actions
from .network import (SpreadNetwork, ImportationLedger, accumulate_pressure,
                      seed_initial, trigger_outbreaks)
from .params import N_GROUPS

METRICS = ("new_sick", "cumulative_sick", "active_sick", "hospital_demand",
           "beds_filled", "deaths")

GROUP_COLUMNS = ("new_sick_0_17", "new_sick_18_64", "new_sick_65_plus")

FRAME_COLUMNS = GROUP_COLUMNS + (
    "new_sick", "cumulative_sick", "active_sick", "hospital_demand",
    "beds_filled", "unmet_demand", "new_deaths", "cumulative_deaths",
)

_METRIC_COLUMN = {
    "new_sick": "new_sick",
    "cumulative_sick": "cumulative_sick",
    "active_sick": "active_sick",
    "hospital_demand": "hospital_demand",
    "beds_filled": "beds_filled",
    "deaths": "cumulative_deaths",
}


@dataclass(frozen=True)
class Scenario:
    """A runnable configuration node in the decision-history tree."""

    id: str
    config: ScenarioConfig
    network_ref: str = "default"
    parent_id: str = None
    branch_day: int = 0


@dataclass(frozen=True)
class SimulationResult:
    """Immutable per-day, per-county frames in columnar arrays.

    ``arrays[column]`` has shape (horizon, n_counties); counties are ordered
    by ``fips``. ``populations`` enables population-normalized map frames
    without re-touching the network.
    """

    scenario_id: str
    fips: tuple
    populations: tuple
    arrays: dict

    @property
    def horizon(self):
        return next(iter(self.arrays.values())).shape[0]

    def column(self, name):
        return self.arrays[name]

    def metric_matrix(self, metric):
        if metric not in METRICS:
            raise ValidationError([("metric", f"must be one of {METRICS}")])
        return self.arrays[_METRIC_COLUMN[metric]]


@dataclass(frozen=True)
class StateSummary:
    """Statewide peak and duration figures for one run."""

    peak_sick_day: int
    peak_sick_count: float
    outbreak_duration: int
    total_sick: int
    total_deaths: float
    total_hospitalizations: int


def new_scenario_id():
    return uuid.uuid4().hex[:12]


def create_scenario(config: ScenarioConfig, network: SpreadNetwork,
                    network_ref: str = "default") -> Scenario:
    """Validate a configuration against the network and mint a root scenario."""
    problems = config.validate()
    for i, seed in enumerate(config.seeds):
        if seed.fips not in network.index_of:
            problems.append((f"seeds[{i}].fips", f"unknown county {seed.fips}"))
    if problems:
        raise ValidationError(problems)
    return Scenario(id=new_scenario_id(), config=config, network_ref=network_ref)


def branch_scenario(parent: Scenario, branch_day: int, new_actions) -> Scenario:
    """Create a child scenario that may only change the future.

    The child inherits the parent's full action timeline. New actions must
    start at or after the branch day; a new action may replace an inherited
    one of the same kind only if the inherited one also lies at or after the
    branch day (otherwise history would be rewritten).
    """
    horizon = parent.config.params.horizon
    if not isinstance(branch_day, int) or isinstance(branch_day, bool) \
            or not (0 <= branch_day <= horizon):
        raise ValidationError([("branch_day",
                                f"must be an integer in [0, {horizon}]")])
    inherited = {a.kind: a for a in parent.config.actions}
    timeline = dict(inherited)
    problems = []
    for i, action in enumerate(new_actions):
        problems.extend(action.validate(prefix=f"actions[{i}]."))
    if problems:
        raise ValidationError(problems)
    for action in new_actions:
        if action.start_day < branch_day:
            raise HistoryViolationError(
                f"action {action.kind} starts on day {action.start_day}, "
                f"before branch day {branch_day}: history cannot be rewritten")
        existing = inherited.get(action.kind)
        if existing is not None and existing.start_day < branch_day:
            raise HistoryViolationError(
                f"{action.kind} is already active since day "
                f"{existing.start_day}, before branch day {branch_day}")
        timeline[action.kind] = action
    actions = tuple(sorted(timeline.values(), key=lambda a: (a.start_day, a.kind)))
    problems = validate_actions(actions)
    if problems:
        raise ValidationError(problems)
    return Scenario(
        id=new_scenario_id(),
        config=parent.config.with_actions(actions),
        network_ref=parent.network_ref,
        parent_id=parent.id,
        branch_day=branch_day,
    )


def run(scenario: Scenario, network: SpreadNetwork,
        observer=None) -> SimulationResult:
    """Execute the scenario's full day loop and freeze the frames.

    ``observer(day, states)`` is called after each simulated day with the
    live county states (inspection only; used by invariant checks).
    """
    config = scenario.config.check()
    params = config.params
    horizon = params.horizon
    n = len(network)

    curve = build_prevalence_curve(params, config.initial_infectious_fraction)
    rng = np.random.default_rng(config.rng_seed)
    rounder = make_rounder(config.rounding,
                           rng if config.rounding == "stochastic" else None)
    capacities = tuple(
        effective_bed_capacity(c.total_beds, config.occupancy_fraction)
        for c in network.counties)

    sim_network = replace(network, spread_rate=config.spread_rate,
                          density_modifiers=dict(config.density_modifiers),
                          air_weight=config.air_weight)
    states, seed_schedule = seed_initial(sim_network, config.seeds)
    ledger = ImportationLedger.zero(n)

    arrays = {name: np.zeros((horizon, n), dtype=np.float64)
              for name in FRAME_COLUMNS}
    for day in range(horizon):
        for idx, cases in seed_schedule.get(day, ()):
            states[idx] = seed_county(states[idx], cases, params,
                                      config.profiles, rounder, day)
        ledger = accumulate_pressure(sim_network, states, ledger,
                                     config.air_enabled)
        states = trigger_outbreaks(ledger, states, config.pressure_threshold)
        multiplier = combined_multiplier(config.actions, day)
        for idx in range(n):
            if states[idx].outbreak_started:
                states[idx] = step_county(states[idx], curve, config.profiles,
                                          multiplier, capacities[idx], day,
                                          params, rounder)
        for idx in range(n):
            state = states[idx]
            new_by_group = state.new_sick_by_group(day)
            for g in range(N_GROUPS):
                arrays[GROUP_COLUMNS[g]][day, idx] = new_by_group[g]
            arrays["new_sick"][day, idx] = sum(new_by_group)
            arrays["cumulative_sick"][day, idx] = state.cumulative_sick
            arrays["active_sick"][day, idx] = state.active_sick
            arrays["hospital_demand"][day, idx] = state.hospital_demand
            arrays["beds_filled"][day, idx] = state.beds_filled
            arrays["unmet_demand"][day, idx] = state.unmet_demand
            arrays["new_deaths"][day, idx] = state.new_deaths_today
            arrays["cumulative_deaths"][day, idx] = state.deaths_cumulative
        if observer is not None:
            observer(day, states)

    for array in arrays.values():
        array.setflags(write=False)
    return SimulationResult(
        scenario_id=scenario.id,
        fips=tuple(c.fips for c in network.counties),
        populations=tuple(c.population for c in network.counties),
        arrays=arrays,
    )


def series(result: SimulationResult, county_fips, metric: str) -> dict:
    """Day-indexed series per requested county, aligned on absolute days."""
    matrix = result.metric_matrix(metric)
    index = {f: i for i, f in enumerate(result.fips)}
    out = {}
    for fips in county_fips:
        if fips not in index:
            raise NotFoundError(f"unknown county {fips}")
        out[fips] = matrix[:, index[fips]].tolist()
    return out


def frame(result: SimulationResult, day: int, metric: str):
    """One day's map frame: raw values plus population-normalized values."""
    if not isinstance(day, int) or isinstance(day, bool) \
            or not (0 <= day < result.horizon):
        raise ValidationError([("day", f"must be in [0, {result.horizon})")])
    matrix = result.metric_matrix(metric)
    values = {}
    normalized = {}
    for i, fips in enumerate(result.fips):
        value = float(matrix[day, i])
        values[fips] = value
        normalized[fips] = value / result.populations[i]
    return values, normalized


def summarize(result: SimulationResult,
              duration_threshold: float = 1.0) -> StateSummary:
    """Peak day/count and outbreak duration for the whole state.

    Duration runs from the first day with any new sickness through the last
    day the statewide active count is at least ``duration_threshold``.
    """
    statewide_active = result.column("active_sick").sum(axis=1)
    statewide_new = result.column("new_sick").sum(axis=1)
    peak_day = int(np.argmax(statewide_active))
    peak_count = float(statewide_active[peak_day])
    nonzero = np.nonzero(statewide_new > 0)[0]
    over = np.nonzero(statewide_active >= duration_threshold)[0]
    if len(nonzero) == 0 or len(over) == 0:
        duration = 0
        peak_day = 0
    else:
        duration = int(over[-1]) - int(nonzero[0]) + 1
    return StateSummary(
        peak_sick_day=peak_day,
        peak_sick_count=peak_count,
        outbreak_duration=duration,
        total_sick=int(result.column("cumulative_sick")[-1].sum()),
        total_deaths=float(result.column("cumulative_deaths")[-1].sum()),
        total_hospitalizations=int(result.column("hospital_demand").sum()),
    )
