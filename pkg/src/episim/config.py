"""Scenario configuration: assembly from JSON mappings, defaults, validation.

Every recognized key has a shipped default; unknown keys are rejected so a
typo can never silently fall back to a default in a decision-support tool.
``from_mapping`` also returns a provenance map flagging, per leaf key,
whether the value was user-set or a filled default.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .county import ROUNDING_MODES
from .curve import DEFAULT_INITIAL_INFECTIOUS_FRACTION
from .errors import ValidationError
from .interventions import (DEFAULT_RAMP_DAYS, DEFAULT_REDUCTIONS,
                            DecisionAction, validate_actions)
from .network import (DEFAULT_AIR_WEIGHT, DEFAULT_DENSITY_MODIFIERS,
                      DEFAULT_PRESSURE_THRESHOLD, DENSITY_CLASSES, Seed)
from .params import (AGE_GROUPS, DEFAULT_PROFILE_MULTIPLIERS, AgeGroupProfile,
                     AgeGroupProfiles, DiseaseParams, default_profiles)

DEFAULT_OCCUPANCY_FRACTION = 0.7  # hospitals assumed 70 percent occupied

PARAM_KEYS = ("r0", "shedding_period", "incubation_period", "mortality_rate",
              "time_to_death", "recovery_time", "hospitalization_rate",
              "days_in_hospital", "excess_mortality_multiplier", "horizon")

TOP_LEVEL_KEYS = PARAM_KEYS + (
    "initial_infectious_fraction", "age_profiles", "density_modifiers",
    "spread_rate", "air_weight", "pressure_threshold", "occupancy_fraction",
    "air_enabled", "seeds", "actions", "rng_seed", "rounding",
)

_PROFILE_FIELDS = ("prevalence", "hospitalization", "mortality")
_ACTION_KEYS = ("kind", "start_day", "ramp_days", "reduction")
_SEED_KEYS = ("fips", "day", "cases")


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything a scenario needs besides the county inputs themselves."""

    params: DiseaseParams = field(default_factory=DiseaseParams)
    profiles: AgeGroupProfiles = field(default_factory=default_profiles)
    density_modifiers: dict = field(
        default_factory=lambda: dict(DEFAULT_DENSITY_MODIFIERS))
    spread_rate: float = 600.0
    air_weight: float = DEFAULT_AIR_WEIGHT
    pressure_threshold: float = DEFAULT_PRESSURE_THRESHOLD
    initial_infectious_fraction: float = DEFAULT_INITIAL_INFECTIOUS_FRACTION
    occupancy_fraction: float = DEFAULT_OCCUPANCY_FRACTION
    air_enabled: bool = True
    seeds: tuple = ()
    actions: tuple = ()
    rng_seed: int = 0
    rounding: str = "half_even"

    def validate(self):
        problems = list(self.params.validate())
        problems.extend(self.profiles.validate())
        for cls_name in DENSITY_CLASSES:
            value = self.density_modifiers.get(cls_name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)
                    and value > 0):
                problems.append((f"density_modifiers.{cls_name}", "must be > 0"))
        for extra in sorted(set(self.density_modifiers) - set(DENSITY_CLASSES)):
            problems.append((f"density_modifiers.{extra}", "unknown density class"))
        if not (isinstance(self.spread_rate, (int, float))
                and math.isfinite(self.spread_rate) and self.spread_rate >= 0):
            problems.append(("spread_rate", "must be finite and >= 0"))
        if not (isinstance(self.air_weight, (int, float))
                and math.isfinite(self.air_weight) and self.air_weight >= 0):
            problems.append(("air_weight", "must be finite and >= 0"))
        if not (isinstance(self.pressure_threshold, (int, float))
                and math.isfinite(self.pressure_threshold)
                and self.pressure_threshold > 0):
            problems.append(("pressure_threshold", "must be > 0"))
        if not (isinstance(self.initial_infectious_fraction, float)
                and 0.0 < self.initial_infectious_fraction < 1.0):
            problems.append(("initial_infectious_fraction", "must be in (0, 1)"))
        if not (isinstance(self.occupancy_fraction, (int, float))
                and 0.0 <= self.occupancy_fraction <= 1.0):
            problems.append(("occupancy_fraction", "must be a fraction in [0, 1]"))
        if not isinstance(self.air_enabled, bool):
            problems.append(("air_enabled", "must be a boolean"))
        if not isinstance(self.rng_seed, int) or isinstance(self.rng_seed, bool):
            problems.append(("rng_seed", "must be an integer"))
        if self.rounding not in ROUNDING_MODES:
            problems.append(("rounding", f"must be one of {ROUNDING_MODES}"))
        for i, seed in enumerate(self.seeds):
            if not isinstance(seed.day, int) or isinstance(seed.day, bool) or seed.day < 0:
                problems.append((f"seeds[{i}].day", "must be an integer >= 0"))
            if not isinstance(seed.cases, int) or isinstance(seed.cases, bool) \
                    or seed.cases < 1:
                problems.append((f"seeds[{i}].cases", "must be an integer >= 1"))
        problems.extend(validate_actions(self.actions))
        return problems

    def check(self):
        problems = self.validate()
        if problems:
            raise ValidationError(problems)
        return self

    def with_actions(self, actions):
        return replace(self, actions=tuple(actions))


def _dedupe_actions(actions):
    # Re-applying a measure kind replaces the earlier application.
    by_kind = {}
    for action in actions:
        by_kind[action.kind] = action
    return tuple(sorted(by_kind.values(), key=lambda a: (a.start_day, a.kind)))


def config_from_mapping(data) -> tuple:
    """Build a validated ScenarioConfig from a parsed JSON object.

    Returns ``(config, provenance)`` where provenance maps each leaf key to
    ``"user"`` or ``"default"``. Unknown keys anywhere raise ValidationError.
    """
    if not isinstance(data, dict):
        raise ValidationError([("config", "must be a JSON object")])
    problems = [(key, "unknown configuration key")
                for key in sorted(set(data) - set(TOP_LEVEL_KEYS))]
    provenance = {}

    def take(key, default):
        if key in data:
            provenance[key] = "user"
            return data[key]
        provenance[key] = "default"
        return default

    defaults = DiseaseParams()
    params = DiseaseParams(**{k: take(k, getattr(defaults, k)) for k in PARAM_KEYS})

    raw_profiles = data.get("age_profiles", {})
    if not isinstance(raw_profiles, dict):
        problems.append(("age_profiles", "must be an object keyed by age group"))
        raw_profiles = {}
    for extra in sorted(set(raw_profiles) - set(AGE_GROUPS)):
        problems.append((f"age_profiles.{extra}", "unknown age group"))
    groups = []
    for g in AGE_GROUPS:
        entry = raw_profiles.get(g, {})
        if not isinstance(entry, dict):
            problems.append((f"age_profiles.{g}", "must be an object"))
            entry = {}
        for extra in sorted(set(entry) - set(_PROFILE_FIELDS)):
            problems.append((f"age_profiles.{g}.{extra}", "unknown profile field"))
        values = {}
        for fld in _PROFILE_FIELDS:
            dotted = f"age_profiles.{g}.{fld}"
            if fld in entry:
                provenance[dotted] = "user"
                values[fld] = entry[fld]
            else:
                provenance[dotted] = "default"
                values[fld] = DEFAULT_PROFILE_MULTIPLIERS[g][fld]
        groups.append(AgeGroupProfile(
            group=g,
            prevalence_multiplier=values["prevalence"],
            hospitalization_multiplier=values["hospitalization"],
            mortality_multiplier=values["mortality"],
        ))
    profiles = AgeGroupProfiles(tuple(groups))

    raw_density = data.get("density_modifiers", {})
    if not isinstance(raw_density, dict):
        problems.append(("density_modifiers", "must be an object"))
        raw_density = {}
    density = {}
    for cls_name in DENSITY_CLASSES:
        dotted = f"density_modifiers.{cls_name}"
        if cls_name in raw_density:
            provenance[dotted] = "user"
            density[cls_name] = raw_density[cls_name]
        else:
            provenance[dotted] = "default"
            density[cls_name] = DEFAULT_DENSITY_MODIFIERS[cls_name]
    for extra in sorted(set(raw_density) - set(DENSITY_CLASSES)):
        problems.append((f"density_modifiers.{extra}", "unknown density class"))

    seeds = []
    raw_seeds = take("seeds", [])
    if not isinstance(raw_seeds, list):
        problems.append(("seeds", "must be a list"))
        raw_seeds = []
    for i, entry in enumerate(raw_seeds):
        if not isinstance(entry, dict):
            problems.append((f"seeds[{i}]", "must be an object"))
            continue
        for extra in sorted(set(entry) - set(_SEED_KEYS)):
            problems.append((f"seeds[{i}].{extra}", "unknown seed field"))
        if "fips" not in entry:
            problems.append((f"seeds[{i}].fips", "required"))
            continue
        seeds.append(Seed(fips=str(entry["fips"]), day=entry.get("day", 0),
                          cases=entry.get("cases", 1)))

    actions = []
    raw_actions = take("actions", [])
    if not isinstance(raw_actions, list):
        problems.append(("actions", "must be a list"))
        raw_actions = []
    for i, entry in enumerate(raw_actions):
        parsed = action_from_mapping(entry, problems, f"actions[{i}]")
        if parsed is not None:
            actions.append(parsed)

    config = ScenarioConfig(
        params=params,
        profiles=profiles,
        density_modifiers=density,
        spread_rate=take("spread_rate", 600.0),
        air_weight=take("air_weight", DEFAULT_AIR_WEIGHT),
        pressure_threshold=take("pressure_threshold", DEFAULT_PRESSURE_THRESHOLD),
        initial_infectious_fraction=take("initial_infectious_fraction",
                                         DEFAULT_INITIAL_INFECTIOUS_FRACTION),
        occupancy_fraction=take("occupancy_fraction", DEFAULT_OCCUPANCY_FRACTION),
        air_enabled=take("air_enabled", True),
        seeds=tuple(seeds),
        actions=_dedupe_actions(actions),
        rng_seed=take("rng_seed", 0),
        rounding=take("rounding", "half_even"),
    )
    problems.extend(config.validate())
    if problems:
        raise ValidationError(problems)
    return config, provenance


def action_from_mapping(entry, problems=None, label="action"):
    """Parse one action object; missing ramp/reduction take measure defaults."""
    own = problems is None
    if own:
        problems = []
    if not isinstance(entry, dict):
        problems.append((label, "must be an object"))
        if own and problems:
            raise ValidationError(problems)
        return None
    for extra in sorted(set(entry) - set(_ACTION_KEYS)):
        problems.append((f"{label}.{extra}", "unknown action field"))
    missing = [k for k in ("kind", "start_day") if k not in entry]
    if missing:
        for key in missing:
            problems.append((f"{label}.{key}", "required"))
        if own and problems:
            raise ValidationError(problems)
        return None
    kind = entry["kind"]
    action = DecisionAction(
        kind=kind,
        start_day=entry["start_day"],
        ramp_days=entry.get("ramp_days", DEFAULT_RAMP_DAYS),
        reduction=entry.get("reduction", DEFAULT_REDUCTIONS.get(kind, -1.0)),
    )
    if own and problems:
        raise ValidationError(problems)
    return action


def config_to_mapping(config: ScenarioConfig) -> dict:
    """Inverse of config_from_mapping (the resolved echo-back form)."""
    return {
        **{k: getattr(config.params, k) for k in PARAM_KEYS},
        "initial_infectious_fraction": config.initial_infectious_fraction,
        "age_profiles": {
            p.group: {
                "prevalence": p.prevalence_multiplier,
                "hospitalization": p.hospitalization_multiplier,
                "mortality": p.mortality_multiplier,
            }
            for p in config.profiles
        },
        "density_modifiers": dict(config.density_modifiers),
        "spread_rate": config.spread_rate,
        "air_weight": config.air_weight,
        "pressure_threshold": config.pressure_threshold,
        "occupancy_fraction": config.occupancy_fraction,
        "air_enabled": config.air_enabled,
        "seeds": [{"fips": s.fips, "day": s.day, "cases": s.cases}
                  for s in config.seeds],
        "actions": [{"kind": a.kind, "start_day": a.start_day,
                     "ramp_days": a.ramp_days, "reduction": a.reduction}
                    for a in config.actions],
        "rng_seed": config.rng_seed,
        "rounding": config.rounding,
    }
