"""Decision measures and their effect on the prevalence curve.

Each measure reduces the daily infection probability by a configurable
fraction, ramping linearly from no effect at its start day to full effect
``ramp_days`` later. Active measures combine multiplicatively.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


MEASURE_KINDS = ("media_alerts", "school_closures", "shelter_in_place")

DEFAULT_REDUCTIONS = {
    "media_alerts": 0.10,
    "school_closures": 0.25,
    "shelter_in_place": 0.50,
}
DEFAULT_RAMP_DAYS = 7


@dataclass(frozen=True)
class DecisionAction:
    """One intervention: what, when, how fast, how strong."""

    kind: str
    start_day: int
    ramp_days: int = DEFAULT_RAMP_DAYS
    reduction: float = -1.0  # sentinel: resolve from DEFAULT_REDUCTIONS

    def __post_init__(self):
        if self.reduction < 0 and self.kind in DEFAULT_REDUCTIONS:
            object.__setattr__(self, "reduction", DEFAULT_REDUCTIONS[self.kind])

    def validate(self, prefix=""):
        problems = []
        if self.kind not in MEASURE_KINDS:
            problems.append((prefix + "kind", f"must be one of {MEASURE_KINDS}"))
        if not isinstance(self.start_day, int) or isinstance(self.start_day, bool) \
                or self.start_day < 0:
            problems.append((prefix + "start_day", "must be an integer >= 0"))
        if not isinstance(self.ramp_days, int) or isinstance(self.ramp_days, bool) \
                or self.ramp_days < 0:
            problems.append((prefix + "ramp_days", "must be an integer >= 0"))
        if not (isinstance(self.reduction, (int, float)) and math.isfinite(self.reduction)
                and 0.0 <= self.reduction < 1.0):
            problems.append((prefix + "reduction",
                             "must be in [0, 1); a measure cannot stop all transmission"))
        return problems


def measure_multiplier(action: DecisionAction, day: int) -> float:
    """Prevalence multiplier contributed by one action on an absolute day.

    1.0 before the start day, then a linear ramp down to (1 - reduction)
    over ``ramp_days`` days; zero ramp means full impact at the start day.
    """
    if day < action.start_day:
        return 1.0
    if action.ramp_days > 0 and day < action.start_day + action.ramp_days:
        progress = (day - action.start_day) / action.ramp_days
        return 1.0 - action.reduction * progress
    return 1.0 - action.reduction


def combined_multiplier(actions, day: int) -> float:
    """Product of all measure multipliers for the day; empty set gives 1.0.

    Actions are multiplied in a fixed kind/start order so the result is
    bit-identical under permutations of the input.
    """
    result = 1.0
    for action in sorted(actions, key=lambda a: (a.kind, a.start_day)):
        result *= measure_multiplier(action, day)
    return result


def validate_actions(actions):
    """Per-action field checks plus the one-active-action-per-kind rule."""
    problems = []
    seen = {}
    for i, action in enumerate(actions):
        problems.extend(action.validate(prefix=f"actions[{i}]."))
        if action.kind in seen:
            problems.append((f"actions[{i}].kind",
                             f"{action.kind} already applied at day "
                             f"{seen[action.kind]}; at most one action per kind"))
        else:
            seen[action.kind] = action.start_day
    return problems
