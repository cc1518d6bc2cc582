"""Disease parameters and age-group profiles."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ValidationError

AGE_GROUPS = ("0-17", "18-64", "65+")
N_GROUPS = len(AGE_GROUPS)


@dataclass(frozen=True)
class DiseaseParams:
    """Epidemiological constants driving the county model.

    All period fields are whole days; all rate fields are fractions in
    [0, 1]. ``excess_mortality_multiplier`` scales the mortality of sick
    people who needed a hospital bed but did not get one.
    """

    r0: float = 3.0
    shedding_period: int = 3
    incubation_period: int = 4
    mortality_rate: float = 0.012
    time_to_death: int = 16
    recovery_time: int = 13
    hospitalization_rate: float = 0.06
    days_in_hospital: int = 8
    excess_mortality_multiplier: float = 2.0
    horizon: int = 150

    def validate(self):
        """Return a list of (field, message) constraint violations."""
        problems = []
        if not math.isfinite(self.r0) or self.r0 < 0:
            problems.append(("r0", "must be finite and >= 0"))
        for name in ("shedding_period", "incubation_period", "time_to_death",
                     "recovery_time", "days_in_hospital", "horizon"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                problems.append((name, "must be an integer >= 1"))
        for name in ("mortality_rate", "hospitalization_rate"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)
                    and 0.0 <= value <= 1.0):
                problems.append((name, "must be a fraction in [0, 1]"))
        if not (isinstance(self.excess_mortality_multiplier, (int, float))
                and math.isfinite(self.excess_mortality_multiplier)
                and self.excess_mortality_multiplier >= 1.0):
            problems.append(("excess_mortality_multiplier", "must be >= 1"))
        if (isinstance(self.time_to_death, int) and isinstance(self.incubation_period, int)
                and self.time_to_death < self.incubation_period):
            problems.append(("time_to_death",
                             "must be >= incubation_period (death follows symptom onset)"))
        return problems

    def check(self):
        problems = self.validate()
        if problems:
            raise ValidationError(problems)
        return self


@dataclass(frozen=True)
class AgeGroupProfile:
    """Per-age-group scaling of prevalence, hospitalization, and mortality."""

    group: str
    prevalence_multiplier: float = 1.0
    hospitalization_multiplier: float = 1.0
    mortality_multiplier: float = 1.0

    def validate(self, prefix=""):
        problems = []
        if self.group not in AGE_GROUPS:
            problems.append((prefix + "group", f"must be one of {AGE_GROUPS}"))
        for name in ("prevalence_multiplier", "hospitalization_multiplier",
                     "mortality_multiplier"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)
                    and value >= 0.0):
                problems.append((prefix + name, "must be finite and >= 0"))
        return problems


# Shipping defaults. The hospitalization/mortality skews toward the oldest
# group are configuration placeholders, not values taken from case data.
DEFAULT_PROFILE_MULTIPLIERS = {
    "0-17": {"prevalence": 1.0, "hospitalization": 0.2, "mortality": 0.1},
    "18-64": {"prevalence": 1.0, "hospitalization": 1.0, "mortality": 1.0},
    "65+": {"prevalence": 1.0, "hospitalization": 3.0, "mortality": 5.0},
}


def default_profiles():
    return AgeGroupProfiles(tuple(
        AgeGroupProfile(
            group=g,
            prevalence_multiplier=DEFAULT_PROFILE_MULTIPLIERS[g]["prevalence"],
            hospitalization_multiplier=DEFAULT_PROFILE_MULTIPLIERS[g]["hospitalization"],
            mortality_multiplier=DEFAULT_PROFILE_MULTIPLIERS[g]["mortality"],
        )
        for g in AGE_GROUPS
    ))


@dataclass(frozen=True)
class AgeGroupProfiles:
    """The three age-group profiles, in fixed group order (0-17, 18-64, 65+)."""

    groups: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if len(self.groups) != N_GROUPS:
            raise ValidationError([("age_profiles", f"expected {N_GROUPS} groups")])

    def __iter__(self):
        return iter(self.groups)

    def __getitem__(self, i):
        return self.groups[i]

    def validate(self):
        problems = []
        seen = [p.group for p in self.groups]
        if seen != list(AGE_GROUPS):
            problems.append(("age_profiles", f"groups must be exactly {AGE_GROUPS} in order"))
        for profile in self.groups:
            problems.extend(profile.validate(prefix=f"age_profiles.{profile.group}."))
        return problems
