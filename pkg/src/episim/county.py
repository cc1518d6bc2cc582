"""Single-county daily dynamics: infections, hospital beds, deaths.

A county's local outbreak is driven by the prevalence curve indexed by its
own outbreak clock. Each day's new sicknesses form a cohort whose later
events (hospital admission, death, recovery, bed discharge) happen at fixed
offsets from the infection day, so the pipeline is a plain mapping from
infection day to cohort record and every day's due cohorts are O(1) lookups.

All operations are value-semantic: they return a new CountyState and never
mutate their input observably.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import HorizonError, ValidationError
from .params import N_GROUPS, AgeGroupProfiles, DiseaseParams

ROUNDING_MODES = ("half_even", "stochastic")


def make_rounder(mode: str, rng=None):
    """Return the configured float -> int rounding policy.

    ``half_even`` is deterministic banker's rounding (no systematic drift).
    ``stochastic`` rounds up with probability equal to the fractional part,
    drawing from the supplied seeded generator, so runs stay reproducible.
    """
    if mode == "half_even":
        return lambda x: int(round(x))
    if mode == "stochastic":
        if rng is None:
            raise ValidationError([("rounding", "stochastic mode needs a seeded rng")])

        def stochastic(x):
            base = math.floor(x)
            frac = x - base
            return base + (1 if frac > 0 and rng.random() < frac else 0)

        return stochastic
    raise ValidationError([("rounding", f"unknown mode {mode!r}")])


@dataclass(frozen=True)
class Cohort:
    """People of one county infected on one absolute day, by age group.

    ``base_deaths`` is the pre-bed-allocation death mass; ``extra_deaths``
    is the unmet-demand add-on fixed on the admission day. ``removed`` tracks
    how much of the cohort already left the active pool so the final removal
    event drains it exactly to zero.
    """

    new_by_group: tuple
    hospital_by_group: tuple
    base_deaths_by_group: tuple
    extra_deaths: float = 0.0
    admitted: int = 0
    allocation_done: bool = False
    recovery_done: bool = False
    removed: float = 0.0

    @property
    def size(self):
        return sum(self.new_by_group)

    @property
    def base_deaths(self):
        return sum(self.base_deaths_by_group)


@dataclass(frozen=True)
class CountyState:
    """Compartment counts, bed usage, and outbreak clock for one county.

    Susceptible and cumulative-sick counts are integers per age group and
    conserve the initial population exactly. Death/recovery flows are real
    valued expected counts.
    """

    fips: str
    population_by_group: tuple
    outbreak_started: bool = False
    local_day: int = 0
    susceptible_by_group: tuple = ()
    cumulative_sick_by_group: tuple = (0,) * N_GROUPS
    active_sick: float = 0.0
    hospital_demand: int = 0
    beds_filled: int = 0
    unmet_demand: int = 0
    deaths_cumulative: float = 0.0
    new_deaths_today: float = 0.0
    pipeline: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.susceptible_by_group:
            object.__setattr__(self, "susceptible_by_group",
                               tuple(self.population_by_group))

    @property
    def population(self):
        return sum(self.population_by_group)

    @property
    def cumulative_sick(self):
        return sum(self.cumulative_sick_by_group)

    def new_sick_by_group(self, absolute_day):
        """New sicknesses recorded on ``absolute_day`` (seeds + infections)."""
        cohort = self.pipeline.get(absolute_day)
        return cohort.new_by_group if cohort else (0,) * N_GROUPS


def effective_bed_capacity(total_beds: int, occupancy_fraction: float) -> int:
    """Beds free for the simulation: floor(total * (1 - occupancy))."""
    return math.floor(total_beds * (1.0 - occupancy_fraction))


def allocate_beds(demand: int, total_beds: int, occupancy_fraction: float,
                  currently_filled: int = 0):
    """Fill today's bed demand against remaining capacity.

    Returns ``(filled, unmet)`` where ``filled`` is the total number of
    occupied simulation beds after allocation and ``unmet`` the portion of
    today's demand that found no bed. ``filled + unmet`` conserves
    ``currently_filled + demand``.
    """
    capacity = effective_bed_capacity(total_beds, occupancy_fraction)
    newly = min(demand, max(0, capacity - currently_filled))
    return currently_filled + newly, demand - newly


def _build_cohort(new_by_group, params: DiseaseParams, profiles: AgeGroupProfiles,
                  rounder) -> Cohort:
    hospital = []
    base_deaths = []
    for g in range(N_GROUPS):
        n = new_by_group[g]
        h_rate = min(1.0, params.hospitalization_rate * profiles[g].hospitalization_multiplier)
        h = min(n, max(0, rounder(n * h_rate)))
        hospital.append(h)
        m_rate = min(1.0, params.mortality_rate * profiles[g].mortality_multiplier)
        base_deaths.append(n * m_rate)
    return Cohort(tuple(new_by_group), tuple(hospital), tuple(base_deaths))


def _merge_cohorts(a: Cohort, b: Cohort) -> Cohort:
    return Cohort(
        tuple(x + y for x, y in zip(a.new_by_group, b.new_by_group)),
        tuple(x + y for x, y in zip(a.hospital_by_group, b.hospital_by_group)),
        tuple(x + y for x, y in zip(a.base_deaths_by_group, b.base_deaths_by_group)),
    )


def seed_county(state: CountyState, cases_by_group, params: DiseaseParams,
                profiles: AgeGroupProfiles, rounder, absolute_day: int) -> CountyState:
    """Start a county's outbreak with imported cases.

    The seeded cases are clamped per group to the available susceptibles and
    enter the pipeline like any infection cohort. Seeding a county whose
    outbreak is already underway adds cases without rewinding its clock.
    """
    cases = tuple(min(c, s) for c, s in
                  zip(cases_by_group, state.susceptible_by_group))
    pipeline = dict(state.pipeline)
    if any(cases):
        cohort = _build_cohort(cases, params, profiles, rounder)
        existing = pipeline.get(absolute_day)
        pipeline[absolute_day] = _merge_cohorts(existing, cohort) if existing else cohort
    return replace(
        state,
        outbreak_started=True,
        local_day=state.local_day if state.outbreak_started else 0,
        susceptible_by_group=tuple(s - c for s, c in
                                   zip(state.susceptible_by_group, cases)),
        cumulative_sick_by_group=tuple(k + c for k, c in
                                       zip(state.cumulative_sick_by_group, cases)),
        active_sick=state.active_sick + sum(cases),
        pipeline=pipeline,
    )


def step_county(state: CountyState, curve, profiles: AgeGroupProfiles,
                intervention_multiplier: float, bed_capacity: int,
                absolute_day: int, params: DiseaseParams,
                rounder=None) -> CountyState:
    """Advance one started county by one day.

    New infections per group are ``susceptible * curve[local_day] *
    prevalence_multiplier * intervention_multiplier`` put through the
    rounding policy and clamped to the remaining susceptibles. Due pipeline
    events execute in the order: bed discharges, hospital admissions (bed
    allocation plus the unmet-demand mortality top-up), deaths, recoveries.
    """
    if not state.outbreak_started:
        raise ValidationError([("state", f"county {state.fips} outbreak not started")])
    t = state.local_day
    if t >= len(curve):
        raise HorizonError(f"county {state.fips}: local day {t} is past the "
                           f"{len(curve)}-day curve")
    if rounder is None:
        rounder = make_rounder("half_even")

    incidence = curve[t]
    susceptible = list(state.susceptible_by_group)
    cumulative = list(state.cumulative_sick_by_group)
    new = []
    for g in range(N_GROUPS):
        raw = (susceptible[g] * incidence
               * profiles[g].prevalence_multiplier * intervention_multiplier)
        n = min(susceptible[g], max(0, rounder(raw)))
        new.append(n)
        susceptible[g] -= n
        cumulative[g] += n

    pipeline = dict(state.pipeline)
    if any(new):
        cohort = _build_cohort(new, params, profiles, rounder)
        existing = pipeline.get(absolute_day)
        pipeline[absolute_day] = (_merge_cohorts(existing, cohort)
                                  if existing else cohort)

    active = state.active_sick + sum(new)
    beds_filled = state.beds_filled
    deaths_cum = state.deaths_cumulative
    new_deaths = 0.0

    inc_p = params.incubation_period
    drop_after = max(params.time_to_death, params.recovery_time,
                     inc_p + params.days_in_hospital)

    # Bed discharges free capacity before today's admissions are allocated.
    discharge_key = absolute_day - inc_p - params.days_in_hospital
    discharged = pipeline.get(discharge_key)
    if discharged is not None and discharged.admitted:
        beds_filled -= discharged.admitted

    # Hospital admissions: allocate beds, then fix the cohort's excess
    # mortality from its share of unmet demand.
    demand = 0
    unmet = 0
    admission_key = absolute_day - inc_p
    admitting = pipeline.get(admission_key)
    if admitting is not None and not admitting.allocation_done:
        demand = sum(admitting.hospital_by_group)
        newly = min(demand, max(0, bed_capacity - beds_filled))
        beds_filled += newly
        unmet = demand - newly
        extra = 0.0
        if unmet > 0 and not admitting.recovery_done:
            unmet_share = unmet / demand
            for g in range(N_GROUPS):
                unmet_g = admitting.hospital_by_group[g] * unmet_share
                n_g = admitting.new_by_group[g]
                m_g = (admitting.base_deaths_by_group[g] / n_g) if n_g else 0.0
                extra += min(unmet_g * m_g * (params.excess_mortality_multiplier - 1.0),
                             unmet_g * (1.0 - m_g))
        pipeline[admission_key] = replace(admitting, admitted=newly,
                                          extra_deaths=extra, allocation_done=True)

    # Deaths. Whichever removal event (death or recovery) fires last drains
    # the cohort's remainder exactly, so active_sick returns to exact zero.
    death_is_final = params.time_to_death > params.recovery_time
    death_key = absolute_day - params.time_to_death
    dying = pipeline.get(death_key)
    if dying is not None:
        remaining = dying.size - dying.removed
        if death_is_final:
            amount = remaining
        else:
            amount = min(dying.base_deaths + dying.extra_deaths, remaining)
        active -= amount
        deaths_cum += amount
        new_deaths += amount
        pipeline[death_key] = replace(dying, removed=dying.removed + amount)

    # Recoveries (survivors leave the active pool).
    recovery_key = absolute_day - params.recovery_time
    recovering = pipeline.get(recovery_key)
    if recovering is not None and not recovering.recovery_done:
        remaining = recovering.size - recovering.removed
        if death_is_final:
            amount = max(0.0, remaining
                         - recovering.base_deaths - recovering.extra_deaths)
        else:
            amount = remaining
        active -= amount
        pipeline[recovery_key] = replace(recovering, removed=recovering.removed + amount,
                                         recovery_done=True)

    stale_key = absolute_day - drop_after
    if stale_key in pipeline:
        del pipeline[stale_key]

    return replace(
        state,
        local_day=t + 1,
        susceptible_by_group=tuple(susceptible),
        cumulative_sick_by_group=tuple(cumulative),
        active_sick=active,
        hospital_demand=demand,
        beds_filled=beds_filled,
        unmet_demand=unmet,
        deaths_cumulative=deaths_cum,
        new_deaths_today=new_deaths,
        pipeline=pipeline,
    )
