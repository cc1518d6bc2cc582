"""Between-county spread over an adjacency graph plus an air-travel overlay.

Counties that have not started their own outbreak accumulate importation
pressure from infected neighbors every day; crossing a threshold triggers
their local outbreak. Pressure arithmetic uses a fixed summation order
(ascending county index, adjacency before air) so runs are bit-stable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .county import CountyState
from .errors import ValidationError

DENSITY_CLASSES = ("rural", "small", "urban")

DEFAULT_DENSITY_MODIFIERS = {"rural": 0.6, "small": 1.0, "urban": 1.5}
DEFAULT_AIR_WEIGHT = 1.0
DEFAULT_PRESSURE_THRESHOLD = 1.0


@dataclass(frozen=True)
class County:
    fips: str
    name: str
    population_by_group: tuple
    density_class: str
    total_beds: int
    lat: float
    lon: float
    has_airport: bool

    @property
    def population(self):
        return sum(self.population_by_group)

    def validate(self, prefix=""):
        problems = []
        if self.density_class not in DENSITY_CLASSES:
            problems.append((prefix + "density_class",
                             f"must be one of {DENSITY_CLASSES}"))
        if any(p < 0 for p in self.population_by_group) or self.population <= 0:
            problems.append((prefix + "population", "total population must be > 0"))
        if self.total_beds < 0:
            problems.append((prefix + "total_beds", "must be >= 0"))
        return problems


@dataclass(frozen=True)
class Seed:
    """Initial cases placed in one county on one absolute day."""

    fips: str
    day: int
    cases: int


@dataclass(frozen=True)
class SpreadNetwork:
    """Validated county graph with spread parameters.

    Counties are ordered by fips; edges are stored as index pairs. The
    per-county modifier is looked up from the density class once here.
    """

    counties: tuple
    adjacency: tuple
    air_routes: tuple
    spread_rate: float
    density_modifiers: dict
    air_weight: float = DEFAULT_AIR_WEIGHT
    index_of: dict = field(default_factory=dict)
    neighbors: tuple = ()
    air_neighbors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "index_of",
                           {c.fips: i for i, c in enumerate(self.counties)})
        adj = [[] for _ in self.counties]
        for a, b in self.adjacency:
            adj[a].append(b)
            adj[b].append(a)
        air = [[] for _ in self.counties]
        for a, b in self.air_routes:
            air[a].append(b)
            air[b].append(a)
        object.__setattr__(self, "neighbors", tuple(tuple(sorted(n)) for n in adj))
        object.__setattr__(self, "air_neighbors", tuple(tuple(sorted(n)) for n in air))

    def __len__(self):
        return len(self.counties)

    def modifier(self, index):
        return self.density_modifiers[self.counties[index].density_class]


@dataclass(frozen=True)
class ImportationLedger:
    """Accumulated importation pressure per county (by network index)."""

    pressure: tuple

    @classmethod
    def zero(cls, n):
        return cls(pressure=(0.0,) * n)


def build_network(counties, adjacency_edges, air_edges=None,
                  spread_rate=1.0, density_modifiers=None,
                  air_weight=DEFAULT_AIR_WEIGHT) -> SpreadNetwork:
    """Assemble and validate a SpreadNetwork.

    ``air_edges=None`` builds the default complete graph among airport
    counties; pass an explicit (possibly empty) edge list to override.
    Duplicate edges are collapsed; dangling or self-loop edges and air
    edges touching non-airport counties are reported with their fips.
    """
    counties = tuple(sorted(counties, key=lambda c: c.fips))
    problems = []
    for county in counties:
        problems.extend(county.validate(prefix=f"counties[{county.fips}]."))
    seen = {}
    for county in counties:
        if county.fips in seen:
            problems.append(("counties", f"duplicate fips {county.fips}"))
        seen[county.fips] = county
    index_of = {c.fips: i for i, c in enumerate(counties)}

    def resolve(edges, label, airports_only=False):
        resolved = set()
        for a, b in edges:
            if a == b:
                problems.append((label, f"self-loop on {a}"))
                continue
            missing = [f for f in (a, b) if f not in index_of]
            if missing:
                problems.append((label, f"edge {a}-{b} references unknown "
                                        f"fips {', '.join(missing)}"))
                continue
            if airports_only:
                grounded = [f for f in (a, b) if not seen[f].has_airport]
                if grounded:
                    problems.append((label, f"air edge {a}-{b}: "
                                            f"{', '.join(grounded)} has no airport"))
                    continue
            i, j = sorted((index_of[a], index_of[b]))
            resolved.add((i, j))
        return tuple(sorted(resolved))

    adjacency = resolve(adjacency_edges, "adjacency")
    if air_edges is None:
        airport_idx = [i for i, c in enumerate(counties) if c.has_airport]
        air_routes = tuple((i, j) for k, i in enumerate(airport_idx)
                           for j in airport_idx[k + 1:])
    else:
        air_routes = resolve(air_edges, "air_routes", airports_only=True)

    modifiers = dict(DEFAULT_DENSITY_MODIFIERS)
    if density_modifiers:
        modifiers.update(density_modifiers)
    for cls_name in DENSITY_CLASSES:
        value = modifiers.get(cls_name)
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            problems.append((f"density_modifiers.{cls_name}", "must be > 0"))
    if not (isinstance(spread_rate, (int, float)) and math.isfinite(spread_rate)
            and spread_rate >= 0):
        problems.append(("spread_rate", "must be finite and >= 0"))
    if not (isinstance(air_weight, (int, float)) and math.isfinite(air_weight)
            and air_weight >= 0):
        problems.append(("air_weight", "must be finite and >= 0"))
    if problems:
        raise ValidationError(problems)
    return SpreadNetwork(counties=counties, adjacency=adjacency,
                         air_routes=air_routes, spread_rate=spread_rate,
                         density_modifiers=modifiers, air_weight=air_weight)


def accumulate_pressure(network: SpreadNetwork, states, ledger: ImportationLedger,
                        air_enabled: bool) -> ImportationLedger:
    """Add one day of importation pressure onto not-yet-started counties.

    Each started neighbor i of a non-started county j contributes
    ``spread_rate * modifier(i) * modifier(j) * active_sick_i / population_i``,
    with air-route neighbors additionally scaled by ``air_weight`` and only
    counted when air travel is enabled. Started counties' pressure freezes.
    """
    pressure = list(ledger.pressure)
    rate = network.spread_rate
    for j in range(len(network)):
        if states[j].outbreak_started:
            continue
        mod_j = network.modifier(j)
        total = pressure[j]
        for i in network.neighbors[j]:
            src = states[i]
            if src.outbreak_started and src.active_sick > 0:
                total += (rate * network.modifier(i) * mod_j
                          * src.active_sick / src.population)
        if air_enabled:
            for i in network.air_neighbors[j]:
                src = states[i]
                if src.outbreak_started and src.active_sick > 0:
                    total += (rate * network.modifier(i) * mod_j
                              * network.air_weight
                              * src.active_sick / src.population)
        pressure[j] = total
    return ImportationLedger(pressure=tuple(pressure))


def trigger_outbreaks(ledger: ImportationLedger, states,
                      threshold: float = DEFAULT_PRESSURE_THRESHOLD):
    """Start the outbreak of every non-started county at/over the threshold.

    Ties all trigger on the same day. Returns the updated state list.
    """
    if threshold <= 0:
        raise ValidationError([("pressure_threshold", "must be > 0")])
    out = list(states)
    for j, state in enumerate(out):
        if not state.outbreak_started and ledger.pressure[j] >= threshold:
            out[j] = CountyState(
                fips=state.fips,
                population_by_group=state.population_by_group,
                outbreak_started=True,
                local_day=0,
            )
    return out


def apportion(total: int, weights) -> list:
    """Split ``total`` into integer parts proportional to ``weights``.

    Largest-remainder method; ties broken by lowest index. Used to spread
    seeded cases across age groups in proportion to population.
    """
    weight_sum = sum(weights)
    if weight_sum <= 0:
        raise ValidationError([("weights", "must sum to > 0")])
    raw = [total * w / weight_sum for w in weights]
    parts = [math.floor(x) for x in raw]
    shortfall = total - sum(parts)
    order = sorted(range(len(weights)), key=lambda i: (parts[i] - raw[i], i))
    for i in order[:shortfall]:
        parts[i] += 1
    return parts


def seed_initial(network: SpreadNetwork, seeds):
    """Validate seeds and build fresh states plus an activation schedule.

    Returns ``(states, schedule)`` where ``schedule`` maps absolute day to
    ``[(county_index, cases_by_group), ...]``. The engine applies due seeds
    at the start of each day, so day-0 seeds are infectious immediately.
    """
    problems = []
    for i, seed in enumerate(seeds):
        if seed.fips not in network.index_of:
            problems.append((f"seeds[{i}].fips", f"unknown county {seed.fips}"))
        if not isinstance(seed.day, int) or isinstance(seed.day, bool) or seed.day < 0:
            problems.append((f"seeds[{i}].day", "must be an integer >= 0"))
        if not isinstance(seed.cases, int) or isinstance(seed.cases, bool) \
                or seed.cases < 1:
            problems.append((f"seeds[{i}].cases", "must be an integer >= 1"))
    if problems:
        raise ValidationError(problems)

    states = [CountyState(fips=c.fips, population_by_group=c.population_by_group)
              for c in network.counties]
    schedule = {}
    for seed in seeds:
        idx = network.index_of[seed.fips]
        county = network.counties[idx]
        cases = apportion(seed.cases, county.population_by_group)
        schedule.setdefault(seed.day, []).append((idx, tuple(cases)))
    return states, schedule
