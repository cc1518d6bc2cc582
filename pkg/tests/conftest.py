"""Shared fixtures: the Oklahoma bundle and small synthetic networks."""
import json

import numpy as np
import pytest

from episim import dataio
from episim.config import config_from_mapping
from episim.data import oklahoma_path
from episim.network import County, build_network


@pytest.fixture(scope="session")
def oklahoma_bundle():
    return dataio.load_bundle(
        oklahoma_path("counties.csv"),
        oklahoma_path("adjacency.csv"),
        oklahoma_path("air_routes.csv"),
        oklahoma_path("geometry.json"),
    )


@pytest.fixture(scope="session")
def oklahoma_network(oklahoma_bundle):
    return oklahoma_bundle.network()


@pytest.fixture(scope="session")
def oklahoma_config():
    config, _ = config_from_mapping(
        json.loads(oklahoma_path("config.json").read_text()))
    return config


@pytest.fixture(scope="session")
def oklahoma_beds_config():
    config, _ = config_from_mapping(
        json.loads(oklahoma_path("config_beds.json").read_text()))
    return config


def make_random_network(rng, n_counties=None):
    """A small connected random county network for property suites."""
    n = n_counties or int(rng.integers(3, 11))
    counties = []
    for i in range(n):
        pop = int(rng.integers(500, 60_000))
        young = int(pop * rng.uniform(0.18, 0.28))
        old = int(pop * rng.uniform(0.10, 0.25))
        counties.append(County(
            fips=f"{9000 + 2 * i + 1:05d}",
            name=f"County {i}",
            population_by_group=(young, pop - young - old, old),
            density_class=str(rng.choice(["rural", "small", "urban"])),
            total_beds=int(rng.integers(0, 400)),
            lat=34.0 + float(rng.uniform(0, 3)),
            lon=-99.0 + float(rng.uniform(0, 4)),
            has_airport=bool(rng.random() < 0.3),
        ))
    fips = [c.fips for c in counties]
    edges = [(fips[i - 1], fips[i]) for i in range(1, n)]  # spanning path
    extra = int(rng.integers(0, n))
    for _ in range(extra):
        a, b = rng.choice(n, size=2, replace=False)
        edges.append((fips[int(a)], fips[int(b)]))
    return build_network(counties, edges, air_edges=None,
                         spread_rate=float(rng.uniform(5, 300)))


def random_config_mapping(rng, network, horizon=None):
    """Random-but-valid scenario config over the given network."""
    fips = [c.fips for c in network.counties]
    n_seeds = int(rng.integers(1, min(3, len(fips)) + 1))
    seed_fips = rng.choice(len(fips), size=n_seeds, replace=False)
    return {
        "r0": float(rng.uniform(0.8, 4.0)),
        "shedding_period": int(rng.integers(2, 9)),
        "incubation_period": int(rng.integers(1, 7)),
        "mortality_rate": float(rng.uniform(0.0, 0.08)),
        "time_to_death": int(rng.integers(7, 21)),
        "recovery_time": int(rng.integers(5, 18)),
        "hospitalization_rate": float(rng.uniform(0.0, 0.25)),
        "days_in_hospital": int(rng.integers(2, 12)),
        "excess_mortality_multiplier": float(rng.uniform(1.0, 3.0)),
        "horizon": horizon or int(rng.integers(30, 121)),
        "initial_infectious_fraction": float(rng.uniform(1e-5, 2e-3)),
        "spread_rate": float(rng.uniform(5, 400)),
        "occupancy_fraction": float(rng.uniform(0.3, 0.9)),
        "air_enabled": bool(rng.random() < 0.5),
        "seeds": [{"fips": fips[int(i)], "day": int(rng.integers(0, 5)),
                   "cases": int(rng.integers(1, 200))}
                  for i in seed_fips],
        "actions": [],
        "rng_seed": int(rng.integers(0, 2**31)),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
