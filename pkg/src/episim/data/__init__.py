"""Packaged fixture data."""
from importlib import resources


def oklahoma_path(name: str):
    """Path to a file of the shipped Oklahoma fixture.

    Available names: counties.csv, adjacency.csv, air_routes.csv,
    config.json, config_beds.json, geometry.json.
    """
    return resources.files(__package__) / "oklahoma" / name
