"""Input loading/validation and CSV exports.

Tabular inputs are UTF-8, comma-delimited CSV with a mandatory header row.
Loaders collect every row-level defect before failing so one pass reports
the complete damage. Schemas:

  counties:   fips,name,pop_0_17,pop_18_64,pop_65plus,density_class,
              total_beds,lat,lon,has_airport
  edge files: fips_a,fips_b                      (adjacency and air routes)
  config:     a JSON object (see episim.config)
  geometry:   GeoJSON FeatureCollection with a ``fips`` property per feature
              (passthrough for the map UI)

Frame exports are one row per county-day:

  day,fips,new_sick_0_17,new_sick_18_64,new_sick_65_plus,new_sick,
  cumulative_sick,active_sick,hospital_demand,beds_filled,unmet_demand,
  new_deaths,cumulative_deaths

Summary exports are a single row:

  peak_sick_day,peak_sick_count,outbreak_duration,total_sick,total_deaths,
  total_hospitalizations
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .config import config_from_mapping
from .engine import FRAME_COLUMNS, SimulationResult, StateSummary
from .errors import InputError
from .network import DENSITY_CLASSES, County, SpreadNetwork, build_network

COUNTY_HEADER = ["fips", "name", "pop_0_17", "pop_18_64", "pop_65plus",
                 "density_class", "total_beds", "lat", "lon", "has_airport"]
EDGE_HEADER = ["fips_a", "fips_b"]

EXPORT_HEADER = ["day", "fips"] + list(FRAME_COLUMNS)
SUMMARY_HEADER = ["peak_sick_day", "peak_sick_count", "outbreak_duration",
                  "total_sick", "total_deaths", "total_hospitalizations"]

_TRUE = {"true", "1", "yes"}
_FALSE = {"false", "0", "no"}


def load_counties(path) -> list:
    """Parse and validate the counties CSV; returns County records."""
    diagnostics = []
    counties = []
    first_line = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != COUNTY_HEADER:
            raise InputError(path, [f"line 1: header must be "
                                    f"{','.join(COUNTY_HEADER)}"])
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(COUNTY_HEADER):
                diagnostics.append(f"line {lineno}: expected "
                                   f"{len(COUNTY_HEADER)} fields, got {len(row)}")
                continue
            rec = dict(zip(COUNTY_HEADER, (v.strip() for v in row)))
            ok = True
            if rec["fips"] in first_line:
                diagnostics.append(f"line {lineno}: duplicate fips "
                                   f"{rec['fips']} (first seen on line "
                                   f"{first_line[rec['fips']]})")
                ok = False
            else:
                first_line[rec["fips"]] = lineno
            if not rec["name"]:
                diagnostics.append(f"line {lineno}: empty county name")
                ok = False
            pops = []
            for col in ("pop_0_17", "pop_18_64", "pop_65plus"):
                try:
                    value = int(rec[col])
                except ValueError:
                    diagnostics.append(f"line {lineno}: {col} is not an integer")
                    ok = False
                    value = 0
                if value < 0:
                    diagnostics.append(f"line {lineno}: {col} must be >= 0")
                    ok = False
                pops.append(value)
            if ok and sum(pops) <= 0:
                diagnostics.append(f"line {lineno}: total population must be > 0")
                ok = False
            if rec["density_class"] not in DENSITY_CLASSES:
                diagnostics.append(f"line {lineno}: unknown density class "
                                   f"{rec['density_class']!r}")
                ok = False
            try:
                beds = int(rec["total_beds"])
                if beds < 0:
                    diagnostics.append(f"line {lineno}: total_beds must be >= 0")
                    ok = False
            except ValueError:
                diagnostics.append(f"line {lineno}: total_beds is not an integer")
                ok = False
                beds = 0
            try:
                lat, lon = float(rec["lat"]), float(rec["lon"])
            except ValueError:
                diagnostics.append(f"line {lineno}: lat/lon must be numbers")
                ok = False
                lat = lon = 0.0
            flag = rec["has_airport"].lower()
            if flag in _TRUE:
                has_airport = True
            elif flag in _FALSE:
                has_airport = False
            else:
                diagnostics.append(f"line {lineno}: has_airport must be "
                                   f"true/false")
                ok = False
                has_airport = False
            if ok:
                counties.append(County(
                    fips=rec["fips"], name=rec["name"],
                    population_by_group=tuple(pops),
                    density_class=rec["density_class"], total_beds=beds,
                    lat=lat, lon=lon, has_airport=has_airport,
                ))
    if diagnostics:
        raise InputError(path, diagnostics)
    return counties


def _load_edges(path, known_fips, label):
    diagnostics = []
    edges = []
    seen = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != EDGE_HEADER:
            raise InputError(path, [f"line 1: header must be "
                                    f"{','.join(EDGE_HEADER)}"])
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                diagnostics.append(f"line {lineno}: expected 2 fields")
                continue
            a, b = row[0].strip(), row[1].strip()
            if a == b:
                diagnostics.append(f"line {lineno}: self-loop on {a}")
                continue
            dangling = [f for f in (a, b) if f not in known_fips]
            if dangling:
                diagnostics.append(f"line {lineno}: {label} edge references "
                                   f"unknown fips {', '.join(dangling)}")
                continue
            key = tuple(sorted((a, b)))
            if key not in seen:
                seen.add(key)
                edges.append(key)
    if diagnostics:
        raise InputError(path, diagnostics)
    return edges


def load_adjacency(path, counties) -> list:
    """Two-column fips CSV of adjacent county pairs; deduplicated."""
    return _load_edges(path, {c.fips for c in counties}, "adjacency")


def load_air_routes(path, counties) -> list:
    """Two-column fips CSV of air routes between airport counties."""
    return _load_edges(path, {c.fips for c in counties}, "air route")


def load_config(path):
    """Parse the JSON model configuration.

    Returns ``(config, provenance)``; provenance flags each leaf key as
    user-set or default so the echo-back can show exactly what was assumed.
    """
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(path, [f"not valid JSON: {exc}"]) from None
    return config_from_mapping(data)


def load_geometry(path) -> dict:
    """GeoJSON passthrough for the UI; only the envelope is checked."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(path, [f"not valid JSON: {exc}"]) from None
    if not isinstance(data, dict) or data.get("type") != "FeatureCollection" \
            or not isinstance(data.get("features"), list):
        raise InputError(path, ["expected a GeoJSON FeatureCollection"])
    return data


@dataclass(frozen=True)
class InputBundle:
    """Everything loaded from disk for one simulation service instance."""

    counties: tuple
    adjacency: tuple
    air_routes: tuple  # None means "default complete airport graph"
    geometry: dict = None
    paths: dict = None

    def network(self, spread_rate=1.0, density_modifiers=None,
                air_weight=1.0) -> SpreadNetwork:
        return build_network(self.counties, self.adjacency,
                             air_edges=self.air_routes,
                             spread_rate=spread_rate,
                             density_modifiers=density_modifiers,
                             air_weight=air_weight)


def load_bundle(counties_path, adjacency_path, air_path=None,
                geometry_path=None) -> InputBundle:
    counties = load_counties(counties_path)
    adjacency = load_adjacency(adjacency_path, counties)
    air = load_air_routes(air_path, counties) if air_path else None
    geometry = load_geometry(geometry_path) if geometry_path else None
    return InputBundle(
        counties=tuple(counties),
        adjacency=tuple(adjacency),
        air_routes=tuple(air) if air is not None else None,
        geometry=geometry,
        paths={"counties": str(counties_path),
               "adjacency": str(adjacency_path),
               "air": str(air_path) if air_path else None,
               "geometry": str(geometry_path) if geometry_path else None},
    )


def export_counties(counties, path):
    """Write counties back out in the input schema (round-trip safe)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(COUNTY_HEADER)
        for c in counties:
            writer.writerow([
                c.fips, c.name, c.population_by_group[0],
                c.population_by_group[1], c.population_by_group[2],
                c.density_class, c.total_beds, repr(c.lat), repr(c.lon),
                "true" if c.has_airport else "false",
            ])


def _format(value: float) -> str:
    # Integral values print as integers; everything else as shortest repr.
    if value == int(value):
        return str(int(value))
    return repr(value)


def frames_csv_text(result: SimulationResult) -> str:
    """Render the full frame export; the byte-level determinism contract."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EXPORT_HEADER)
    for day in range(result.horizon):
        for i, fips in enumerate(result.fips):
            row = [str(day), fips]
            row.extend(_format(float(result.arrays[col][day, i]))
                       for col in FRAME_COLUMNS)
            writer.writerow(row)
    return buf.getvalue()


def export_frames_csv(result: SimulationResult, path):
    Path(path).write_text(frames_csv_text(result), encoding="utf-8")


def summary_csv_text(summary: StateSummary) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_HEADER)
    writer.writerow([
        str(summary.peak_sick_day), _format(summary.peak_sick_count),
        str(summary.outbreak_duration), str(summary.total_sick),
        _format(summary.total_deaths), str(summary.total_hospitalizations),
    ])
    return buf.getvalue()


def export_summary_csv(summary: StateSummary, path):
    Path(path).write_text(summary_csv_text(summary), encoding="utf-8")
