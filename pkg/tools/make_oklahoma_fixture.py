#!/usr/bin/env python3
"""Regenerate the shipped Oklahoma fixture (counties/adjacency/air/geometry).

Dev-only script; needs scipy and shapely in addition to the package deps.
County centroids and populations are approximate; adjacency is the Delaunay
triangulation of the centroids with overlong edges pruned, which yields a
connected, planar, geographically sensible graph. Geometry is the Voronoi
tessellation of the centroids clipped to a stylized state outline.

Usage: python3 tools/make_oklahoma_fixture.py
"""
import csv
import json
from pathlib import Path

import numpy as np
from scipy.spatial import Delaunay, Voronoi
from shapely.geometry import box, Polygon
from shapely.ops import unary_union

OUT = Path(__file__).resolve().parent.parent / "src" / "episim" / "data" / "oklahoma"

# fips, name, population, density_class, beds (None -> from population),
# lat, lon, has_airport
COUNTIES = [
    ("40001", "Adair", 22100, "rural", None, 35.88, -94.66, False),
    ("40003", "Alfalfa", 5700, "rural", None, 36.73, -98.32, False),
    ("40005", "Atoka", 13800, "rural", None, 34.37, -96.04, False),
    ("40007", "Beaver", 5300, "rural", None, 36.75, -100.48, False),
    ("40009", "Beckham", 22100, "small", 120, 35.27, -99.68, False),
    ("40011", "Blaine", 9400, "rural", None, 35.88, -98.43, False),
    ("40013", "Bryan", 47000, "small", 170, 33.96, -96.26, False),
    ("40015", "Caddo", 29000, "rural", 60, 35.17, -98.38, False),
    ("40017", "Canadian", 148300, "small", 120, 35.54, -97.98, False),
    ("40019", "Carter", 48100, "small", 180, 34.25, -97.28, False),
    ("40021", "Cherokee", 48700, "small", 140, 35.90, -94.99, False),
    ("40023", "Choctaw", 14700, "rural", None, 34.03, -95.55, False),
    ("40025", "Cimarron", 2100, "rural", None, 36.75, -102.52, False),
    ("40027", "Cleveland", 284000, "urban", 560, 35.20, -97.33, False),
    ("40029", "Coal", 5500, "rural", None, 34.59, -96.30, False),
    ("40031", "Comanche", 121100, "small", 500, 34.66, -98.47, True),
    ("40033", "Cotton", 5700, "rural", None, 34.29, -98.37, False),
    ("40035", "Craig", 14100, "rural", None, 36.78, -95.21, False),
    ("40037", "Creek", 71500, "small", 120, 35.90, -96.37, False),
    ("40039", "Custer", 29000, "small", 90, 35.64, -99.00, False),
    ("40041", "Delaware", 43000, "small", 60, 36.41, -94.80, False),
    ("40043", "Dewey", 4900, "rural", None, 35.99, -99.01, False),
    ("40045", "Ellis", 3900, "rural", None, 36.22, -99.75, False),
    ("40047", "Garfield", 61100, "small", 330, 36.38, -97.78, False),
    ("40049", "Garvin", 27700, "rural", 90, 34.70, -97.31, False),
    ("40051", "Grady", 55800, "small", 100, 35.02, -97.88, False),
    ("40053", "Grant", 4300, "rural", None, 36.80, -97.62, False),
    ("40055", "Greer", 5700, "rural", None, 34.94, -99.56, False),
    ("40057", "Harmon", 2600, "rural", None, 34.74, -99.85, False),
    ("40059", "Harper", 3800, "rural", None, 36.79, -99.67, False),
    ("40061", "Haskell", 12600, "rural", None, 35.22, -95.12, False),
    ("40063", "Hughes", 13300, "rural", None, 35.05, -96.25, False),
    ("40065", "Jackson", 24500, "small", 110, 34.59, -99.41, False),
    ("40067", "Jefferson", 6000, "rural", None, 34.11, -97.83, False),
    ("40069", "Johnston", 11100, "rural", None, 34.32, -96.66, False),
    ("40071", "Kay", 43500, "small", 150, 36.82, -97.14, False),
    ("40073", "Kingfisher", 15600, "rural", None, 35.95, -97.94, False),
    ("40075", "Kiowa", 8700, "rural", None, 34.92, -98.98, False),
    ("40077", "Latimer", 10000, "rural", None, 34.87, -95.25, False),
    ("40079", "Le Flore", 49800, "small", 120, 34.90, -94.70, False),
    ("40081", "Lincoln", 34900, "rural", 40, 35.70, -96.88, False),
    ("40083", "Logan", 48000, "small", 60, 35.92, -97.44, False),
    ("40085", "Love", 10200, "rural", None, 33.95, -97.24, False),
    ("40087", "McClain", 40500, "small", 40, 35.01, -97.44, False),
    ("40089", "McCurtain", 32800, "rural", 80, 34.12, -94.77, False),
    ("40091", "McIntosh", 19600, "rural", None, 35.37, -95.66, False),
    ("40093", "Major", 7600, "rural", None, 36.31, -98.54, False),
    ("40095", "Marshall", 16900, "rural", 30, 34.02, -96.77, False),
    ("40097", "Mayes", 41100, "small", 80, 36.30, -95.23, False),
    ("40099", "Murray", 14000, "rural", None, 34.48, -97.07, False),
    ("40101", "Muskogee", 67900, "small", 400, 35.62, -95.38, False),
    ("40103", "Noble", 11100, "rural", None, 36.39, -97.23, False),
    ("40105", "Nowata", 10100, "rural", None, 36.80, -95.61, False),
    ("40107", "Okfuskee", 11900, "rural", None, 35.47, -96.32, False),
    ("40109", "Oklahoma", 797400, "urban", 5600, 35.55, -97.40, True),
    ("40111", "Okmulgee", 38200, "small", 70, 35.65, -95.96, False),
    ("40113", "Osage", 46900, "rural", 40, 36.60, -96.40, False),
    ("40115", "Ottawa", 31100, "small", 90, 36.84, -94.81, False),
    ("40117", "Pawnee", 16300, "rural", None, 36.32, -96.70, False),
    ("40119", "Payne", 81900, "small", 190, 36.08, -96.98, True),
    ("40121", "Pittsburg", 43700, "small", 170, 34.92, -95.75, False),
    ("40123", "Pontotoc", 38300, "small", 190, 34.73, -96.68, False),
    ("40125", "Pottawatomie", 72500, "small", 180, 35.20, -96.95, False),
    ("40127", "Pushmataha", 11000, "rural", None, 34.42, -95.37, False),
    ("40129", "Roger Mills", 3600, "rural", None, 35.69, -99.70, False),
    ("40131", "Rogers", 92400, "small", 90, 36.37, -95.60, False),
    ("40133", "Seminole", 24300, "rural", 50, 35.16, -96.62, False),
    ("40135", "Sequoyah", 41600, "small", 50, 35.50, -94.75, False),
    ("40137", "Stephens", 43100, "small", 140, 34.49, -97.85, False),
    ("40139", "Texas", 19900, "rural", 40, 36.75, -101.48, False),
    ("40141", "Tillman", 7200, "rural", None, 34.37, -98.92, False),
    ("40143", "Tulsa", 651500, "urban", 4100, 36.12, -95.94, True),
    ("40145", "Wagoner", 81300, "small", 70, 35.96, -95.52, False),
    ("40147", "Washington", 51500, "small", 160, 36.72, -95.90, False),
    ("40149", "Washita", 10900, "rural", None, 35.29, -98.99, False),
    ("40151", "Woods", 8800, "rural", None, 36.77, -98.87, False),
    ("40153", "Woodward", 20200, "small", 80, 36.42, -99.26, False),
]

AGE_SHARES = {  # (0-17, 65+); remainder is 18-64
    "rural": (0.23, 0.20),
    "small": (0.24, 0.17),
    "urban": (0.25, 0.13),
}

AIRPORTS = [fips for fips, *_rest in COUNTIES if _rest[-1]]

MAX_EDGE_DEGREES = 1.8

# Stylized state outline: main body plus the panhandle.
OUTLINE = unary_union([
    box(-103.0, 36.5, -100.0, 37.0),
    box(-100.0, 33.62, -94.43, 37.0),
])


def split_population(total, density):
    young_share, old_share = AGE_SHARES[density]
    young = round(total * young_share)
    old = round(total * old_share)
    return young, total - young - old, old


def beds_for(pop, override):
    if override is not None:
        return override
    return max(10, int(round(pop * 0.0015 / 5) * 5))


def build_edges(points):
    tri = Delaunay(points)
    edges = set()
    for simplex in tri.simplices:
        for k in range(3):
            a, b = sorted((simplex[k], simplex[(k + 1) % 3]))
            if np.linalg.norm(points[a] - points[b]) <= MAX_EDGE_DEGREES:
                edges.add((a, b))
    return sorted(edges)


def check_connected(n, edges):
    neighbors = {i: set() for i in range(n)}
    for a, b in edges:
        neighbors[a].add(b)
        neighbors[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for nxt in neighbors[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise SystemExit(f"adjacency graph is disconnected; unreachable: {missing}")


def voronoi_cells(points):
    """Finite Voronoi cells via mirrored ghost points, clipped to the state."""
    minx, miny, maxx, maxy = OUTLINE.bounds
    pad = 3.0
    ghosts = []
    for x, y in points:
        ghosts.extend([(2 * (minx - pad) - x, y), (2 * (maxx + pad) - x, y),
                       (x, 2 * (miny - pad) - y), (x, 2 * (maxy + pad) - y)])
    vor = Voronoi(np.vstack([points, np.array(ghosts)]))
    cells = []
    for i in range(len(points)):
        region = vor.regions[vor.point_region[i]]
        polygon = Polygon(vor.vertices[region]).intersection(OUTLINE)
        if polygon.is_empty:
            raise SystemExit(f"empty voronoi cell for point {i}")
        if polygon.geom_type == "MultiPolygon":
            polygon = max(polygon.geoms, key=lambda p: p.area)
        cells.append(polygon)
    return cells


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "counties.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["fips", "name", "pop_0_17", "pop_18_64", "pop_65plus",
                         "density_class", "total_beds", "lat", "lon",
                         "has_airport"])
        for fips, name, pop, density, beds, lat, lon, airport in COUNTIES:
            young, mid, old = split_population(pop, density)
            writer.writerow([fips, name, young, mid, old, density,
                             beds_for(pop, beds), f"{lat:.2f}", f"{lon:.2f}",
                             "true" if airport else "false"])

    points = np.array([(lon, lat) for _, _, _, _, _, lat, lon, _ in COUNTIES])
    edges = build_edges(points)
    check_connected(len(COUNTIES), edges)
    with open(OUT / "adjacency.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["fips_a", "fips_b"])
        for a, b in edges:
            writer.writerow([COUNTIES[a][0], COUNTIES[b][0]])
    print(f"{len(edges)} adjacency edges")

    with open(OUT / "air_routes.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["fips_a", "fips_b"])
        for i, a in enumerate(AIRPORTS):
            for b in AIRPORTS[i + 1:]:
                writer.writerow([a, b])

    cells = voronoi_cells(points)
    features = []
    for (fips, name, *_), cell in zip(COUNTIES, cells):
        coords = [[round(x, 4), round(y, 4)]
                  for x, y in cell.exterior.coords]
        features.append({
            "type": "Feature",
            "properties": {"fips": fips, "name": name},
            "geometry": {"type": "Polygon", "coordinates": [coords]},
        })
    geojson = {"type": "FeatureCollection", "features": features}
    (OUT / "geometry.json").write_text(json.dumps(geojson), encoding="utf-8")
    print(f"wrote fixture to {OUT}")


if __name__ == "__main__":
    main()
