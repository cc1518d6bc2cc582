/** Project county GeoJSON into SVG path strings (plain equirectangular). */
import type { GeoCollection } from "./types.js";

export interface CountyPath {
  fips: string;
  name: string;
  d: string;
}

export interface Projection {
  x(lon: number): number;
  y(lat: number): number;
}

export function fitProjection(
  geo: GeoCollection, width: number, height: number, padding = 8,
): Projection {
  let minLon = Infinity, maxLon = -Infinity, minLat = Infinity, maxLat = -Infinity;
  for (const feature of geo.features) {
    for (const [lon, lat] of feature.geometry.coordinates[0]) {
      if (lon < minLon) minLon = lon;
      if (lon > maxLon) maxLon = lon;
      if (lat < minLat) minLat = lat;
      if (lat > maxLat) maxLat = lat;
    }
  }
  const scale = Math.min(
    (width - 2 * padding) / (maxLon - minLon),
    (height - 2 * padding) / (maxLat - minLat),
  );
  return {
    x: (lon) => padding + (lon - minLon) * scale,
    y: (lat) => height - padding - (lat - minLat) * scale,
  };
}

export function countyPaths(
  geo: GeoCollection, width: number, height: number,
): CountyPath[] {
  const proj = fitProjection(geo, width, height);
  return geo.features.map((feature) => {
    const ring = feature.geometry.coordinates[0];
    const parts = ring.map(([lon, lat], i) => {
      const cmd = i === 0 ? "M" : "L";
      return `${cmd}${proj.x(lon).toFixed(1)},${proj.y(lat).toFixed(1)}`;
    });
    return {
      fips: feature.properties.fips,
      name: feature.properties.name,
      d: `${parts.join("")}Z`,
    };
  });
}
