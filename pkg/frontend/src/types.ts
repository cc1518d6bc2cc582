/** Payload shapes exchanged with the /v1 gateway. */

export type Metric =
  | "new_sick"
  | "cumulative_sick"
  | "active_sick"
  | "hospital_demand"
  | "beds_filled"
  | "deaths";

export const METRICS: Metric[] = [
  "new_sick", "cumulative_sick", "active_sick",
  "hospital_demand", "beds_filled", "deaths",
];

export type MeasureKind = "media_alerts" | "school_closures" | "shelter_in_place";

export const MEASURE_KINDS: MeasureKind[] = [
  "media_alerts", "school_closures", "shelter_in_place",
];

export interface ActionSpec {
  kind: MeasureKind;
  start_day: number;
  ramp_days?: number;
  reduction?: number;
}

export interface ScenarioInfo {
  id: string;
  parent_id: string | null;
  branch_day: number;
  actions: Required<ActionSpec>[];
  horizon: number;
  status: "created" | "complete";
}

export interface FramePayload {
  day: number;
  metric: Metric;
  values: Record<string, number>;
  normalized: Record<string, number>;
}

export interface SeriesPayload {
  metric: Metric;
  series: Record<string, number[]>;
}

export interface SummaryPayload {
  peak_sick_day: number;
  peak_sick_count: number;
  outbreak_duration: number;
  total_sick: number;
  total_deaths: number;
  total_hospitalizations: number;
}

export interface CountyInfo {
  fips: string;
  name: string;
  population: number;
  density_class: "rural" | "small" | "urban";
  total_beds: number;
  has_airport: boolean;
}

export interface GeoFeature {
  type: "Feature";
  properties: { fips: string; name: string };
  geometry: { type: "Polygon"; coordinates: number[][][] };
}

export interface GeoCollection {
  type: "FeatureCollection";
  features: GeoFeature[];
}
