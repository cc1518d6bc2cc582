/** View state and the small pure rules the widgets rely on. */
import type { MeasureKind, Metric, ScenarioInfo } from "./types.js";

/** Scrubber positions clamp into [0, horizon). */
export function clampDay(day: number, horizon: number): number {
  if (!Number.isFinite(day) || day < 0) return 0;
  if (day >= horizon) return horizon - 1;
  return Math.floor(day);
}

/** A measure can be applied at `day` only if it is not already part of the
 * active timeline and the day is not before the scenario's branch point
 * (history is immutable). */
export function canApplyMeasure(
  scenario: ScenarioInfo | undefined,
  kind: MeasureKind,
  day: number,
): boolean {
  if (!scenario) return false;
  if (day < scenario.branch_day) return false;
  return !scenario.actions.some((a) => a.kind === kind);
}

export function boundDay(
  scenario: ScenarioInfo | undefined,
  kind: MeasureKind,
): number | null {
  const action = scenario?.actions.find((a) => a.kind === kind);
  return action ? action.start_day : null;
}

/** Monotone ticket dispenser for latest-wins request handling: responses
 * whose ticket is stale by the time they land are dropped, so scrubbing
 * never paints an old frame over a newer one. */
export class RequestSequencer {
  private latest = 0;

  begin(): number {
    return ++this.latest;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.latest;
  }
}

export interface ViewState {
  scenarioId: string | null;
  horizon: number;
  day: number;
  metric: Metric;
  selected: string[];
}

export function initialState(): ViewState {
  return {
    scenarioId: null,
    horizon: 1,
    day: 0,
    metric: "cumulative_sick",
    selected: [],
  };
}

export function toggleSelection(selected: string[], fips: string): string[] {
  return selected.includes(fips)
    ? selected.filter((f) => f !== fips)
    : [...selected, fips];
}
