/** Orchestrates the gateway client and the view state.
 *
 * Deliberately DOM-free: widgets subscribe to change events and render
 * whatever the controller last fetched, which also makes the whole decision
 * loop drivable from integration tests against a live gateway.
 */
import { ApiClient } from "./api.js";
import {
  RequestSequencer, ViewState, canApplyMeasure, clampDay, initialState,
  toggleSelection,
} from "./state.js";
import type {
  ActionSpec, FramePayload, GeoCollection, MeasureKind, Metric,
  ScenarioInfo, SeriesPayload, SummaryPayload,
} from "./types.js";

/** Fixed metrics of the three linked panels (sick, hospital, deaths). */
export const PANEL_METRICS: Metric[] = ["active_sick", "hospital_demand", "deaths"];

export type ControllerEvent =
  | "frame" | "series" | "summary" | "tree" | "state" | "error";

type Listener = () => void;

export class AppController {
  readonly state: ViewState = initialState();
  scenarios: ScenarioInfo[] = [];
  frame: FramePayload | null = null;
  panels: Partial<Record<Metric, SeriesPayload>> = {};
  summary: SummaryPayload | null = null;
  lastError: string | null = null;

  private geometryCache: GeoCollection | null = null;
  private frameSequencer = new RequestSequencer();
  private listeners = new Map<ControllerEvent, Set<Listener>>();

  constructor(readonly api: ApiClient) {}

  on(event: ControllerEvent, listener: Listener): void {
    if (!this.listeners.has(event)) this.listeners.set(event, new Set());
    this.listeners.get(event)!.add(listener);
  }

  private emit(event: ControllerEvent): void {
    for (const listener of this.listeners.get(event) ?? []) listener();
  }

  /** Geometry is fetched once and cached; metric switches never re-fetch. */
  async geometry(): Promise<GeoCollection> {
    if (this.geometryCache === null) {
      this.geometryCache = await this.api.geometry();
    }
    return this.geometryCache;
  }

  activeScenario(): ScenarioInfo | undefined {
    return this.scenarios.find((s) => s.id === this.state.scenarioId);
  }

  canApply(kind: MeasureKind): boolean {
    return canApplyMeasure(this.activeScenario(), kind, this.state.day);
  }

  /** Create and run a fresh root scenario, then make it active. */
  async bootstrap(config: Record<string, unknown>): Promise<string> {
    const { id } = await this.api.createScenario(config);
    await this.api.runScenario(id);
    await this.refreshTree();
    await this.activate(id);
    return id;
  }

  async refreshTree(): Promise<void> {
    this.scenarios = (await this.api.listScenarios()).scenarios;
    this.emit("tree");
  }

  async activate(id: string): Promise<void> {
    const info = this.scenarios.find((s) => s.id === id);
    if (!info) throw new Error(`unknown scenario ${id}`);
    this.state.scenarioId = id;
    this.state.horizon = info.horizon;
    this.state.day = clampDay(this.state.day, info.horizon);
    this.emit("state");
    await Promise.all([
      this.refreshFrame(),
      this.refreshPanels(),
      this.refreshSummary(),
    ]);
  }

  /** Move the time scroller; stale frame responses are dropped. */
  async scrub(day: number): Promise<void> {
    this.state.day = clampDay(day, this.state.horizon);
    this.emit("state");
    await this.refreshFrame();
  }

  async setMetric(metric: Metric): Promise<void> {
    this.state.metric = metric;
    this.emit("state");
    await this.refreshFrame();
  }

  async toggleCounty(fips: string): Promise<void> {
    this.state.selected = toggleSelection(this.state.selected, fips);
    this.emit("state");
    await this.refreshPanels();
  }

  async refreshFrame(): Promise<void> {
    const { scenarioId, day, metric } = this.state;
    if (!scenarioId) return;
    const ticket = this.frameSequencer.begin();
    const frame = await this.api.frame(scenarioId, day, metric);
    if (!this.frameSequencer.isCurrent(ticket)) return; // stale response
    this.frame = frame;
    this.emit("frame");
  }

  async refreshPanels(): Promise<void> {
    const { scenarioId, selected } = this.state;
    if (!scenarioId) return;
    if (selected.length === 0) {
      this.panels = {};
      this.emit("series");
      return;
    }
    const fetched = await Promise.all(PANEL_METRICS.map(
      (metric) => this.api.series(scenarioId, selected, metric)));
    this.panels = Object.fromEntries(
      PANEL_METRICS.map((metric, i) => [metric, fetched[i]]));
    this.emit("series");
  }

  async refreshSummary(): Promise<void> {
    if (!this.state.scenarioId) return;
    this.summary = await this.api.summary(this.state.scenarioId);
    this.emit("summary");
  }

  /** Enable a decision measure at the scrubbed day: always branches (the
   * decision history stays complete), runs the child, and switches to it.
   * Returns the child id, or null when the toggle is a no-op. */
  async applyDecision(
    kind: MeasureKind,
    params: Partial<Pick<ActionSpec, "ramp_days" | "reduction">> = {},
  ): Promise<string | null> {
    const active = this.activeScenario();
    if (!active || !canApplyMeasure(active, kind, this.state.day)) {
      return null;
    }
    const child = await this.api.branchScenario(active.id, this.state.day, [
      { kind, start_day: this.state.day, ...params },
    ]);
    await this.api.runScenario(child.id);
    await this.refreshTree();
    await this.activate(child.id);
    return child.id;
  }
}
