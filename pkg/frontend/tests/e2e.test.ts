/** Integration tests against a live gateway (started by global-setup). */
import { readFileSync } from "node:fs";
import { join } from "node:path";
import { beforeAll, describe, expect, inject, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { AppController } from "../src/controller.js";
import { tooltipValue } from "../src/map.js";
import { METRICS, Metric } from "../src/types.js";

const EXPORT_COLUMN: Record<Metric, string> = {
  new_sick: "new_sick",
  cumulative_sick: "cumulative_sick",
  active_sick: "active_sick",
  hospital_demand: "hospital_demand",
  beds_filled: "beds_filled",
  deaths: "cumulative_deaths",
};

let api: ApiClient;
let fixtureConfig: Record<string, unknown>;

beforeAll(() => {
  api = new ApiClient(inject("baseUrl"));
  fixtureConfig = JSON.parse(
    readFileSync(join(inject("fixtureDir"), "config.json"), "utf-8"));
});

function parseExport(text: string): Map<string, number> {
  const [headerLine, ...lines] = text.trim().split("\n");
  const header = headerLine.split(",");
  const table = new Map<string, number>();
  for (const line of lines) {
    const cells = line.split(",");
    const day = cells[0];
    const fips = cells[1];
    header.slice(2).forEach((column, i) => {
      table.set(`${day}:${fips}:${column}`, Number(cells[i + 2]));
    });
  }
  return table;
}

describe("cross-view agreement", () => {
  it("map tooltip = series value = export cell for 20 random triples", async () => {
    const { id } = await api.createScenario(fixtureConfig);
    await api.runScenario(id);
    const exportTable = parseExport(await api.exportCsv(id));
    const horizon = (fixtureConfig.horizon as number) ?? 150;
    const { counties } = await api.counties();

    // Deterministic LCG so failures are reproducible.
    let state = 20260810;
    const next = (bound: number) => {
      state = (state * 1103515245 + 12345) % 2147483648;
      return state % bound;
    };

    for (let i = 0; i < 20; i += 1) {
      const fips = counties[next(counties.length)].fips;
      const day = next(horizon);
      const metric = METRICS[next(METRICS.length)];

      const frame = await api.frame(id, day, metric);
      const tooltip = tooltipValue(frame, fips);
      const series = await api.series(id, [fips], metric);
      const fromSeries = series.series[fips][day];
      const fromExport = exportTable.get(
        `${day}:${fips}:${EXPORT_COLUMN[metric]}`);

      expect(tooltip).toBe(fromSeries);
      expect(tooltip).toBe(fromExport);
    }
  });
});

describe("decision loop", () => {
  it("shelter-in-place at the scrubbed day adds a tree node and diverges", async () => {
    const controller = new AppController(api);
    const rootId = await controller.bootstrap(fixtureConfig);
    await controller.toggleCounty("40109");

    const parentSeries = await api.series(rootId, ["40109"], "active_sick");

    await controller.scrub(15);
    expect(controller.state.day).toBe(15);
    expect(controller.canApply("shelter_in_place")).toBe(true);

    const childId = await controller.applyDecision("shelter_in_place");
    expect(childId).not.toBeNull();

    // The view switched and the new node is in the tree under the root.
    expect(controller.state.scenarioId).toBe(childId);
    const node = controller.scenarios.find((s) => s.id === childId);
    expect(node).toBeDefined();
    expect(node!.parent_id).toBe(rootId);
    expect(node!.branch_day).toBe(15);
    expect(node!.actions.some(
      (a) => a.kind === "shelter_in_place" && a.start_day === 15)).toBe(true);

    // Linked series: identical before day 15, strictly lower after.
    const childSeries = await api.series(childId!, ["40109"], "active_sick");
    const before = parentSeries.series["40109"].slice(0, 15);
    const childBefore = childSeries.series["40109"].slice(0, 15);
    expect(childBefore).toEqual(before);
    const parentAfter = parentSeries.series["40109"].slice(15);
    const childAfter = childSeries.series["40109"].slice(15);
    expect(childAfter.some((v, i) => v < parentAfter[i])).toBe(true);
    expect(childAfter.every((v, i) => v <= parentAfter[i])).toBe(true);
  });

  it("re-toggling an active measure is a no-op (no extra branch)", async () => {
    const controller = new AppController(api);
    await controller.bootstrap(fixtureConfig);
    await controller.scrub(20);
    const first = await controller.applyDecision("shelter_in_place");
    expect(first).not.toBeNull();
    const treeSize = controller.scenarios.length;
    const again = await controller.applyDecision("shelter_in_place");
    expect(again).toBeNull();
    expect(controller.scenarios.length).toBe(treeSize);
  });

  it("applying before the branch point is blocked client-side", async () => {
    const controller = new AppController(api);
    await controller.bootstrap({ ...fixtureConfig, actions: [] });
    await controller.scrub(25);
    await controller.applyDecision("shelter_in_place");
    // Active scenario branched at day 25; scrub earlier and try another kind.
    await controller.scrub(10);
    expect(controller.canApply("school_closures")).toBe(false);
    expect(await controller.applyDecision("school_closures")).toBeNull();
    // Back at/after the branch point the measure is applicable again.
    await controller.scrub(30);
    expect(controller.canApply("school_closures")).toBe(true);
  });

  it("scrub past the horizon clamps to the final day", async () => {
    const controller = new AppController(api);
    await controller.bootstrap(fixtureConfig);
    await controller.scrub(10_000);
    expect(controller.state.day).toBe(controller.state.horizon - 1);
    expect(controller.frame?.day).toBe(controller.state.horizon - 1);
  });

  it("metric switches reuse the cached geometry", async () => {
    let geometryFetches = 0;
    const counting = new Proxy(api, {
      get(target, prop, receiver) {
        if (prop === "geometry") {
          return () => {
            geometryFetches += 1;
            return ApiClient.prototype.geometry.call(target);
          };
        }
        return Reflect.get(target, prop, receiver);
      },
    });
    const controller = new AppController(counting as ApiClient);
    await controller.bootstrap(fixtureConfig);
    await controller.geometry();
    await controller.setMetric("beds_filled");
    await controller.setMetric("deaths");
    await controller.geometry();
    expect(geometryFetches).toBe(1);
  });
});
