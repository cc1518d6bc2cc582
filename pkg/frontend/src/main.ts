/** Browser entry point: wire the controller to the widgets. */
import { ApiClient } from "./api.js";
import { SeriesPanel } from "./charts.js";
import { AppController, PANEL_METRICS } from "./controller.js";
import {
  bindDecisionToggles, bindMetricPicker, bindTimeScroller,
  readParameterForm, scenarioConfigFrom,
} from "./controls.js";
import { ChoroplethMap } from "./map.js";
import { ScenarioTree } from "./tree.js";

const DEFAULT_ACTIONS = [
  { kind: "media_alerts", start_day: 1 },
  { kind: "school_closures", start_day: 10 },
];

function element<T extends Element>(selector: string): T {
  const found = document.querySelector<T>(selector);
  if (!found) throw new Error(`missing element ${selector}`);
  return found;
}

async function start(): Promise<void> {
  const api = new ApiClient("");
  const controller = new AppController(api);

  const countyNames = new Map<string, string>();
  const { counties } = await api.counties();
  for (const county of counties) countyNames.set(county.fips, county.name);
  const nameOf = (fips: string) => countyNames.get(fips) ?? fips;

  const map = new ChoroplethMap(
    element<SVGSVGElement>("#map"),
    element<HTMLElement>("#legend"),
    element<HTMLElement>("#tooltip"),
    (fips) => void controller.toggleCounty(fips),
  );
  map.render(await controller.geometry());

  const panelTitles = ["Active sick", "Hospital demand", "Deaths"];
  const panels = PANEL_METRICS.map((metric, i) => new SeriesPanel(
    element<SVGSVGElement>(`#panel-${metric}`),
    element<HTMLElement>(`#panel-${metric}-title`),
    panelTitles[i],
    nameOf,
  ));

  const tree = new ScenarioTree(
    element<HTMLElement>("#tree"),
    (id) => void controller.activate(id),
  );

  controller.on("frame", () => {
    if (controller.frame) map.color(controller.frame);
  });
  controller.on("state", () => {
    map.outlineSelection(controller.state.selected);
    PANEL_METRICS.forEach((metric, i) => panels[i].moveCursor(
      controller.state.day, controller.state.horizon));
    element<HTMLElement>("#selection").textContent =
      controller.state.selected.length
        ? controller.state.selected.map(nameOf).join(", ")
        : "none";
  });
  controller.on("series", () => {
    PANEL_METRICS.forEach((metric, i) => panels[i].render(
      controller.panels[metric], controller.state.selected,
      controller.state.day));
  });
  controller.on("summary", () => {
    const s = controller.summary;
    element<HTMLElement>("#summary").textContent = s
      ? `peak day ${s.peak_sick_day} (${Math.round(s.peak_sick_count).toLocaleString()} active) · ` +
        `duration ${s.outbreak_duration} days · ${s.total_sick.toLocaleString()} sick · ` +
        `${Math.round(s.total_deaths).toLocaleString()} deaths`
      : "";
  });
  controller.on("tree", () => tree.render(controller.scenarios,
                                          controller.state.scenarioId));
  controller.on("state", () => tree.render(controller.scenarios,
                                           controller.state.scenarioId));

  bindTimeScroller(controller,
                   element<HTMLInputElement>("#scroller"),
                   element<HTMLElement>("#day-label"));
  bindMetricPicker(controller, element<HTMLSelectElement>("#metric"));
  bindDecisionToggles(controller,
                      element<HTMLElement>("#toggles"),
                      element<HTMLElement>("#toggle-status"));

  const form = element<HTMLFormElement>("#params");
  const seedSelect = element<HTMLSelectElement>("#seed-fips");
  const byPop = [...counties].sort((a, b) => b.population - a.population);
  seedSelect.replaceChildren(...byPop.map((county) => {
    const option = document.createElement("option");
    option.value = county.fips;
    option.textContent = `${county.name} (${county.population.toLocaleString()})`;
    return option;
  }));
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const config = scenarioConfigFrom(readParameterForm(form),
                                      { actions: DEFAULT_ACTIONS });
    element<HTMLElement>("#toggle-status").textContent = "running…";
    void controller.bootstrap(config).then(() => {
      element<HTMLElement>("#toggle-status").textContent = "";
    });
  });

  await controller.bootstrap({
    seeds: [{ fips: byPop[0].fips, day: 0, cases: 500 }],
    actions: DEFAULT_ACTIONS,
  });
}

void start();
