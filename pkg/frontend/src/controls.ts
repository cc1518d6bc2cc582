/** Time scroller, metric picker, decision toggles, and the parameter form. */
import { AppController } from "./controller.js";
import { boundDay } from "./state.js";
import { MEASURE_KINDS, METRICS, MeasureKind, Metric } from "./types.js";

export function bindTimeScroller(
  controller: AppController, slider: HTMLInputElement, label: HTMLElement,
): void {
  const update = () => {
    slider.max = String(controller.state.horizon - 1);
    slider.value = String(controller.state.day);
    label.textContent = `day ${controller.state.day}`;
  };
  controller.on("state", update);
  slider.addEventListener("input", () => {
    void controller.scrub(Number(slider.value));
  });
  update();
}

export function bindMetricPicker(
  controller: AppController, select: HTMLSelectElement,
): void {
  select.replaceChildren(...METRICS.map((metric) => {
    const option = document.createElement("option");
    option.value = metric;
    option.textContent = metric.replace(/_/g, " ");
    return option;
  }));
  select.value = controller.state.metric;
  select.addEventListener("change", () => {
    void controller.setMetric(select.value as Metric);
  });
}

const KIND_LABELS: Record<MeasureKind, string> = {
  media_alerts: "Media alerts",
  school_closures: "School closures",
  shelter_in_place: "Shelter in place",
};

export function bindDecisionToggles(
  controller: AppController, root: HTMLElement, status: HTMLElement,
): void {
  const render = () => {
    const active = controller.activeScenario();
    root.replaceChildren(...MEASURE_KINDS.map((kind) => {
      const bound = boundDay(active, kind);
      const button = document.createElement("button");
      button.className = "toggle" + (bound !== null ? " on" : "");
      button.textContent = bound !== null
        ? `${KIND_LABELS[kind]} · day ${bound}`
        : `${KIND_LABELS[kind]} · apply at day ${controller.state.day}`;
      const applicable = controller.canApply(kind);
      button.disabled = !applicable && bound === null;
      if (button.disabled) {
        button.title = "cannot change days before this scenario's branch point";
      }
      button.addEventListener("click", () => {
        if (!applicable) return; // enabled measures stay on for the run
        status.textContent = "branching…";
        void controller.applyDecision(kind).then((child) => {
          status.textContent = child ? `switched to ${child.slice(0, 6)}` : "";
        });
      });
      return button;
    }));
  };
  controller.on("state", render);
  controller.on("tree", render);
  render();
}

export interface ParameterFormValues {
  r0: number;
  spread_rate: number;
  air_enabled: boolean;
  seed_fips: string;
  seed_cases: number;
  horizon: number;
}

export function readParameterForm(form: HTMLFormElement): ParameterFormValues {
  const data = new FormData(form);
  return {
    r0: Number(data.get("r0")),
    spread_rate: Number(data.get("spread_rate")),
    air_enabled: data.get("air_enabled") === "on",
    seed_fips: String(data.get("seed_fips")),
    seed_cases: Number(data.get("seed_cases")),
    horizon: Number(data.get("horizon")),
  };
}

export function scenarioConfigFrom(
  values: ParameterFormValues, template: Record<string, unknown>,
): Record<string, unknown> {
  return {
    ...template,
    r0: values.r0,
    spread_rate: values.spread_rate,
    air_enabled: values.air_enabled,
    horizon: values.horizon,
    seeds: [{ fips: values.seed_fips, day: 0, cases: values.seed_cases }],
  };
}
