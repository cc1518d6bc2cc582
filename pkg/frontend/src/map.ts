/** Choropleth map: one SVG path per county, colored by the population-
 * normalized metric; selected counties get an outline. */
import { colorScale, legendStops } from "./color.js";
import { countyPaths } from "./geometry.js";
import type { FramePayload, GeoCollection } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

/** The number the map tooltip shows for a county: the raw frame value.
 * Kept as a pure function so cross-view agreement is testable. */
export function tooltipValue(frame: FramePayload, fips: string): number {
  return frame.values[fips];
}

export function tooltipText(
  frame: FramePayload, fips: string, name: string,
): string {
  const value = tooltipValue(frame, fips);
  const rounded = Number.isInteger(value) ? value : value.toFixed(1);
  return `${name} — ${frame.metric.replace(/_/g, " ")} on day ${frame.day}: ${rounded}`;
}

export class ChoroplethMap {
  private paths = new Map<string, SVGPathElement>();
  private names = new Map<string, string>();
  private frame: FramePayload | null = null;

  constructor(
    private svg: SVGSVGElement,
    private legendEl: HTMLElement,
    private tooltipEl: HTMLElement,
    private onSelect: (fips: string) => void,
  ) {}

  render(geo: GeoCollection): void {
    const width = this.svg.viewBox.baseVal.width || 640;
    const height = this.svg.viewBox.baseVal.height || 420;
    this.svg.replaceChildren();
    for (const county of countyPaths(geo, width, height)) {
      const path = document.createElementNS(SVG_NS, "path");
      path.setAttribute("d", county.d);
      path.setAttribute("class", "county");
      path.addEventListener("click", () => this.onSelect(county.fips));
      path.addEventListener("mousemove", (event) => this.showTooltip(event, county.fips));
      path.addEventListener("mouseleave", () => this.hideTooltip());
      this.svg.appendChild(path);
      this.paths.set(county.fips, path);
      this.names.set(county.fips, county.name);
    }
  }

  /** Recolor from a frame; geometry is untouched. */
  color(frame: FramePayload): void {
    this.frame = frame;
    const max = Math.max(0, ...Object.values(frame.normalized));
    const scale = colorScale(max);
    for (const [fips, path] of this.paths) {
      path.style.fill = scale(frame.normalized[fips] ?? 0);
    }
    this.legendEl.replaceChildren(...legendStops(max).map((stop) => {
      const item = document.createElement("span");
      item.className = "legend-item";
      const swatch = document.createElement("i");
      swatch.style.background = stop.color;
      item.append(swatch, ` ${(stop.value * 100).toFixed(2)}%`);
      return item;
    }));
  }

  outlineSelection(selected: string[]): void {
    for (const [fips, path] of this.paths) {
      path.classList.toggle("selected", selected.includes(fips));
    }
  }

  private showTooltip(event: MouseEvent, fips: string): void {
    if (!this.frame) return;
    this.tooltipEl.textContent =
      tooltipText(this.frame, fips, this.names.get(fips) ?? fips);
    this.tooltipEl.style.display = "block";
    this.tooltipEl.style.left = `${event.pageX + 12}px`;
    this.tooltipEl.style.top = `${event.pageY + 12}px`;
  }

  private hideTooltip(): void {
    this.tooltipEl.style.display = "none";
  }
}
