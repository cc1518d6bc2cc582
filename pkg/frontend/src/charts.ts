/** Linked time-series panels: one line per selected county, shared cursor. */
import type { SeriesPayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export const LINE_COLORS = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f",
];

/** Value under the cursor, as shown in the panel readout. */
export function seriesPointAt(values: number[], day: number): number {
  return values[Math.min(values.length - 1, Math.max(0, day))];
}

export class SeriesPanel {
  private cursor: SVGLineElement | null = null;
  private width = 300;
  private height = 90;

  constructor(
    private svg: SVGSVGElement,
    private titleEl: HTMLElement,
    private title: string,
    private names: (fips: string) => string,
  ) {}

  render(payload: SeriesPayload | undefined, selected: string[], day: number): void {
    this.svg.replaceChildren();
    this.cursor = null;
    if (!payload || selected.length === 0) {
      this.titleEl.textContent = `${this.title} — select counties on the map`;
      return;
    }
    const entries = selected
      .filter((fips) => payload.series[fips])
      .map((fips) => [fips, payload.series[fips]] as const);
    const horizon = entries.length ? entries[0][1].length : 0;
    const max = Math.max(1e-9, ...entries.flatMap(([, v]) => v));
    const x = (d: number) => (d / Math.max(1, horizon - 1)) * this.width;
    const y = (v: number) => this.height - (v / max) * (this.height - 6) - 3;

    entries.forEach(([fips, values], i) => {
      const line = document.createElementNS(SVG_NS, "polyline");
      line.setAttribute("points",
        values.map((v, d) => `${x(d).toFixed(1)},${y(v).toFixed(1)}`).join(" "));
      line.setAttribute("fill", "none");
      line.setAttribute("stroke", LINE_COLORS[i % LINE_COLORS.length]);
      line.setAttribute("stroke-width", "1.5");
      this.svg.appendChild(line);
    });

    this.cursor = document.createElementNS(SVG_NS, "line");
    this.cursor.setAttribute("class", "cursor");
    this.cursor.setAttribute("y1", "0");
    this.cursor.setAttribute("y2", String(this.height));
    this.svg.appendChild(this.cursor);
    this.moveCursor(day, horizon);

    const readout = entries.map(([fips, values], i) =>
      `${this.names(fips)}: ${Math.round(seriesPointAt(values, day))}`).join("   ");
    this.titleEl.textContent = `${this.title} — ${readout}`;
  }

  moveCursor(day: number, horizon: number): void {
    if (!this.cursor) return;
    const x = (day / Math.max(1, horizon - 1)) * this.width;
    this.cursor.setAttribute("x1", x.toFixed(1));
    this.cursor.setAttribute("x2", x.toFixed(1));
  }
}
