/** Sequential color ramp for the choropleth and its legend. */

const RAMP: Array<[number, [number, number, number]]> = [
  [0.0, [255, 245, 224]],
  [0.25, [254, 204, 92]],
  [0.5, [253, 141, 60]],
  [0.75, [227, 26, 28]],
  [1.0, [128, 0, 38]],
];

function mix(a: [number, number, number], b: [number, number, number], t: number) {
  return [0, 1, 2].map((i) => Math.round(a[i] + (b[i] - a[i]) * t));
}

/** Map a normalized fraction in [0, 1] to a CSS color. */
export function rampColor(t: number): string {
  const x = Math.min(1, Math.max(0, t));
  for (let i = 1; i < RAMP.length; i += 1) {
    const [hi, colorHi] = RAMP[i];
    const [lo, colorLo] = RAMP[i - 1];
    if (x <= hi) {
      const [r, g, b] = mix(colorLo, colorHi, (x - lo) / (hi - lo));
      return `rgb(${r},${g},${b})`;
    }
  }
  const [r, g, b] = RAMP[RAMP.length - 1][1];
  return `rgb(${r},${g},${b})`;
}

/** Scale values against the frame maximum; an all-zero frame renders the
 * uniform baseline color. */
export function colorScale(maxValue: number): (value: number) => string {
  if (maxValue <= 0) return () => rampColor(0);
  return (value) => rampColor(value / maxValue);
}

export interface LegendStop {
  value: number;
  color: string;
}

export function legendStops(maxValue: number, count = 5): LegendStop[] {
  const stops: LegendStop[] = [];
  for (let i = 0; i < count; i += 1) {
    const t = count === 1 ? 0 : i / (count - 1);
    stops.push({ value: maxValue * t, color: rampColor(maxValue <= 0 ? 0 : t) });
  }
  return stops;
}
