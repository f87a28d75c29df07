/**
 * Minimal deterministic SVG building blocks: number formatting, linear and
 * logarithmic scales, tick generation, axes, and a fixed color ramp.
 *
 * Everything is plain string assembly; no timestamps, no randomness, so a
 * given input always produces byte-identical output.
 */

/** Coordinate formatting: two decimals, trailing zeros stripped. */
export function px(value: number): string {
  const rounded = value.toFixed(2);
  return rounded.replace(/\.?0+$/, "") || "0";
}

/** Tick-label formatting: short, stable, covers 0.005 .. 1000 cleanly. */
export function label(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1000 || magnitude < 0.001) {
    return value.toExponential(1).replace("e+", "e").replace("e-0", "e-");
  }
  const text = value.toPrecision(4);
  return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}

export class LinearScale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly r0: number,
    readonly r1: number,
  ) {}

  map(value: number): number {
    const span = this.d1 - this.d0;
    const fraction = span === 0 ? 0 : (value - this.d0) / span;
    return this.r0 + fraction * (this.r1 - this.r0);
  }
}

export class LogScale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly r0: number,
    readonly r1: number,
  ) {
    if (d0 <= 0 || d1 <= 0) {
      throw new Error("log scale requires positive domain");
    }
  }

  map(value: number): number {
    const span = Math.log(this.d1) - Math.log(this.d0);
    const fraction = span === 0 ? 0 : (Math.log(value) - Math.log(this.d0)) / span;
    return this.r0 + fraction * (this.r1 - this.r0);
  }
}

/** Round-valued ticks covering [min, max] with a step of 1/2/5 x 10^k. */
export function ticks(min: number, max: number, count = 6): number[] {
  if (max <= min) return [min];
  const rawStep = (max - min) / Math.max(1, count - 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = power;
  for (const multiplier of [1, 2, 2.5, 5, 10]) {
    step = multiplier * power;
    if (step >= rawStep) break;
  }
  const out: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

/** Decade ticks for a log axis. */
export function decadeTicks(min: number, max: number): number[] {
  const out: number[] = [];
  for (let k = Math.ceil(Math.log10(min) - 1e-9); Math.pow(10, k) <= max * (1 + 1e-9); k += 1) {
    const value = Math.pow(10, k);
    if (value >= min * (1 - 1e-9)) out.push(value);
  }
  return out;
}

/** Fixed five-anchor color ramp for values in [0, 1] (dark blue to yellow). */
export function rampColor(value: number): string {
  const anchors: [number, number, number][] = [
    [13, 8, 135],
    [126, 3, 168],
    [203, 70, 121],
    [248, 148, 65],
    [240, 249, 33],
  ];
  const clamped = Math.min(1, Math.max(0, value));
  const slot = Math.min(anchors.length - 2, Math.floor(clamped * (anchors.length - 1)));
  const within = clamped * (anchors.length - 1) - slot;
  const lo = anchors[slot] as [number, number, number];
  const hi = anchors[slot + 1] as [number, number, number];
  const mix = (a: number, b: number) => Math.round(a + (b - a) * within);
  return `rgb(${mix(lo[0], hi[0])},${mix(lo[1], hi[1])},${mix(lo[2], hi[2])})`;
}

export function polyline(
  xs: number[],
  ys: number[],
  xScale: LinearScale,
  yScale: LinearScale | LogScale,
  style: string,
): string {
  const points = xs
    .map((x, index) => `${px(xScale.map(x))},${px(yScale.map(ys[index] as number))}`)
    .join(" ");
  return `<polyline fill="none" ${style} points="${points}"/>`;
}

export interface AxisOptions {
  xLabel: string;
  yLabel: string;
  xTicks: number[];
  yTicks: number[];
  yFormatter?: (value: number) => string;
}

/** Axis lines, tick marks, tick labels, and axis titles for one plot panel. */
export function axes(
  left: number,
  top: number,
  width: number,
  height: number,
  xScale: LinearScale,
  yScale: LinearScale | LogScale,
  options: AxisOptions,
): string {
  const parts: string[] = [];
  const bottom = top + height;
  const right = left + width;
  const fmt = options.yFormatter ?? label;
  parts.push(
    `<rect x="${px(left)}" y="${px(top)}" width="${px(width)}" height="${px(height)}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const tick of options.xTicks) {
    const x = xScale.map(tick);
    parts.push(`<line x1="${px(x)}" y1="${px(bottom)}" x2="${px(x)}" y2="${px(bottom + 5)}" stroke="#333"/>`);
    parts.push(
      `<text x="${px(x)}" y="${px(bottom + 18)}" text-anchor="middle" font-size="11">${label(tick)}</text>`,
    );
  }
  for (const tick of options.yTicks) {
    const y = yScale.map(tick);
    parts.push(`<line x1="${px(left - 5)}" y1="${px(y)}" x2="${px(left)}" y2="${px(y)}" stroke="#333"/>`);
    parts.push(
      `<text x="${px(left - 8)}" y="${px(y + 4)}" text-anchor="end" font-size="11">${fmt(tick)}</text>`,
    );
  }
  parts.push(
    `<text x="${px(left + width / 2)}" y="${px(bottom + 34)}" text-anchor="middle" font-size="12">${options.xLabel}</text>`,
  );
  parts.push(
    `<text x="${px(left - 44)}" y="${px(top + height / 2)}" text-anchor="middle" font-size="12" transform="rotate(-90 ${px(left - 44)} ${px(top + height / 2)})">${options.yLabel}</text>`,
  );
  return parts.join("\n");
}

export function document(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `font-family="Helvetica, Arial, sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}
