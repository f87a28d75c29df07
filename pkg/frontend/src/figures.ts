/**
 * Figure assembly for the three CSV kinds.
 *
 * timeseries: a population panel (four curves, y in [0, 1]) over a
 * negativity panel; extra input files overlay their negativity curves.
 * sweep: one max-negativity-vs-modes curve per scenario.
 * heatmap: fidelity over time x cooperativity (log axis), color in [0, 1].
 * Time axes are labeled in units of L/c throughout.
 */

import { MAP_COLUMNS, SWEEP_COLUMNS, TIMESERIES_COLUMNS, Table, numberColumn, stringColumn } from "./csv.js";
import {
  LinearScale,
  LogScale,
  axes,
  decadeTicks,
  document,
  label,
  polyline,
  px,
  rampColor,
  ticks,
} from "./svg.js";

export type FigureKind = "timeseries" | "sweep" | "heatmap";

export interface FigureSpec {
  kind: FigureKind;
  inputs: string[];
  output: string;
}

export const EXPECTED_COLUMNS: Record<FigureKind, string[]> = {
  timeseries: TIMESERIES_COLUMNS,
  sweep: SWEEP_COLUMNS,
  heatmap: MAP_COLUMNS,
};

const POPULATION_STYLE: [string, string][] = [
  ["p_eee", 'stroke="#2a9d3f" stroke-width="1.6" stroke-dasharray="6 3 1.5 3"'],
  ["p_eeg", 'stroke="#d62728" stroke-width="1.6" stroke-dasharray="6 4"'],
  ["p_egg", 'stroke="#ff9d00" stroke-width="1.6"'],
  ["p_ggg", 'stroke="#1f77b4" stroke-width="1.6"'],
];

const OVERLAY_COLORS = ["#7a1fa2", "#1f77b4", "#d62728", "#2a9d3f"];

export function renderTimeseries(tables: Table[]): string {
  const width = 840;
  const height = 560;
  const left = 70;
  const panelWidth = width - left - 160;
  const first = tables[0] as Table;
  const time = numberColumn(first, "t");
  const tMax = Math.max(...time);
  const x = new LinearScale(0, tMax, left, left + panelWidth);
  const xTicks = ticks(0, tMax, 6);

  const parts: string[] = [];

  // population panel: fixed probability range [0, 1]
  const popTop = 30;
  const popHeight = 230;
  const yPop = new LinearScale(0, 1, popTop + popHeight, popTop);
  parts.push(
    axes(left, popTop, panelWidth, popHeight, x, yPop, {
      xLabel: "t (L/c)",
      yLabel: "population",
      xTicks,
      yTicks: [0, 0.25, 0.5, 0.75, 1],
    }),
  );
  POPULATION_STYLE.forEach(([column, style], index) => {
    parts.push(polyline(time, numberColumn(first, column), x, yPop, style));
    const ly = popTop + 16 + 18 * index;
    parts.push(
      `<line x1="${px(left + panelWidth + 12)}" y1="${px(ly)}" x2="${px(left + panelWidth + 44)}" y2="${px(ly)}" fill="none" ${style}/>`,
    );
    parts.push(
      `<text x="${px(left + panelWidth + 50)}" y="${px(ly + 4)}" font-size="12">${column}</text>`,
    );
  });

  // negativity panel, overlaying every input
  const negTop = popTop + popHeight + 70;
  const negHeight = 180;
  const negMax = Math.max(
    0.05,
    ...tables.map((table) => Math.max(...numberColumn(table, "negativity"))),
  );
  const yNeg = new LinearScale(0, 1.08 * negMax, negTop + negHeight, negTop);
  parts.push(
    axes(left, negTop, panelWidth, negHeight, x, yNeg, {
      xLabel: "t (L/c)",
      yLabel: "tripartite negativity",
      xTicks,
      yTicks: ticks(0, 1.08 * negMax, 4),
    }),
  );
  tables.forEach((table, index) => {
    const color = OVERLAY_COLORS[index % OVERLAY_COLORS.length];
    const style = `stroke="${color}" stroke-width="1.6"${index > 0 ? ' stroke-dasharray="5 3"' : ""}`;
    parts.push(polyline(numberColumn(table, "t"), numberColumn(table, "negativity"), x, yNeg, style));
    const ly = negTop + 16 + 18 * index;
    parts.push(
      `<line x1="${px(left + panelWidth + 12)}" y1="${px(ly)}" x2="${px(left + panelWidth + 44)}" y2="${px(ly)}" fill="none" ${style}/>`,
    );
    parts.push(`<text x="${px(left + panelWidth + 50)}" y="${px(ly + 4)}" font-size="12">${table.name}</text>`);
  });

  return document(width, height, parts.join("\n"));
}

export function renderSweep(table: Table): string {
  const width = 840;
  const height = 440;
  const left = 70;
  const panelWidth = width - left - 220;
  const top = 30;
  const panelHeight = 330;

  const modes = numberColumn(table, "n_modes");
  const values = numberColumn(table, "max_negativity");
  const scenarios = stringColumn(table, "scenario");
  const names = [...new Set(scenarios)];

  const xMax = Math.max(...modes);
  const yMax = Math.max(...values);
  const x = new LinearScale(Math.min(...modes), xMax, left, left + panelWidth);
  const y = new LinearScale(0, 1.08 * yMax, top + panelHeight, top);

  const parts: string[] = [];
  parts.push(
    axes(left, top, panelWidth, panelHeight, x, y, {
      xLabel: "number of modes",
      yLabel: "max tripartite negativity",
      xTicks: ticks(Math.min(...modes), xMax, 8).filter((v) => Number.isInteger(v)),
      yTicks: ticks(0, 1.08 * yMax, 5),
    }),
  );
  names.forEach((name, index) => {
    const xs: number[] = [];
    const ys: number[] = [];
    scenarios.forEach((scenario, row) => {
      if (scenario === name) {
        xs.push(modes[row] as number);
        ys.push(values[row] as number);
      }
    });
    const color = OVERLAY_COLORS[index % OVERLAY_COLORS.length];
    const dash = index % 2 === 1 ? ' stroke-dasharray="5 3"' : "";
    parts.push(polyline(xs, ys, x, y, `stroke="${color}" stroke-width="1.8"${dash}`));
    for (let k = 0; k < xs.length; k += 1) {
      parts.push(
        `<circle cx="${px(x.map(xs[k] as number))}" cy="${px(y.map(ys[k] as number))}" r="2.4" fill="${color}"/>`,
      );
    }
    const ly = top + 16 + 18 * index;
    parts.push(
      `<line x1="${px(left + panelWidth + 12)}" y1="${px(ly)}" x2="${px(left + panelWidth + 44)}" y2="${px(ly)}" stroke="${color}" stroke-width="1.8"${dash} fill="none"/>`,
    );
    parts.push(`<text x="${px(left + panelWidth + 50)}" y="${px(ly + 4)}" font-size="12">${name}</text>`);
  });

  return document(width, height, parts.join("\n"));
}

export function renderHeatmap(table: Table): string {
  const width = 840;
  const height = 480;
  const left = 80;
  const panelWidth = width - left - 170;
  const top = 30;
  const panelHeight = 380;

  const time = numberColumn(table, "t");
  const coop = numberColumn(table, "cooperativity");
  const fidelity = numberColumn(table, "fidelity");

  const tValues = [...new Set(time)].sort((a, b) => a - b);
  const cValues = [...new Set(coop)].sort((a, b) => a - b);
  const tMax = tValues[tValues.length - 1] as number;
  const cMin = cValues[0] as number;
  const cMax = cValues[cValues.length - 1] as number;

  const x = new LinearScale(0, tMax, left, left + panelWidth);
  const y = new LogScale(cMin, cMax, top + panelHeight, top);

  const tIndex = new Map(tValues.map((value, index) => [value, index]));
  const cIndex = new Map(cValues.map((value, index) => [value, index]));

  // cell edges: midpoints between samples (geometric for the log axis)
  const tEdges: number[] = [0];
  for (let k = 1; k < tValues.length; k += 1) {
    tEdges.push(0.5 * ((tValues[k - 1] as number) + (tValues[k] as number)));
  }
  tEdges.push(tMax);
  const cEdges: number[] = [cMin];
  for (let k = 1; k < cValues.length; k += 1) {
    cEdges.push(Math.sqrt((cValues[k - 1] as number) * (cValues[k] as number)));
  }
  cEdges.push(cMax);

  const parts: string[] = [];
  for (let row = 0; row < time.length; row += 1) {
    const it = tIndex.get(time[row] as number) as number;
    const ic = cIndex.get(coop[row] as number) as number;
    const x0 = x.map(tEdges[it] as number);
    const x1 = x.map(tEdges[it + 1] as number);
    const y0 = y.map(cEdges[ic] as number);
    const y1 = y.map(cEdges[ic + 1] as number);
    parts.push(
      `<rect x="${px(x0)}" y="${px(y1)}" width="${px(x1 - x0)}" height="${px(y0 - y1)}" fill="${rampColor(
        fidelity[row] as number,
      )}"/>`,
    );
  }

  parts.push(
    axes(left, top, panelWidth, panelHeight, x, y, {
      xLabel: "t (L/c)",
      yLabel: "cooperativity",
      xTicks: ticks(0, tMax, 6),
      yTicks: decadeTicks(cMin, cMax),
    }),
  );

  // color legend: fidelity scale fixed to [0, 1]
  const legendX = left + panelWidth + 40;
  const legendTop = top + 40;
  const legendHeight = 240;
  const steps = 64;
  for (let k = 0; k < steps; k += 1) {
    const value = 1 - k / (steps - 1);
    const yPos = legendTop + (k * legendHeight) / steps;
    parts.push(
      `<rect x="${px(legendX)}" y="${px(yPos)}" width="18" height="${px(legendHeight / steps + 0.5)}" fill="${rampColor(value)}"/>`,
    );
  }
  parts.push(
    `<rect x="${px(legendX)}" y="${px(legendTop)}" width="18" height="${px(legendHeight)}" fill="none" stroke="#333"/>`,
  );
  for (const value of [0, 0.25, 0.5, 0.75, 1]) {
    const yPos = legendTop + (1 - value) * legendHeight;
    parts.push(
      `<text x="${px(legendX + 24)}" y="${px(yPos + 4)}" font-size="11">${label(value)}</text>`,
    );
  }
  parts.push(
    `<text x="${px(legendX + 9)}" y="${px(legendTop - 12)}" text-anchor="middle" font-size="12">fidelity</text>`,
  );

  return document(width, height, parts.join("\n"));
}
