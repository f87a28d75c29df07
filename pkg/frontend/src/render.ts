#!/usr/bin/env node
/**
 * CSV-to-SVG renderer for ringqed outputs.
 *
 * Usage:
 *   render --kind timeseries --in out/fig2a.csv --out out/fig2a.svg
 *   render --kind timeseries --in a.csv --in b.csv --out compare.svg
 *   render --kind sweep      --in out/fig4.csv  --out out/fig4.svg
 *   render --kind heatmap    --in out/fig5b.csv --out out/fig5b.svg
 *
 * Rendering is read-only over the CSVs and fully deterministic: the same
 * inputs produce byte-identical SVG.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { SchemaError, Table, parseCsv } from "./csv.js";
import {
  EXPECTED_COLUMNS,
  FigureKind,
  FigureSpec,
  renderHeatmap,
  renderSweep,
  renderTimeseries,
} from "./figures.js";

export function parseArgs(argv: string[]): FigureSpec {
  let kind: string | undefined;
  const inputs: string[] = [];
  let output: string | undefined;
  for (let k = 0; k < argv.length; k += 1) {
    const flag = argv[k];
    const value = argv[k + 1];
    if (flag === "--kind" || flag === "--in" || flag === "--out") {
      if (value === undefined) throw new Error(`${flag} needs a value`);
      if (flag === "--kind") kind = value;
      if (flag === "--in") inputs.push(value);
      if (flag === "--out") output = value;
      k += 1;
    } else {
      throw new Error(`unknown argument ${flag}`);
    }
  }
  if (!kind || !(kind in EXPECTED_COLUMNS)) {
    throw new Error(`--kind must be one of: ${Object.keys(EXPECTED_COLUMNS).join(", ")}`);
  }
  if (inputs.length === 0) throw new Error("at least one --in CSV is required");
  if (!output) throw new Error("--out is required");
  if (kind !== "timeseries" && inputs.length > 1) {
    throw new Error(`--kind ${kind} takes exactly one --in file`);
  }
  return { kind: kind as FigureKind, inputs, output };
}

export function render(spec: FigureSpec): string {
  const tables: Table[] = spec.inputs.map((path) =>
    parseCsv(readFileSync(path, "utf-8"), EXPECTED_COLUMNS[spec.kind], basename(path, ".csv")),
  );
  let svg: string;
  switch (spec.kind) {
    case "timeseries":
      svg = renderTimeseries(tables);
      break;
    case "sweep":
      svg = renderSweep(tables[0] as Table);
      break;
    case "heatmap":
      svg = renderHeatmap(tables[0] as Table);
      break;
  }
  writeFileSync(spec.output, svg);
  return spec.output;
}

export function main(argv: string[]): number {
  try {
    const spec = parseArgs(argv);
    const written = render(spec);
    console.log(`wrote ${written}`);
    return 0;
  } catch (error) {
    if (error instanceof SchemaError || error instanceof Error) {
      console.error(`error: ${error.message}`);
      return 1;
    }
    throw error;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("render.js") || entry.endsWith("render.ts")) {
  process.exit(main(process.argv.slice(2)));
}
