/**
 * CSV reading with strict schema checks.
 *
 * Each figure kind expects an exact header; a mismatch reports the missing
 * (or unexpected) column names so a wrong file is caught before any drawing
 * happens.
 */

export interface Table {
  /** source name used in error messages */
  name: string;
  header: string[];
  rows: string[][];
}

export const TIMESERIES_COLUMNS = [
  "t",
  "p_eee",
  "p_eeg",
  "p_egg",
  "p_ggg",
  "norm",
  "negativity",
  "fidelity",
];
export const SWEEP_COLUMNS = ["n_modes", "scenario", "max_negativity"];
export const MAP_COLUMNS = ["t", "cooperativity", "fidelity"];

export class SchemaError extends Error {}

export function parseCsv(text: string, expected: string[], name: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length < 2) {
    throw new SchemaError(`${name}: no data rows`);
  }
  const header = (lines[0] as string).split(",").map((cell) => cell.trim());
  const missing = expected.filter((column) => !header.includes(column));
  if (missing.length > 0) {
    throw new SchemaError(
      `${name}: missing column${missing.length > 1 ? "s" : ""} ${missing
        .map((column) => `"${column}"`)
        .join(", ")} (expected header: ${expected.join(",")})`,
    );
  }
  const unexpected = header.filter((column) => !expected.includes(column));
  if (unexpected.length > 0) {
    throw new SchemaError(
      `${name}: unexpected column${unexpected.length > 1 ? "s" : ""} ${unexpected
        .map((column) => `"${column}"`)
        .join(", ")}`,
    );
  }
  const rows: string[][] = [];
  for (let index = 1; index < lines.length; index += 1) {
    const cells = (lines[index] as string).split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(
        `${name}: row ${index + 1} has ${cells.length} cells, expected ${header.length}`,
      );
    }
    rows.push(cells);
  }
  return { name, header, rows };
}

export function numberColumn(table: Table, column: string): number[] {
  const at = table.header.indexOf(column);
  if (at < 0) {
    throw new SchemaError(`${table.name}: missing column "${column}"`);
  }
  return table.rows.map((row, index) => {
    const value = Number(row[at]);
    if (!Number.isFinite(value)) {
      throw new SchemaError(
        `${table.name}: row ${index + 2}, column "${column}": not a number (${row[at]})`,
      );
    }
    return value;
  });
}

export function stringColumn(table: Table, column: string): string[] {
  const at = table.header.indexOf(column);
  if (at < 0) {
    throw new SchemaError(`${table.name}: missing column "${column}"`);
  }
  return table.rows.map((row) => row[at] as string);
}
