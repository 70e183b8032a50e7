/** Strict readers for the sweep CSV files.
 *
 * Headers must match the producing CLI's contract exactly; anything else is
 * rejected so a renamed or truncated column can never be plotted silently.
 */

import { readFileSync } from "node:fs";

export const INDEX_HEADER = [
  "omega",
  "re_eps",
  "im_eps",
  "re_mu",
  "im_mu",
  "re_n",
  "im_n",
  "left_handed",
] as const;

export const RATE_HEADER = [
  "omega",
  "gamma_ratio",
  "terms_used",
  "truncation_estimate",
] as const;

export interface Table {
  path: string;
  columns: Map<string, number[]>;
  rows: number;
}

export function parseCsv(path: string, expectedHeader: readonly string[]): Table {
  const text = readFileSync(path, "utf-8");
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length < 2) {
    throw new Error(`${path}: no data rows`);
  }
  const header = lines[0].split(",");
  if (header.length !== expectedHeader.length || header.some((h, i) => h !== expectedHeader[i])) {
    throw new Error(
      `${path}: header mismatch; expected "${expectedHeader.join(",")}" got "${lines[0]}"`,
    );
  }
  const columns = new Map<string, number[]>(expectedHeader.map((name) => [name, []]));
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== expectedHeader.length) {
      throw new Error(`${path}:${i + 1}: expected ${expectedHeader.length} cells`);
    }
    cells.forEach((cell, j) => {
      const value = Number(cell);
      if (Number.isNaN(value) && cell.trim().toLowerCase() !== "nan") {
        throw new Error(`${path}:${i + 1}: non-numeric cell "${cell}"`);
      }
      columns.get(expectedHeader[j])!.push(value);
    });
  }
  return { path, columns, rows: lines.length - 1 };
}

export function column(table: Table, name: string): number[] {
  const values = table.columns.get(name);
  if (!values) {
    throw new Error(`${table.path}: no column "${name}"`);
  }
  return values;
}

/** All tables must share an identical frequency grid (bitwise). */
export function assertSharedGrid(tables: Table[], key = "omega"): void {
  const reference = column(tables[0], key);
  for (const table of tables.slice(1)) {
    const values = column(table, key);
    if (values.length !== reference.length || values.some((v, i) => v !== reference[i])) {
      throw new Error(`${table.path}: ${key} grid differs from ${tables[0].path}`);
    }
  }
}
