/** Figure assembly: CSV tables in, one SVG file out.
 *
 * Rendering is a pure transform of the CSV content; no physics is
 * recomputed here.
 */

import { writeFileSync } from "node:fs";

import { INDEX_HEADER, RATE_HEADER, Table, assertSharedGrid, column, parseCsv } from "./csv.js";
import { Panel, renderFigure } from "./plot.js";

/** Two panels (Re n, Im n) from a triplet of index sweeps. */
export function renderIndexFigure(csvPaths: string[], outPath: string): void {
  if (csvPaths.length !== 3) {
    throw new Error(`index figure needs exactly 3 CSV files, got ${csvPaths.length}`);
  }
  const tables = csvPaths.map((p) => parseCsv(p, INDEX_HEADER));
  assertSharedGrid(tables);
  const omega = column(tables[0], "omega");
  const panelA: Panel = {
    curves: tables.map((t) => ({ x: omega, y: column(t, "re_n") })),
    title: "(a)",
    xLabel: "ω/ωTm",
    yLabel: "Re n",
  };
  const panelB: Panel = {
    curves: tables.map((t) => ({ x: omega, y: column(t, "im_n") })),
    title: "(b)",
    xLabel: "ω/ωTm",
    yLabel: "Im n",
  };
  writeFileSync(outPath, renderFigure([panelA, panelB]));
}

/** Decay-rate panels; each inner array of tables becomes one panel. */
export function renderRateFigure(
  csvGroups: string[][],
  outPath: string,
  logY = false,
): void {
  if (csvGroups.length === 0 || csvGroups.some((g) => g.length === 0)) {
    throw new Error("rate figure needs at least one non-empty CSV group");
  }
  const labels = ["(a)", "(b)", "(c)", "(d)", "(e)", "(f)"];
  const panels: Panel[] = csvGroups.map((group, i) => {
    const tables: Table[] = group.map((p) => parseCsv(p, RATE_HEADER));
    return {
      curves: tables.map((t) => ({ x: column(t, "omega"), y: column(t, "gamma_ratio") })),
      title: csvGroups.length > 1 ? labels[i] ?? `(${i + 1})` : undefined,
      xLabel: "ω/ωTm",
      yLabel: "Γ/Γ₀",
      logY,
    };
  });
  writeFileSync(outPath, renderFigure(panels));
}

export interface RateCliOptions {
  csvPaths: string[];
  outPath: string;
  logY: boolean;
  perPanel: number;
}

/** Shared argv handling for the per-family rate scripts. */
export function parseRateArgs(argv: string[], defaultPerPanel: number): RateCliOptions {
  const csvPaths: string[] = [];
  let outPath = "figure.svg";
  let logY = false;
  let perPanel = defaultPerPanel;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--log-y") {
      logY = true;
    } else if (arg === "-o" || arg === "--out") {
      outPath = argv[++i];
      if (outPath === undefined) throw new Error(`${arg} needs a value`);
    } else if (arg === "--per-panel") {
      perPanel = Number(argv[++i]);
      if (!Number.isInteger(perPanel) || perPanel < 1) {
        throw new Error("--per-panel needs a positive integer");
      }
    } else if (arg.startsWith("-")) {
      throw new Error(`unknown option ${arg}`);
    } else {
      csvPaths.push(arg);
    }
  }
  if (csvPaths.length === 0) {
    throw new Error("no input CSV files given");
  }
  if (csvPaths.length % perPanel !== 0) {
    throw new Error(`expected a multiple of ${perPanel} CSV files, got ${csvPaths.length}`);
  }
  return { csvPaths, outPath, logY, perPanel };
}

export function chunk<T>(items: T[], size: number): T[][] {
  const groups: T[][] = [];
  for (let i = 0; i < items.length; i += size) {
    groups.push(items.slice(i, i + size));
  }
  return groups;
}

export function runRateScript(argv: string[], defaultPerPanel: number): void {
  const options = parseRateArgs(argv, defaultPerPanel);
  renderRateFigure(chunk(options.csvPaths, options.perPanel), options.outPath, options.logY);
}
