/** Plot jobs: read the simulate artifacts, render one figure, write SVG. */

import { readFileSync, writeFileSync } from "node:fs";

import { parseEnsembleJson, parseTrajectoriesCsv } from "./data.js";
import { renderLimitHistogram } from "./histogram.js";
import { renderTrajectories } from "./trajectories.js";

export type PlotKind = "trajectories" | "limit_histogram";

export interface PlotJob {
  csvPath: string;
  jsonPath: string;
  outPath: string;
  kind: PlotKind;
}

function readRequired(path: string, what: string): string {
  try {
    return readFileSync(path, "utf-8");
  } catch (err) {
    throw new Error(`cannot read ${what} at ${path}: ${String(err)}`);
  }
}

export function renderToString(job: PlotJob): string {
  if (job.kind === "trajectories") {
    const series = parseTrajectoriesCsv(readRequired(job.csvPath, "trajectories CSV"));
    return renderTrajectories(series);
  }
  if (job.kind === "limit_histogram") {
    const data = parseEnsembleJson(readRequired(job.jsonPath, "ensemble JSON"));
    return renderLimitHistogram(data);
  }
  throw new Error(`unknown plot kind: ${String(job.kind)}`);
}

export function render(job: PlotJob): string {
  const svg = renderToString(job);
  writeFileSync(job.outPath, svg, "utf-8");
  return job.outPath;
}
