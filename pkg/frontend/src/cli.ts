/** Batch entry point: --csv PATH --json PATH --out PATH --kind KIND. */

import { render, type PlotKind } from "./render.js";

export function parseArgs(argv: string[]): { csv: string; json: string; out: string; kind: PlotKind } {
  const opts: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new Error(`usage: --csv PATH --json PATH --out PATH --kind trajectories|limit_histogram`);
    }
    opts[flag.slice(2)] = value;
  }
  const missing = ["csv", "json", "out", "kind"].filter((k) => !(k in opts));
  if (missing.length > 0) {
    throw new Error(`missing required flag(s): ${missing.map((m) => `--${m}`).join(", ")}`);
  }
  if (opts.kind !== "trajectories" && opts.kind !== "limit_histogram") {
    throw new Error(`--kind must be trajectories or limit_histogram, got ${opts.kind}`);
  }
  return { csv: opts.csv, json: opts.json, out: opts.out, kind: opts.kind };
}

export function run(argv: string[]): number {
  let job;
  try {
    const args = parseArgs(argv);
    job = { csvPath: args.csv, jsonPath: args.json, outPath: args.out, kind: args.kind };
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 2;
  }
  try {
    const out = render(job);
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
