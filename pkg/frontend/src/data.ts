/** Parsers for the simulate artifacts: trajectories CSV and ensemble JSON.
 *
 * The CSV contract is the header `rep,n,k_n,value,limit,regime` with
 * extended reals written as `+inf` / `-inf`. Parsing is strict: a missing
 * column is a contract violation reported by name.
 */

export interface TrajectoryPoint {
  n: number;
  k: number;
  value: number;
}

export interface TrajectorySeries {
  rep: number;
  regime: number | null;
  limit: number; // may be +-Infinity
  points: TrajectoryPoint[];
}

export interface LimitLawDescriptor {
  kind: "point" | "atoms" | "continuous";
  atoms?: [number | string, number][];
  x?: number[];
  cdf?: number[];
  density?: number[] | null;
}

export interface EnsembleData {
  limits: number[];
  finalValues: number[];
  regimes: (number | null)[];
  limitLaw: LimitLawDescriptor | null;
}

export const CSV_COLUMNS = ["rep", "n", "k_n", "value", "limit", "regime"] as const;

export function parseExtended(raw: string): number {
  const s = raw.trim();
  if (s === "+inf" || s === "inf") return Infinity;
  if (s === "-inf") return -Infinity;
  const v = Number(s);
  if (!Number.isFinite(v)) {
    throw new Error(`not a finite number or inf literal: ${JSON.stringify(raw)}`);
  }
  return v;
}

export function parseTrajectoriesCsv(text: string): TrajectorySeries[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error("empty trajectories CSV");
  }
  const header = lines[0].split(",").map((c) => c.trim());
  const missing = CSV_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new Error(`trajectories CSV missing required column(s): ${missing.join(", ")}`);
  }
  const col = Object.fromEntries(header.map((name, i) => [name, i]));
  if (lines.length === 1) {
    throw new Error("trajectories CSV has a header but no data rows");
  }

  const byRep = new Map<number, TrajectorySeries>();
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length < header.length) {
      throw new Error(`row ${i + 1} has ${cells.length} cells, expected ${header.length}`);
    }
    const rep = Number(cells[col.rep]);
    const regimeRaw = cells[col.regime].trim();
    let series = byRep.get(rep);
    if (!series) {
      series = {
        rep,
        regime: regimeRaw === "" ? null : Number(regimeRaw),
        limit: parseExtended(cells[col.limit]),
        points: [],
      };
      byRep.set(rep, series);
    }
    series.points.push({
      n: Number(cells[col.n]),
      k: Number(cells[col.k_n]),
      value: parseExtended(cells[col.value]),
    });
  }
  return [...byRep.values()].sort((a, b) => a.rep - b.rep);
}

export function parseEnsembleJson(text: string): EnsembleData {
  let obj: any;
  try {
    obj = JSON.parse(text);
  } catch (err) {
    throw new Error(`ensemble JSON does not parse: ${String(err)}`);
  }
  for (const field of ["limits", "final_values"]) {
    if (!Array.isArray(obj[field])) {
      throw new Error(`ensemble JSON missing required array field: ${field}`);
    }
  }
  const toNumber = (v: number | string): number =>
    typeof v === "string" ? parseExtended(v) : v;
  return {
    limits: obj.limits.map(toNumber),
    finalValues: obj.final_values.map(toNumber),
    regimes: Array.isArray(obj.regimes) ? obj.regimes : obj.limits.map(() => null),
    limitLaw: obj.limit_law ?? null,
  };
}
