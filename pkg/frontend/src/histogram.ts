/** Realized-limit histogram with the theoretical limit law overlaid.
 *
 * Finite realized limits are binned to counts; the law descriptor from the
 * ensemble JSON supplies the overlay: vertical reference lines scaled to
 * expected counts for point/atom laws, a density curve scaled by
 * N * binWidth for continuous laws. Infinite limits never become bars,
 * only a margin annotation.
 */

import type { EnsembleData, LimitLawDescriptor } from "./data.js";
import {
  document as svgDocument,
  fmt,
  line,
  linearScale,
  niceTicks,
  polyline,
  rect,
  text,
} from "./svg.js";

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { top: 40, right: 30, bottom: 48, left: 64 };
const BIN_COUNT = 30;

function lawAtoms(law: LimitLawDescriptor): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  for (const [v, w] of law.atoms ?? []) {
    const value = typeof v === "string" ? (v === "-inf" ? -Infinity : Infinity) : v;
    out.push([value, w]);
  }
  return out;
}

export function renderLimitHistogram(data: EnsembleData): string {
  const finite = data.limits.filter((v) => Number.isFinite(v));
  const negInf = data.limits.filter((v) => v === -Infinity).length;
  const posInf = data.limits.filter((v) => v === Infinity).length;
  if (finite.length === 0) {
    throw new Error("no finite realized limits to bin");
  }

  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  const law = data.limitLaw;
  if (law?.kind === "continuous" && law.x && law.x.length > 0) {
    lo = Math.min(lo, law.x[0]);
    hi = Math.max(hi, law.x[law.x.length - 1]);
  }
  for (const [v] of law ? lawAtoms(law) : []) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const span = hi - lo;
  lo -= 0.05 * span;
  hi += 0.05 * span;

  const binWidth = (hi - lo) / BIN_COUNT;
  const counts = new Array(BIN_COUNT).fill(0);
  for (const v of finite) {
    const idx = Math.min(BIN_COUNT - 1, Math.floor((v - lo) / binWidth));
    counts[idx] += 1;
  }

  // overlay heights share the count scale: atoms carry weight * N expected
  // counts, densities are scaled by N * binWidth
  const n = data.limits.length;
  let overlayMax = 0;
  const atomMarks: Array<[number, number]> = [];
  let densityCurve: Array<[number, number]> = [];
  if (law && (law.kind === "point" || law.kind === "atoms")) {
    for (const [v, w] of lawAtoms(law)) {
      if (Number.isFinite(v)) {
        atomMarks.push([v, w * n]);
        overlayMax = Math.max(overlayMax, w * n);
      }
    }
  } else if (law?.kind === "continuous" && law.x && law.density) {
    densityCurve = law.x.map((xv, i) => [xv, (law.density as number[])[i] * n * binWidth]);
    overlayMax = Math.max(overlayMax, ...densityCurve.map(([, c]) => c));
  }

  const yMax = Math.max(Math.max(...counts), overlayMax, 1) * 1.08;
  const x = linearScale([lo, hi], [MARGIN.left, WIDTH - MARGIN.right]);
  const y = linearScale([0, yMax], [HEIGHT - MARGIN.bottom, MARGIN.top]);

  const body: string[] = [];
  body.push(text(MARGIN.left, 22, "realized limits vs theoretical limit law", "start", "#111"));

  for (const t of niceTicks(lo, hi)) {
    body.push(text(x(t), HEIGHT - MARGIN.bottom + 16, fmt(t), "middle", "#555"));
    body.push(line(x(t), HEIGHT - MARGIN.bottom, x(t), HEIGHT - MARGIN.bottom + 4, "#333"));
  }
  for (const t of niceTicks(0, yMax, 5)) {
    body.push(line(MARGIN.left, y(t), WIDTH - MARGIN.right, y(t), "#eeeeee"));
    body.push(text(MARGIN.left - 8, y(t) + 4, fmt(t), "end", "#555"));
  }
  body.push(line(MARGIN.left, HEIGHT - MARGIN.bottom, WIDTH - MARGIN.right, HEIGHT - MARGIN.bottom, "#333"));
  body.push(line(MARGIN.left, MARGIN.top, MARGIN.left, HEIGHT - MARGIN.bottom, "#333"));
  body.push(text((MARGIN.left + WIDTH - MARGIN.right) / 2, HEIGHT - 12, "realized limit", "middle", "#333"));
  body.push(text(14, MARGIN.top - 8, "count", "start", "#333"));

  for (let i = 0; i < BIN_COUNT; i++) {
    if (counts[i] === 0) continue;
    const x0 = x(lo + i * binWidth);
    const x1 = x(lo + (i + 1) * binWidth);
    body.push(rect(x0, y(counts[i]), Math.max(x1 - x0 - 1, 0.5), y(0) - y(counts[i]), "#4269d0", 0.75));
  }

  for (const [v, expected] of atomMarks) {
    body.push(line(x(v), y(0), x(v), y(expected), "#b30000", 2, "5 3"));
    body.push(text(x(v), y(expected) - 6, `law atom at ${fmt(v)} (expected ${fmt(expected)})`, "middle", "#b30000"));
  }
  if (densityCurve.length > 0) {
    body.push(polyline(densityCurve.map(([xv, c]) => [x(xv), y(c)]), "#b30000", 1.8));
    body.push(text(WIDTH - MARGIN.right - 4, MARGIN.top + 12, "limit law density", "end", "#b30000"));
  }
  if (negInf + posInf > 0) {
    const notes: string[] = [];
    if (negInf > 0) notes.push(`-inf: ${negInf} reps`);
    if (posInf > 0) notes.push(`+inf: ${posInf} reps`);
    body.push(text(WIDTH - MARGIN.right - 4, MARGIN.top + 26, `off-scale limits (${notes.join(", ")})`, "end", "#666"));
  }
  return svgDocument(WIDTH, HEIGHT, body);
}
