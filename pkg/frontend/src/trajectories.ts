/** Convergence-trajectory figure: X_{k_n:n} against n on a log x-axis,
 * one polyline per replication, with realized limits drawn as horizontal
 * dashed references. Infinite limits are annotated threshold lines at the
 * data edge, never points.
 */

import type { TrajectorySeries } from "./data.js";
import {
  PALETTE,
  decadeTicks,
  document as svgDocument,
  el,
  fmt,
  line,
  linearScale,
  log10Scale,
  niceTicks,
  polyline,
  px,
  text,
} from "./svg.js";

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { top: 40, right: 30, bottom: 48, left: 64 };

export function renderTrajectories(series: TrajectorySeries[]): string {
  if (series.length === 0) {
    throw new Error("no trajectories to plot");
  }
  const finiteValues: number[] = [];
  const ns: number[] = [];
  for (const s of series) {
    for (const p of s.points) {
      finiteValues.push(p.value);
      ns.push(p.n);
    }
    if (Number.isFinite(s.limit)) finiteValues.push(s.limit);
  }
  const nLo = Math.min(...ns);
  const nHi = Math.max(...ns);
  let yLo = Math.min(...finiteValues);
  let yHi = Math.max(...finiteValues);
  if (yLo === yHi) {
    yLo -= 0.5;
    yHi += 0.5;
  }
  const pad = 0.06 * (yHi - yLo);
  const x = log10Scale([nLo, nHi], [MARGIN.left, WIDTH - MARGIN.right]);
  const y = linearScale([yLo - pad, yHi + pad], [HEIGHT - MARGIN.bottom, MARGIN.top]);

  const body: string[] = [];
  body.push(text(MARGIN.left, 22, "running order statistic vs sample size", "start", "#111"));

  // axes and grid
  for (const t of decadeTicks(nLo, nHi)) {
    body.push(line(x(t), MARGIN.top, x(t), HEIGHT - MARGIN.bottom, "#eeeeee"));
    body.push(text(x(t), HEIGHT - MARGIN.bottom + 16, `1e${Math.round(Math.log10(t))}`, "middle", "#555"));
  }
  for (const t of niceTicks(yLo - pad, yHi + pad)) {
    body.push(line(MARGIN.left, y(t), WIDTH - MARGIN.right, y(t), "#eeeeee"));
    body.push(text(MARGIN.left - 8, y(t) + 4, fmt(t), "end", "#555"));
  }
  body.push(line(MARGIN.left, HEIGHT - MARGIN.bottom, WIDTH - MARGIN.right, HEIGHT - MARGIN.bottom, "#333"));
  body.push(line(MARGIN.left, MARGIN.top, MARGIN.left, HEIGHT - MARGIN.bottom, "#333"));
  body.push(text((MARGIN.left + WIDTH - MARGIN.right) / 2, HEIGHT - 12, "n (log scale)", "middle", "#333"));

  // realized limits: few distinct finite values get labeled references,
  // many get one faint line per replication
  const finiteLimits = series.map((s) => s.limit).filter((l) => Number.isFinite(l));
  const distinct = [...new Set(finiteLimits)].sort((a, b) => a - b);
  if (distinct.length > 0 && distinct.length <= 12) {
    for (const l of distinct) {
      body.push(line(MARGIN.left, y(l), WIDTH - MARGIN.right, y(l), "#222222", 1.2, "6 4"));
      body.push(text(WIDTH - MARGIN.right - 4, y(l) - 5, `limit ${fmt(l)}`, "end", "#222"));
    }
  } else if (distinct.length > 12) {
    for (const s of series) {
      if (Number.isFinite(s.limit)) {
        body.push(line(MARGIN.left, y(s.limit), WIDTH - MARGIN.right, y(s.limit), "#bbbbbb", 0.5, "2 4"));
      }
    }
    body.push(text(WIDTH - MARGIN.right - 4, MARGIN.top + 12, `${distinct.length} realized limits`, "end", "#666"));
  }

  // infinite limits become annotated thresholds at the data edge
  const negInf = series.filter((s) => s.limit === -Infinity).length;
  const posInf = series.filter((s) => s.limit === Infinity).length;
  if (negInf > 0) {
    body.push(line(MARGIN.left, y(yLo), WIDTH - MARGIN.right, y(yLo), "#b30000", 1.2, "2 3"));
    body.push(text(MARGIN.left + 4, y(yLo) - 5, `limit -inf (${negInf} reps): threshold at data edge`, "start", "#b30000"));
  }
  if (posInf > 0) {
    body.push(line(MARGIN.left, y(yHi), WIDTH - MARGIN.right, y(yHi), "#b30000", 1.2, "2 3"));
    body.push(text(MARGIN.left + 4, y(yHi) + 14, `limit +inf (${posInf} reps): threshold at data edge`, "start", "#b30000"));
  }

  for (const [i, s] of series.entries()) {
    const pts: Array<[number, number]> = s.points.map((p) => [x(p.n), y(p.value)]);
    body.push(polyline(pts, PALETTE[i % PALETTE.length]));
  }
  body.push(
    el("g", { "data-series": series.length, "data-checkpoints": series[0].points.length }),
  );
  return svgDocument(WIDTH, HEIGHT, body);
}
