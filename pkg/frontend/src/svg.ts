/** Minimal deterministic SVG assembly: fixed-precision coordinates, no
 * randomness, no timestamps, so a rerun produces the identical byte stream.
 */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const FONT = "12px sans-serif";

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return v > 0 ? "+inf" : "-inf";
  const rounded = Math.round(v * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

/** Coordinates rounded to 0.01 px for byte-stable output. */
export function px(v: number): string {
  return (Math.round(v * 100) / 100).toFixed(2);
}

export function el(tag: string, attrs: Record<string, string | number>, body = ""): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${v}"`)
    .join(" ");
  return body === "" ? `<${tag} ${parts}/>` : `<${tag} ${parts}>${body}</${tag}>`;
}

export function text(x: number, y: number, content: string, anchor = "start", fill = "#333"): string {
  return el(
    "text",
    { x: px(x), y: px(y), "text-anchor": anchor, "font-family": "sans-serif", "font-size": 11, fill },
    escapeXml(content),
  );
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function polyline(points: Array<[number, number]>, stroke: string, width = 1.2, dash = ""): string {
  const pts = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
  const attrs: Record<string, string | number> = {
    points: pts,
    fill: "none",
    stroke,
    "stroke-width": width,
  };
  if (dash) attrs["stroke-dasharray"] = dash;
  return el("polyline", attrs);
}

export function line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1, dash = ""): string {
  const attrs: Record<string, string | number> = {
    x1: px(x1), y1: px(y1), x2: px(x2), y2: px(y2), stroke, "stroke-width": width,
  };
  if (dash) attrs["stroke-dasharray"] = dash;
  return el("line", attrs);
}

export function rect(x: number, y: number, w: number, h: number, fill: string, opacity = 1): string {
  return el("rect", { x: px(x), y: px(y), width: px(w), height: px(h), fill, "fill-opacity": opacity });
}

export function document(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    rect(0, 0, width, height, "#ffffff"),
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

/** Trajectory stroke palette, cycled by replication index. */
export const PALETTE = [
  "#4269d0", "#efb118", "#ff725c", "#6cc5b0", "#3ca951",
  "#ff8ab7", "#a463f2", "#97bbf5", "#9c6b4e", "#9498a0",
];

export function linearScale(domain: [number, number], range: [number, number]) {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function log10Scale(domain: [number, number], range: [number, number]) {
  const inner = linearScale([Math.log10(domain[0]), Math.log10(domain[1])], range);
  return (v: number) => inner(Math.log10(v));
}

export function niceTicks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (span / count) / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const start = Math.ceil(lo / s) * s;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-12; v += s) ticks.push(Math.round(v / s) * s);
  return ticks;
}

export function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo)); e <= Math.floor(Math.log10(hi)); e++) {
    ticks.push(Math.pow(10, e));
  }
  if (ticks.length === 0) ticks.push(lo, hi);
  return ticks;
}
