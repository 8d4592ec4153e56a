/** Backend-neutral drawing primitives and scales.
 *
 * Figures are assembled as a flat list of primitives so the SVG writer and
 * the PNG rasterizer render exactly the same geometry; all coordinates are
 * resolved here with fixed formatting, which keeps the SVG byte-stable.
 */

export type DrawOp =
  | {
      kind: "line";
      x1: number;
      y1: number;
      x2: number;
      y2: number;
      stroke: string;
      width: number;
      dash?: number[];
    }
  | {
      kind: "polyline";
      points: Array<[number, number]>;
      stroke: string;
      width: number;
      dash?: number[];
    }
  | { kind: "circle"; cx: number; cy: number; r: number; fill: string }
  | {
      kind: "text";
      x: number;
      y: number;
      text: string;
      size: number;
      anchor: "start" | "middle" | "end";
      fill: string;
    };

export interface Figure {
  width: number;
  height: number;
  ops: DrawOp[];
}

export interface Margins {
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const FIGURE_WIDTH = 640;
export const FIGURE_HEIGHT = 420;
export const MARGINS: Margins = { left: 66, right: 20, top: 34, bottom: 48 };

export class LinearScale {
  constructor(
    public readonly lo: number,
    public readonly hi: number,
    public readonly pixLo: number,
    public readonly pixHi: number,
  ) {}

  at(v: number): number {
    const t = (v - this.lo) / (this.hi - this.lo);
    return this.pixLo + t * (this.pixHi - this.pixLo);
  }

  /** Round tick positions: at most `count`, on a 1/2/5 grid. */
  ticks(count = 6): number[] {
    const span = this.hi - this.lo;
    if (!(span > 0)) return [this.lo];
    const raw = span / count;
    const mag = Math.pow(10, Math.floor(Math.log10(raw)));
    let step = mag;
    for (const m of [1, 2, 5, 10]) {
      if (raw <= m * mag) {
        step = m * mag;
        break;
      }
    }
    const first = Math.ceil(this.lo / step) * step;
    const out: number[] = [];
    for (let v = first; v <= this.hi + 1e-12 * span; v += step) {
      out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
    }
    return out;
  }
}

export function padRange(lo: number, hi: number, frac = 0.08): [number, number] {
  if (!(hi > lo)) {
    const pad = Math.max(Math.abs(lo), 1) * frac;
    return [lo - pad, lo + pad];
  }
  const pad = (hi - lo) * frac;
  return [lo - pad, hi + pad];
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return Number(v.toPrecision(4)).toString();
}

/** Least squares fit y = a + b x; used for the decay envelopes. */
export function leastSquares(xs: number[], ys: number[]): { a: number; b: number } {
  const n = xs.length;
  const mx = xs.reduce((s, v) => s + v, 0) / n;
  const my = ys.reduce((s, v) => s + v, 0) / n;
  let num = 0;
  let den = 0;
  for (let i = 0; i < n; i++) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  const b = den === 0 ? 0 : num / den;
  return { a: my - b * mx, b };
}

export interface AxesSpec {
  xLabel: string;
  yLabel: string;
  title: string;
  xScale: LinearScale;
  yScale: LinearScale;
  yTickFmt?: (v: number) => string;
}

/** Frame, ticks, grid and labels shared by all three figure kinds. */
export function axes(spec: AxesSpec): DrawOp[] {
  const { xScale, yScale } = spec;
  const ops: DrawOp[] = [];
  const x0 = xScale.pixLo;
  const x1 = xScale.pixHi;
  const y0 = yScale.pixLo; // bottom (larger pixel y)
  const y1 = yScale.pixHi;
  for (const v of xScale.ticks()) {
    const px = xScale.at(v);
    ops.push({ kind: "line", x1: px, y1: y0, x2: px, y2: y1, stroke: "#dddddd", width: 1 });
    ops.push({ kind: "line", x1: px, y1: y0, x2: px, y2: y0 + 4, stroke: "#333333", width: 1 });
    ops.push({
      kind: "text", x: px, y: y0 + 17, text: fmtTick(v), size: 11,
      anchor: "middle", fill: "#333333",
    });
  }
  const yFmt = spec.yTickFmt ?? fmtTick;
  for (const v of yScale.ticks()) {
    const py = yScale.at(v);
    ops.push({ kind: "line", x1: x0, y1: py, x2: x1, y2: py, stroke: "#dddddd", width: 1 });
    ops.push({ kind: "line", x1: x0 - 4, y1: py, x2: x0, y2: py, stroke: "#333333", width: 1 });
    ops.push({
      kind: "text", x: x0 - 7, y: py + 4, text: yFmt(v), size: 11,
      anchor: "end", fill: "#333333",
    });
  }
  ops.push({ kind: "line", x1: x0, y1: y0, x2: x1, y2: y0, stroke: "#333333", width: 1.2 });
  ops.push({ kind: "line", x1: x0, y1: y0, x2: x0, y2: y1, stroke: "#333333", width: 1.2 });
  ops.push({
    kind: "text", x: (x0 + x1) / 2, y: y0 + 36, text: spec.xLabel, size: 13,
    anchor: "middle", fill: "#000000",
  });
  ops.push({
    kind: "text", x: x0, y: y1 - 10, text: spec.yLabel, size: 13,
    anchor: "start", fill: "#000000",
  });
  ops.push({
    kind: "text", x: (x0 + x1) / 2, y: 20, text: spec.title, size: 14,
    anchor: "middle", fill: "#000000",
  });
  return ops;
}
