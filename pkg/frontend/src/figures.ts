/** The three figure kinds over schottky-lab CSV artifacts.
 *
 * Only least-squares fits are recomputed here; every plotted value comes
 * straight from the CSV (the numerics live in the primary component).
 */

import { parseCsv, requireColumns, Table } from "./csv.js";
import {
  axes,
  DrawOp,
  Figure,
  FIGURE_HEIGHT,
  FIGURE_WIDTH,
  LinearScale,
  leastSquares,
  MARGINS,
  padRange,
} from "./draw.js";

export type FigureKind = "norm-decay" | "resonance-map" | "success-rate";

export interface FigureOptions {
  delta?: number;
}

const ACCENT = "#1f77b4";
const FIT = "#d62728";
const GUIDE = "#2ca02c";

function frame(): { xLo: number; xHi: number; yLo: number; yHi: number } {
  return {
    xLo: MARGINS.left,
    xHi: FIGURE_WIDTH - MARGINS.right,
    yLo: FIGURE_HEIGHT - MARGINS.bottom,
    yHi: MARGINS.top,
  };
}

export function renderNormDecay(table: Table, source: string): Figure {
  const cols = requireColumns(table, ["ell", "s_re", "s_im", "norm", "bound"], source);
  const ells = cols.get("ell")!;
  const norms = cols.get("norm")!;
  const bounds = cols.get("bound")!;
  const sRe = cols.get("s_re")![0];
  const sIm = cols.get("s_im")![0];
  const logs = norms.map((v) => Math.log10(v));
  const finiteBounds = bounds.filter((v) => Number.isFinite(v));
  const logBounds = bounds.map((v) => (Number.isFinite(v) ? Math.log10(v) : NaN));
  const f = frame();
  const [xLo, xHi] = padRange(Math.min(...ells), Math.max(...ells));
  const allLogs = logs.concat(logBounds.filter((v) => Number.isFinite(v)));
  const [yLo, yHi] = padRange(Math.min(...allLogs), Math.max(...allLogs));
  const xs = new LinearScale(xLo, xHi, f.xLo, f.xHi);
  const ys = new LinearScale(yLo, yHi, f.yLo, f.yHi);
  const fit = leastSquares(ells, logs);
  const ops: DrawOp[] = axes({
    xLabel: "power ell",
    yLabel: "log10 norm",
    title: `twisted power norms at s = ${sRe} + ${sIm}i`,
    xScale: xs,
    yScale: ys,
  });
  ops.push({
    kind: "polyline",
    points: ells.map((e, i) => [xs.at(e), ys.at(logs[i])] as [number, number]),
    stroke: ACCENT,
    width: 1.8,
  });
  for (let i = 0; i < ells.length; i++) {
    ops.push({ kind: "circle", cx: xs.at(ells[i]), cy: ys.at(logs[i]), r: 3, fill: ACCENT });
  }
  ops.push({
    kind: "polyline",
    points: [xLo, xHi].map(
      (e) => [xs.at(e), ys.at(fit.a + fit.b * e)] as [number, number],
    ),
    stroke: FIT,
    width: 1.4,
    dash: [6, 4],
  });
  if (finiteBounds.length > 0) {
    ops.push({
      kind: "polyline",
      points: ells
        .map((e, i) => [e, logBounds[i]] as [number, number])
        .filter(([, v]) => Number.isFinite(v))
        .map(([e, v]) => [xs.at(e), ys.at(v)] as [number, number]),
      stroke: GUIDE,
      width: 1.4,
      dash: [2, 3],
    });
    ops.push({
      kind: "text", x: f.xHi - 4, y: f.yHi + 30, size: 12, anchor: "end",
      text: "split-block upper bound", fill: GUIDE,
    });
  }
  ops.push({
    kind: "text", x: f.xHi - 4, y: f.yHi + 14, size: 12, anchor: "end",
    text: `fitted slope ${fit.b.toFixed(4)} per ell (rate ${Math.pow(10, fit.b).toFixed(4)})`,
    fill: FIT,
  });
  return { width: FIGURE_WIDTH, height: FIGURE_HEIGHT, ops };
}

export function renderResonanceMap(
  table: Table,
  source: string,
  opts: FigureOptions = {},
): Figure {
  const cols = requireColumns(table, ["s_re", "s_im", "mult", "residual"], source);
  const re = cols.get("s_re")!;
  const im = cols.get("s_im")!;
  const mult = cols.get("mult")!;
  const f = frame();
  const guide = opts.delta !== undefined ? opts.delta / 2 : undefined;
  const xsAll = re.concat(
    guide !== undefined ? [guide] : [],
    opts.delta !== undefined ? [opts.delta] : [],
  );
  const [xLo, xHi] = xsAll.length
    ? padRange(Math.min(...xsAll), Math.max(...xsAll), 0.15)
    : [0, 1];
  const [yLo, yHi] = im.length
    ? padRange(Math.min(...im, -0.05), Math.max(...im, 0.05), 0.15)
    : [-1, 1];
  const xs = new LinearScale(xLo, xHi, f.xLo, f.xHi);
  const ys = new LinearScale(yLo, yHi, f.yLo, f.yHi);
  const ops: DrawOp[] = axes({
    xLabel: "Re s",
    yLabel: "Im s",
    title: "determinant zeros (resonances) in the scan window",
    xScale: xs,
    yScale: ys,
  });
  if (guide !== undefined) {
    ops.push({
      kind: "line",
      x1: xs.at(guide), y1: f.yLo, x2: xs.at(guide), y2: f.yHi,
      stroke: GUIDE, width: 1.6, dash: [8, 4],
    });
    ops.push({
      kind: "text", x: xs.at(guide), y: f.yHi + 12, size: 12, anchor: "middle",
      text: `Re s = delta/2 = ${guide.toFixed(6)}`, fill: GUIDE,
    });
  }
  if (re.length === 0) {
    ops.push({
      kind: "text",
      x: (f.xLo + f.xHi) / 2, y: (f.yLo + f.yHi) / 2,
      size: 16, anchor: "middle", text: "no zeros in K", fill: "#555555",
    });
  }
  for (let i = 0; i < re.length; i++) {
    ops.push({
      kind: "circle", cx: xs.at(re[i]), cy: ys.at(im[i]),
      r: 4 + 2 * (mult[i] - 1), fill: ACCENT,
    });
    if (mult[i] > 1) {
      ops.push({
        kind: "text", x: xs.at(re[i]) + 8, y: ys.at(im[i]) - 6,
        size: 11, anchor: "start", text: `mult ${mult[i]}`, fill: ACCENT,
      });
    }
  }
  return { width: FIGURE_WIDTH, height: FIGURE_HEIGHT, ops };
}

export function renderSuccessRate(table: Table, source: string): Figure {
  const cols = requireColumns(
    table,
    ["n", "trial", "seed", "certified", "ell", "max_norm", "new_zero_count"],
    source,
  );
  const ns = cols.get("n")!;
  const certified = cols.get("certified")!;
  const newZeros = cols.get("new_zero_count")!;
  const perN = new Map<number, { ok: number; total: number }>();
  for (let i = 0; i < ns.length; i++) {
    const entry = perN.get(ns[i]) ?? { ok: 0, total: 0 };
    entry.total += 1;
    if (certified[i] === 1 || newZeros[i] === 0) entry.ok += 1;
    perN.set(ns[i], entry);
  }
  const sorted = [...perN.keys()].sort((a, b) => a - b);
  const fractions = sorted.map((n) => perN.get(n)!.ok / perN.get(n)!.total);
  const f = frame();
  const [xLo, xHi] = padRange(Math.min(...sorted), Math.max(...sorted), 0.12);
  const xs = new LinearScale(xLo, xHi, f.xLo, f.xHi);
  const ys = new LinearScale(0, 1.05, f.yLo, f.yHi);
  const ops: DrawOp[] = axes({
    xLabel: "cover degree n",
    yLabel: "success fraction",
    title: "spectral-gap success rate across random covers",
    xScale: xs,
    yScale: ys,
  });
  ops.push({
    kind: "polyline",
    points: sorted.map((n, i) => [xs.at(n), ys.at(fractions[i])] as [number, number]),
    stroke: ACCENT,
    width: 1.8,
  });
  sorted.forEach((n, i) => {
    ops.push({ kind: "circle", cx: xs.at(n), cy: ys.at(fractions[i]), r: 4, fill: ACCENT });
    ops.push({
      kind: "text", x: xs.at(n), y: ys.at(fractions[i]) - 10, size: 11,
      anchor: "middle", text: fractions[i].toFixed(3), fill: "#333333",
    });
  });
  return { width: FIGURE_WIDTH, height: FIGURE_HEIGHT, ops };
}

export function renderFigure(
  kind: FigureKind,
  csvText: string,
  source: string,
  opts: FigureOptions = {},
): Figure {
  const table = parseCsv(csvText, source);
  switch (kind) {
    case "norm-decay":
      return renderNormDecay(table, source);
    case "resonance-map":
      return renderResonanceMap(table, source, opts);
    case "success-rate":
      return renderSuccessRate(table, source);
  }
}
