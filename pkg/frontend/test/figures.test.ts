import { describe, expect, it } from "vitest";
import { MissingColumnError, parseCsv, requireColumns } from "../src/csv.js";
import { renderFigure } from "../src/figures.js";
import { figureToSvg } from "../src/svg.js";
import { leastSquares } from "../src/draw.js";

const NORM_DECAY_CSV = [
  "ell,s_re,s_im,norm,bound",
  "1,0.37,0,0.957733,nan",
  "2,0.37,0,0.811586,nan",
  "3,0.37,0,0.615228,nan",
  "4,0.37,0,0.423426,nan",
  "5,0.37,0,0.273393,nan",
  "6,0.37,0,0.16834,nan",
].join("\n");

const ZEROS_CSV = [
  "s_re,s_im,mult,residual",
  "0.34380880857098856,-2.1e-11,1,9.1e-12",
].join("\n");

const EMPTY_ZEROS_CSV = "s_re,s_im,mult,residual\n";

const EXPERIMENT_CSV = [
  "n,trial,seed,certified,ell,max_norm,new_zero_count",
  "20,0,11,1,8,0.40,0",
  "20,1,12,0,16,1.10,1",
  "50,0,13,1,8,0.55,0",
  "50,1,14,0,16,1.02,0",
  "100,0,15,1,8,0.60,0",
  "100,1,16,1,8,0.52,0",
].join("\n");

describe("csv contract", () => {
  it("parses numeric tables", () => {
    const t = parseCsv(NORM_DECAY_CSV, "nd.csv");
    expect(t.columns).toEqual(["ell", "s_re", "s_im", "norm", "bound"]);
    expect(t.rows).toHaveLength(6);
    expect(t.rows[0][3]).toBeCloseTo(0.957733);
  });

  it("names the missing column", () => {
    const t = parseCsv("a,b\n1,2", "x.csv");
    expect(() => requireColumns(t, ["a", "zap"], "x.csv")).toThrowError(
      MissingColumnError,
    );
    try {
      requireColumns(t, ["zap"], "x.csv");
    } catch (err) {
      expect((err as MissingColumnError).column).toBe("zap");
      expect(String(err)).toContain("zap");
    }
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1,2,3", "y.csv")).toThrowError(/row width/);
  });
});

describe("norm-decay figure", () => {
  it("renders a log-scale line with the recomputed fitted slope", () => {
    const fig = renderFigure("norm-decay", NORM_DECAY_CSV, "nd.csv");
    const svg = figureToSvg(fig);
    const ells = [1, 2, 3, 4, 5, 6];
    const logs = [0.957733, 0.811586, 0.615228, 0.423426, 0.273393, 0.16834].map(
      (v) => Math.log10(v),
    );
    const fit = leastSquares(ells, logs);
    expect(svg).toContain(`fitted slope ${fit.b.toFixed(4)}`);
    expect(svg).toContain("log10 norm");
    expect(svg).toContain("<polyline");
  });

  it("refuses a CSV without the norm column", () => {
    const bad = "ell,s_re,s_im,bound\n1,0.3,0,2.0";
    expect(() => renderFigure("norm-decay", bad, "bad.csv")).toThrowError(/norm/);
  });
});

describe("resonance-map figure", () => {
  it("marks a single zero and the delta/2 line", () => {
    const fig = renderFigure("resonance-map", ZEROS_CSV, "z.csv", {
      delta: 0.3438088085879116,
    });
    const svg = figureToSvg(fig);
    expect(svg).toContain("<circle");
    expect(svg).toContain("Re s = delta/2 = 0.171904");
    expect(svg).not.toContain("no zeros");
  });

  it("renders the annotated empty figure", () => {
    const fig = renderFigure("resonance-map", EMPTY_ZEROS_CSV, "z.csv", {
      delta: 0.3438088085879116,
    });
    const svg = figureToSvg(fig);
    expect(svg).toContain("no zeros in K");
    expect(svg).toContain("Re s = delta/2");
  });
});

describe("success-rate figure", () => {
  it("aggregates success fractions per n", () => {
    const fig = renderFigure("success-rate", EXPERIMENT_CSV, "e.csv");
    const svg = figureToSvg(fig);
    // n=20: 1 of 2 (trial 1 has a new zero); n=50: 2 of 2 (failed cert but
    // zero-free scan counts as success); n=100: 2 of 2
    expect(svg).toContain("0.500");
    expect(svg).toContain("1.000");
    expect(svg).toContain("success fraction");
  });
});

describe("determinism", () => {
  it("same bytes for repeated renders", () => {
    const a = figureToSvg(
      renderFigure("resonance-map", ZEROS_CSV, "z.csv", { delta: 0.34 }),
    );
    const b = figureToSvg(
      renderFigure("resonance-map", ZEROS_CSV, "z.csv", { delta: 0.34 }),
    );
    expect(a).toBe(b);
  });
});
