/** Acceptance (secondary): render all three figure kinds from real artifacts
 * of the primary component's cover experiment, without recomputation.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { renderFigure } from "../src/figures.js";
import { figureToSvg } from "../src/svg.js";
import { figureToPng } from "../src/png.js";

const FIXTURES = join(__dirname, "fixtures");
const DELTA = 0.3438088085879116;

function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf8");
}

describe("criterion 12: figures from real experiment artifacts", () => {
  it("renders the success-rate figure from experiment.csv", () => {
    const svg = figureToSvg(
      renderFigure("success-rate", fixture("experiment.csv"), "experiment.csv"),
    );
    expect(svg).toContain("success fraction");
    // the frozen run: 0.90 / 0.95 / 1.00 for n = 20, 50, 100
    expect(svg).toContain("0.900");
    expect(svg).toContain("0.950");
    expect(svg).toContain("1.000");
  });

  it("renders the resonance map with the delta/2 line from zeros.csv", () => {
    const svg = figureToSvg(
      renderFigure("resonance-map", fixture("zeros.csv"), "zeros.csv", {
        delta: DELTA,
      }),
    );
    expect(svg).toContain("<circle");
    expect(svg).toContain("Re s = delta/2 = 0.171904");
  });

  it("renders the annotated empty figure from an empty zeros.csv", () => {
    const svg = figureToSvg(
      renderFigure("resonance-map", fixture("zeros_empty.csv"), "zeros_empty.csv", {
        delta: DELTA,
      }),
    );
    expect(svg).toContain("no zeros in K");
  });

  it("renders the norm-decay figure from norm_decay.csv", () => {
    const svg = figureToSvg(
      renderFigure("norm-decay", fixture("norm_decay.csv"), "norm_decay.csv"),
    );
    expect(svg).toContain("fitted slope");
    expect(svg).toContain("log10 norm");
  });

  it("rasterizes the same figures to PNG", async () => {
    const png = await figureToPng(
      renderFigure("success-rate", fixture("experiment.csv"), "experiment.csv"),
    );
    expect(png.subarray(1, 4).toString()).toBe("PNG");
  });
});
