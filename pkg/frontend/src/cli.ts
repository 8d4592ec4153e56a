/** plots <kind> <csv> -o <out.svg|out.png> [--delta X]
 *
 * Exit codes: 0 rendered; 1 contract violation (missing column, bad kind);
 * 2 IO/parse failure.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { MissingColumnError } from "./csv.js";
import { figureToSvg } from "./svg.js";
import { figureToPng } from "./png.js";
import { FigureKind, renderFigure } from "./figures.js";

const KINDS: FigureKind[] = ["norm-decay", "resonance-map", "success-rate"];

export interface CliArgs {
  kind: FigureKind;
  csvPath: string;
  outPath: string;
  delta?: number;
}

export function parseArgs(argv: string[]): CliArgs {
  const positional: string[] = [];
  let outPath = "";
  let delta: number | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "-o" || arg === "--out") {
      outPath = argv[++i] ?? "";
    } else if (arg === "--delta") {
      delta = Number(argv[++i]);
      if (!Number.isFinite(delta)) {
        throw new Error(`--delta needs a finite number`);
      }
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 2) {
    throw new Error("usage: plots <norm-decay|resonance-map|success-rate> <csv> -o <out.svg|out.png> [--delta X]");
  }
  const [kind, csvPath] = positional;
  if (!KINDS.includes(kind as FigureKind)) {
    throw new Error(`unknown figure kind "${kind}"; expected one of ${KINDS.join(", ")}`);
  }
  if (!outPath) {
    throw new Error("missing -o <output image path>");
  }
  return { kind: kind as FigureKind, csvPath, outPath, delta };
}

export async function run(argv: string[]): Promise<number> {
  let args: CliArgs;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
  let text: string;
  try {
    text = readFileSync(args.csvPath, "utf8");
  } catch (err) {
    console.error(`cannot read ${args.csvPath}: ${err}`);
    return 2;
  }
  try {
    const fig = renderFigure(args.kind, text, args.csvPath, { delta: args.delta });
    if (args.outPath.toLowerCase().endsWith(".png")) {
      writeFileSync(args.outPath, await figureToPng(fig));
    } else {
      writeFileSync(args.outPath, figureToSvg(fig), "utf8");
    }
    console.log(`wrote ${args.outPath}`);
    return 0;
  } catch (err) {
    if (err instanceof MissingColumnError) {
      console.error(err.message);
      return 1;
    }
    console.error(String(err instanceof Error ? err.message : err));
    return 2;
  }
}

const isMain = process.argv[1] !== undefined && import.meta.url.endsWith(
  process.argv[1].split("/").pop() ?? "",
);
if (isMain) {
  run(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
