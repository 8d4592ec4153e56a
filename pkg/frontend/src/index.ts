export { parseCsv, requireColumns, MissingColumnError } from "./csv.js";
export { figureToSvg } from "./svg.js";
export { figureToPng } from "./png.js";
export {
  renderFigure,
  renderNormDecay,
  renderResonanceMap,
  renderSuccessRate,
} from "./figures.js";
export { run, parseArgs } from "./cli.js";
