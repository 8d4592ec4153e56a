/** Deterministic SVG writer: fixed formatting, no timestamps, no ids. */

import { DrawOp, Figure } from "./draw.js";

const FONT = "DejaVu Sans, Helvetica, Arial, sans-serif";

function n(v: number): string {
  // fixed short representation; avoids -0 and exponent jitter
  const r = Math.round(v * 100) / 100;
  return (Object.is(r, -0) ? 0 : r).toString();
}

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function opToSvg(op: DrawOp): string {
  switch (op.kind) {
    case "line": {
      const dash = op.dash ? ` stroke-dasharray="${op.dash.map(n).join(",")}"` : "";
      return `<line x1="${n(op.x1)}" y1="${n(op.y1)}" x2="${n(op.x2)}" y2="${n(op.y2)}" stroke="${op.stroke}" stroke-width="${n(op.width)}"${dash}/>`;
    }
    case "polyline": {
      const pts = op.points.map(([x, y]) => `${n(x)},${n(y)}`).join(" ");
      const dash = op.dash ? ` stroke-dasharray="${op.dash.map(n).join(",")}"` : "";
      return `<polyline points="${pts}" fill="none" stroke="${op.stroke}" stroke-width="${n(op.width)}"${dash}/>`;
    }
    case "circle":
      return `<circle cx="${n(op.cx)}" cy="${n(op.cy)}" r="${n(op.r)}" fill="${op.fill}"/>`;
    case "text":
      return `<text x="${n(op.x)}" y="${n(op.y)}" font-family="${FONT}" font-size="${n(op.size)}" text-anchor="${op.anchor}" fill="${op.fill}">${esc(op.text)}</text>`;
  }
}

export function figureToSvg(fig: Figure): string {
  const body = fig.ops.map(opToSvg).join("\n  ");
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${fig.width}" height="${fig.height}" viewBox="0 0 ${fig.width} ${fig.height}">`,
    `  <rect width="${fig.width}" height="${fig.height}" fill="#ffffff"/>`,
    `  ${body}`,
    `</svg>`,
    ``,
  ].join("\n");
}
