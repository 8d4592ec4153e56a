/** PNG rasterization of the same draw ops through @napi-rs/canvas. */

import { DrawOp, Figure } from "./draw.js";

const FONT_PATHS = [
  "/usr/local/lib/python3.10/dist-packages/matplotlib/mpl-data/fonts/ttf/DejaVuSans.ttf",
  "/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf",
];

export async function figureToPng(fig: Figure): Promise<Buffer> {
  const canvasMod = await import("@napi-rs/canvas");
  const { createCanvas, GlobalFonts } = canvasMod;
  let family = "sans-serif";
  for (const p of FONT_PATHS) {
    try {
      if (GlobalFonts.registerFromPath(p, "DejaVu Sans")) {
        family = "DejaVu Sans";
        break;
      }
    } catch {
      // font file absent; labels fall back to the default face
    }
  }
  const canvas = createCanvas(fig.width, fig.height);
  const ctx = canvas.getContext("2d");
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, fig.width, fig.height);
  for (const op of fig.ops) {
    drawOp(ctx, op, family);
  }
  return canvas.toBuffer("image/png");
}

function drawOp(ctx: any, op: DrawOp, family: string): void {
  switch (op.kind) {
    case "line":
      ctx.strokeStyle = op.stroke;
      ctx.lineWidth = op.width;
      ctx.setLineDash(op.dash ?? []);
      ctx.beginPath();
      ctx.moveTo(op.x1, op.y1);
      ctx.lineTo(op.x2, op.y2);
      ctx.stroke();
      break;
    case "polyline":
      ctx.strokeStyle = op.stroke;
      ctx.lineWidth = op.width;
      ctx.setLineDash(op.dash ?? []);
      ctx.beginPath();
      op.points.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y)));
      ctx.stroke();
      break;
    case "circle":
      ctx.fillStyle = op.fill;
      ctx.beginPath();
      ctx.arc(op.cx, op.cy, op.r, 0, 2 * Math.PI);
      ctx.fill();
      break;
    case "text": {
      ctx.fillStyle = op.fill;
      ctx.font = `${op.size}px ${family}`;
      ctx.textAlign = op.anchor === "middle" ? "center" : op.anchor === "end" ? "right" : "left";
      ctx.fillText(op.text, op.x, op.y);
      break;
    }
  }
}
