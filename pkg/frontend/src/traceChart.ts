/** Monitor-vs-arclength chart for steering traces. */

import type { TracePoint, Vec2 } from "./api.js";

export interface ChartLayout {
  points: Vec2[]; // pixel coordinates of the polyline
  targetY: number; // pixel y of the target line
}

export function chartLayout(trace: TracePoint[], target: number,
                            width: number, height: number, margin = 20): ChartLayout {
  const xs = trace.map((t) => t.arclength);
  const ys = trace.map((t) => t.monitor).concat([target]);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs, minX + 1e-9);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys, minY + 1e-9);
  const sx = (width - 2 * margin) / (maxX - minX);
  const sy = (height - 2 * margin) / (maxY - minY);
  const px = (x: number): number => margin + sx * (x - minX);
  const py = (y: number): number => height - margin - sy * (y - minY);
  return {
    points: trace.map((t) => [px(t.arclength), py(t.monitor)] as Vec2),
    targetY: py(target),
  };
}

export function drawTrace(ctx: CanvasRenderingContext2D, width: number, height: number,
                          trace: TracePoint[], target: number): void {
  ctx.clearRect(0, 0, width, height);
  if (trace.length === 0) {
    return;
  }
  const layout = chartLayout(trace, target, width, height);
  ctx.strokeStyle = "#b0b0b0";
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(0, layout.targetY);
  ctx.lineTo(width, layout.targetY);
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.strokeStyle = "#3a6ea5";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  layout.points.forEach(([x, y], k) => {
    if (k === 0) {
      ctx.moveTo(x, y);
    } else {
      ctx.lineTo(x, y);
    }
  });
  ctx.stroke();
}
