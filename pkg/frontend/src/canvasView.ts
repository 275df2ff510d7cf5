/** Canvas rendering: fit-to-viewport transform, degree-colored vertices,
 * pixel hit testing. Pure math lives in exported functions so it can be
 * tested without a rasterizer. */

import type { EdgePair, Vec2 } from "./api.js";

export const HIT_RADIUS_PX = 8;

export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/** World -> screen transform fitting all vertices with a margin; the y axis
 * flips so larger world y is up. */
export function fitTransform(vertices: Vec2[], width: number, height: number,
                             marginPx = 24): ViewTransform {
  let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
  for (const [x, y] of vertices) {
    minX = Math.min(minX, x);
    maxX = Math.max(maxX, x);
    minY = Math.min(minY, y);
    maxY = Math.max(maxY, y);
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min((width - 2 * marginPx) / spanX, (height - 2 * marginPx) / spanY);
  const cx = (minX + maxX) / 2;
  const cy = (minY + maxY) / 2;
  return {
    scale,
    offsetX: width / 2 - scale * cx,
    offsetY: height / 2 + scale * cy,
  };
}

export function toScreen(t: ViewTransform, p: Vec2): Vec2 {
  return [t.scale * p[0] + t.offsetX, -t.scale * p[1] + t.offsetY];
}

/** Vertex under the pointer within HIT_RADIUS_PX, or null. */
export function hitTest(vertices: Vec2[], t: ViewTransform,
                        px: number, py: number): number | null {
  let best: number | null = null;
  let bestD = HIT_RADIUS_PX;
  for (let v = 0; v < vertices.length; v++) {
    const [sx, sy] = toScreen(t, vertices[v]);
    const d = Math.hypot(sx - px, sy - py);
    if (d <= bestD) {
      bestD = d;
      best = v;
    }
  }
  return best;
}

/** Vertices of the top degree get the highlight color (the degree profile
 * is the whole point of these graphs). */
export function degreeColor(degree: number, maxDegree: number): string {
  if (degree === maxDegree && maxDegree > 0) {
    return "#d03030";
  }
  return "#3a6ea5";
}

export interface DrawOptions {
  selected: number[];
  degrees: number[];
  maxDegree: number;
}

export function drawGraph(ctx: CanvasRenderingContext2D, width: number, height: number,
                          vertices: Vec2[], edges: EdgePair[], opts: DrawOptions): void {
  const t = fitTransform(vertices, width, height);
  ctx.clearRect(0, 0, width, height);
  ctx.lineWidth = 1.5;
  ctx.strokeStyle = "#222";
  ctx.beginPath();
  for (const [i, j] of edges) {
    const [x1, y1] = toScreen(t, vertices[i]);
    const [x2, y2] = toScreen(t, vertices[j]);
    ctx.moveTo(x1, y1);
    ctx.lineTo(x2, y2);
  }
  ctx.stroke();
  for (let v = 0; v < vertices.length; v++) {
    const [x, y] = toScreen(t, vertices[v]);
    ctx.beginPath();
    ctx.fillStyle = degreeColor(opts.degrees[v] ?? 0, opts.maxDegree);
    ctx.arc(x, y, 3.4, 0, 2 * Math.PI);
    ctx.fill();
    if (opts.selected.includes(v)) {
      ctx.beginPath();
      ctx.strokeStyle = "#d08020";
      ctx.lineWidth = 2;
      ctx.arc(x, y, HIT_RADIUS_PX, 0, 2 * Math.PI);
      ctx.stroke();
      ctx.lineWidth = 1.5;
      ctx.strokeStyle = "#222";
    }
  }
}
