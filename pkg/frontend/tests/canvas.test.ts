import { describe, expect, it } from "vitest";

import { HIT_RADIUS_PX, degreeColor, fitTransform, hitTest, toScreen } from "../src/canvasView.js";
import { chartLayout } from "../src/traceChart.js";
import type { Vec2 } from "../src/api.js";

const SQUARE: Vec2[] = [[0, 0], [2, 0], [2, 2], [0, 2]];

describe("fit transform", () => {
  it("fits all vertices inside the viewport with the margin", () => {
    const t = fitTransform(SQUARE, 400, 300, 24);
    for (const p of SQUARE) {
      const [sx, sy] = toScreen(t, p);
      expect(sx).toBeGreaterThanOrEqual(24 - 1e-9);
      expect(sx).toBeLessThanOrEqual(400 - 24 + 1e-9);
      expect(sy).toBeGreaterThanOrEqual(24 - 1e-9);
      expect(sy).toBeLessThanOrEqual(300 - 24 + 1e-9);
    }
  });

  it("centers the drawing", () => {
    const t = fitTransform(SQUARE, 400, 300);
    const [cx, cy] = toScreen(t, [1, 1]);
    expect(cx).toBeCloseTo(200, 9);
    expect(cy).toBeCloseTo(150, 9);
  });

  it("flips y so larger world y is up", () => {
    const t = fitTransform(SQUARE, 400, 300);
    const [, top] = toScreen(t, [1, 2]);
    const [, bottom] = toScreen(t, [1, 0]);
    expect(top).toBeLessThan(bottom);
  });
});

describe("hit testing", () => {
  it("picks the vertex within 8 px and rejects beyond", () => {
    const t = fitTransform(SQUARE, 400, 300);
    const [sx, sy] = toScreen(t, SQUARE[2]);
    expect(hitTest(SQUARE, t, sx + HIT_RADIUS_PX - 0.5, sy)).toBe(2);
    expect(hitTest(SQUARE, t, sx + HIT_RADIUS_PX + 1.5, sy)).toBeNull();
  });

  it("prefers the nearest vertex", () => {
    const pts: Vec2[] = [[0, 0], [0.02, 0]];
    const t = { scale: 1000, offsetX: 0, offsetY: 0 };
    expect(hitTest(pts, t, 14, 0)).toBe(1);
    expect(hitTest(pts, t, 5, 0)).toBe(0);
  });
});

describe("degree colors", () => {
  it("highlights the top degree", () => {
    expect(degreeColor(8, 8)).toBe("#d03030");
    expect(degreeColor(4, 8)).toBe("#3a6ea5");
  });
});

describe("trace chart layout", () => {
  it("maps the trace into pixel space with the target line", () => {
    const trace = [
      { step: 0, arclength: 0, monitor: 2.23, max_residual: 1e-14 },
      { step: 1, arclength: 0.5, monitor: 2.1, max_residual: 1e-14 },
      { step: 2, arclength: 1.0, monitor: 2.0, max_residual: 1e-14 },
    ];
    const layout = chartLayout(trace, 2.0, 300, 100, 20);
    expect(layout.points).toHaveLength(3);
    expect(layout.points[0][0]).toBeCloseTo(20, 9);
    expect(layout.points[2][0]).toBeCloseTo(280, 9);
    // the final monitor value sits on the target line
    expect(layout.points[2][1]).toBeCloseTo(layout.targetY, 9);
    // monotone: monitor decreasing means pixel y increasing (y down)
    expect(layout.points[0][1]).toBeLessThan(layout.points[2][1]);
  });
});
