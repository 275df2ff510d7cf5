import { describe, expect, it } from "vitest";

import {
  RESIDUAL_WARN,
  StepPump,
  applyCoordinates,
  computeDegrees,
  matchesInitial,
  newSessionView,
  pairDistance,
  residualNeedsWarning,
  rigidityBadge,
  steeringEnabled,
  toggleSelection,
} from "../src/state.js";
import type { Vec2 } from "../src/api.js";

const SQUARE: Vec2[] = [[0, 0], [1, 0], [1, 1], [0, 1]];
const SQUARE_EDGES: [number, number][] = [[0, 1], [1, 2], [2, 3], [3, 0]];

function squareView() {
  return newSessionView("s1", SQUARE.map((v) => [...v] as Vec2), SQUARE_EDGES, { a: 0 });
}

describe("session view", () => {
  it("computes degrees and max degree", () => {
    expect(computeDegrees(4, SQUARE_EDGES)).toEqual([2, 2, 2, 2]);
    const view = squareView();
    expect(view.maxDegree).toBe(2);
  });

  it("rendered positions equal the last server response", () => {
    const view = squareView();
    const next: Vec2[] = [[0, 0], [1, 0], [1.1, 0.9], [0.1, 0.9]];
    applyCoordinates(view, next, 1e-12, 0.05);
    expect(view.vertices).toBe(next); // exact object, no client-side physics
    expect(view.residual).toBe(1e-12);
    expect(view.arclength).toBe(0.05);
  });

  it("keeps the monitor readout in sync with coordinates", () => {
    const view = squareView();
    view.lastMonitor = { a: 0, b: 2, target: 2, value: NaN };
    applyCoordinates(view, SQUARE, 0, 0);
    expect(view.lastMonitor.value).toBeCloseTo(Math.SQRT2, 12);
  });

  it("warns exactly above the residual threshold", () => {
    expect(residualNeedsWarning(RESIDUAL_WARN)).toBe(false);
    expect(residualNeedsWarning(RESIDUAL_WARN * 1.01)).toBe(true);
    expect(residualNeedsWarning(0)).toBe(false);
  });

  it("selection keeps at most two vertices", () => {
    let sel: number[] = [];
    sel = toggleSelection(sel, 3);
    sel = toggleSelection(sel, 1);
    sel = toggleSelection(sel, 2);
    expect(sel).toEqual([1, 2]);
    sel = toggleSelection(sel, 1);
    expect(sel).toEqual([2]);
  });

  it("badge and steering follow the rigidity report", () => {
    const view = squareView();
    expect(rigidityBadge(view)).toBe("analyzing...");
    view.rigidity = { rank: 101, internal_dof: 0, classification: "rigid",
                      gap_ratio: 1e13, ill_conditioned: false, unrefined_input: false };
    expect(rigidityBadge(view)).toBe("rigid, dof 0");
    expect(steeringEnabled(view)).toBe(false);
    view.rigidity = { ...view.rigidity, internal_dof: 1, classification: "flexible" };
    expect(rigidityBadge(view)).toBe("flexible, dof 1");
    expect(steeringEnabled(view)).toBe(true);
  });

  it("compares reset echo field by field", () => {
    const view = squareView();
    expect(matchesInitial(view, SQUARE.map((v) => [...v] as Vec2))).toBe(true);
    const off = SQUARE.map((v) => [...v] as Vec2);
    off[2][0] += 1e-15;
    expect(matchesInitial(view, off)).toBe(false);
    expect(matchesInitial(view, SQUARE.slice(0, 3))).toBe(false);
  });

  it("pairDistance is plain Euclidean", () => {
    expect(pairDistance(SQUARE, 0, 2)).toBeCloseTo(Math.SQRT2, 15);
  });
});

describe("step pump", () => {
  it("serializes requests and coalesces intermediate drags", async () => {
    const sent: Array<[number, number]> = [];
    let release: (() => void) | null = null;
    const pump = new StepPump(async (mode, h) => {
      sent.push([mode, h]);
      await new Promise<void>((resolve) => {
        release = resolve;
      });
    });
    pump.request(0, 0.01); // goes out immediately
    expect(sent).toEqual([[0, 0.01]]);
    pump.request(0, 0.01); // queued
    pump.request(0, 0.02); // coalesced into the queued one
    pump.request(0, 0.03);
    expect(pump.dropped).toBe(2);
    release!();
    await new Promise((r) => setTimeout(r, 0));
    expect(sent.length).toBe(2);
    expect(sent[1][1]).toBeCloseTo(0.06, 12); // accumulated step
    release!();
    await new Promise((r) => setTimeout(r, 0));
    expect(pump.idle).toBe(true);
    expect(sent.length).toBe(2);
  });
});
