/** Session view state. Rendered positions always equal the last server
 * response; the client performs no physics of its own. */

import type { EdgePair, RigidityInfo, TracePoint, Vec2 } from "./api.js";

// residuals above this need a visible warning state in the UI
export const RESIDUAL_WARN = 1e-8;

export interface SessionView {
  sessionId: string;
  vertices: Vec2[];
  initialVertices: Vec2[];
  edges: EdgePair[];
  markers: Record<string, number>;
  degrees: number[];
  maxDegree: number;
  rigidity: RigidityInfo | null;
  flexModeCount: number;
  selected: number[];
  residual: number;
  arclength: number;
  trace: TracePoint[] | null;
  lastMonitor: { a: number; b: number; target: number; value: number } | null;
}

export function computeDegrees(nVertices: number, edges: EdgePair[]): number[] {
  const deg = new Array<number>(nVertices).fill(0);
  for (const [i, j] of edges) {
    deg[i] += 1;
    deg[j] += 1;
  }
  return deg;
}

export function newSessionView(
  sessionId: string,
  vertices: Vec2[],
  edges: EdgePair[],
  markers: Record<string, number>,
): SessionView {
  const degrees = computeDegrees(vertices.length, edges);
  return {
    sessionId,
    vertices,
    initialVertices: vertices.map((v) => [v[0], v[1]]),
    edges,
    markers,
    degrees,
    maxDegree: degrees.length ? Math.max(...degrees) : 0,
    rigidity: null,
    flexModeCount: 0,
    selected: [],
    residual: 0,
    arclength: 0,
    trace: null,
    lastMonitor: null,
  };
}

export function applyCoordinates(view: SessionView, coordinates: Vec2[],
                                 residual: number, arclength: number): void {
  view.vertices = coordinates;
  view.residual = residual;
  view.arclength = arclength;
  if (view.lastMonitor) {
    view.lastMonitor.value = pairDistance(coordinates, view.lastMonitor.a, view.lastMonitor.b);
  }
}

export function residualNeedsWarning(residual: number): boolean {
  return residual > RESIDUAL_WARN;
}

export function pairDistance(vertices: Vec2[], a: number, b: number): number {
  const dx = vertices[a][0] - vertices[b][0];
  const dy = vertices[a][1] - vertices[b][1];
  return Math.hypot(dx, dy);
}

/** Toggle a vertex in the steering selection, keeping at most two. */
export function toggleSelection(selected: number[], vertex: number): number[] {
  if (selected.includes(vertex)) {
    return selected.filter((v) => v !== vertex);
  }
  const next = [...selected, vertex];
  return next.length > 2 ? next.slice(next.length - 2) : next;
}

export function steeringEnabled(view: SessionView): boolean {
  return view.rigidity !== null && view.rigidity.internal_dof > 0;
}

export function rigidityBadge(view: SessionView): string {
  if (!view.rigidity) {
    return "analyzing...";
  }
  return `${view.rigidity.classification}, dof ${view.rigidity.internal_dof}`;
}

/** Reset is only trusted when the server echo matches the initial
 * coordinates field by field. */
export function matchesInitial(view: SessionView, echoed: Vec2[]): boolean {
  if (echoed.length !== view.initialVertices.length) {
    return false;
  }
  for (let i = 0; i < echoed.length; i++) {
    if (echoed[i][0] !== view.initialVertices[i][0]
        || echoed[i][1] !== view.initialVertices[i][1]) {
      return false;
    }
  }
  return true;
}

/** Serializes flex-step requests: at most one in flight, and while busy the
 * latest request replaces any queued one (intermediate drags are dropped,
 * their step sizes accumulated so the slider does not lag). */
export class StepPump {
  private inFlight = false;
  private pending: { modeIndex: number; h: number } | null = null;
  dropped = 0;

  constructor(private readonly send: (modeIndex: number, h: number) => Promise<void>) {}

  request(modeIndex: number, h: number): void {
    if (this.pending && this.pending.modeIndex === modeIndex) {
      this.pending.h += h;
      this.dropped += 1;
    } else {
      if (this.pending) {
        this.dropped += 1;
      }
      this.pending = { modeIndex, h };
    }
    void this.flush();
  }

  private async flush(): Promise<void> {
    if (this.inFlight || !this.pending) {
      return;
    }
    const next = this.pending;
    this.pending = null;
    this.inFlight = true;
    try {
      await this.send(next.modeIndex, next.h);
    } finally {
      this.inFlight = false;
      void this.flush();
    }
  }

  get idle(): boolean {
    return !this.inFlight && this.pending === null;
  }
}
