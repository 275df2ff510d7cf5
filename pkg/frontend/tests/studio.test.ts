// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Studio, StudioElements } from "../src/studio.js";
import type { Vec2 } from "../src/api.js";

const SQUARE: Vec2[] = [[0, 0], [1, 0], [1, 1], [0, 1]];
const SQUARE_EDGES: [number, number][] = [[0, 1], [1, 2], [2, 3], [3, 0]];
// steered 120/60-degree rhombus: diagonal(0,2) = sqrt(3) ~ target
const RHOMBUS: Vec2[] = [[0, 0], [1, 0], [1.5, Math.sqrt(3) / 2], [0.5, Math.sqrt(3) / 2]];

interface Route {
  match: (url: string, method: string) => boolean;
  respond: (body: unknown) => { status: number; body: unknown };
}

function mockServer(opts: { rigid: boolean }) {
  const log: string[] = [];
  const flexible = !opts.rigid;
  const steerTarget = 2.0;
  const routes: Route[] = [
    {
      match: (url, m) => m === "POST" && url.endsWith("/sessions"),
      respond: () => ({ status: 201, body: { session_id: "fff", n_vertices: 4, n_edges: 4 } }),
    },
    {
      match: (url, m) => m === "GET" && url.endsWith("/graph"),
      respond: () => ({
        status: 200,
        body: { vertices: SQUARE, edges: SQUARE_EDGES, markers: { a: 0, b: 2 } },
      }),
    },
    {
      match: (url, m) => m === "GET" && url.endsWith("/report"),
      respond: () => ({
        status: 200,
        body: {
          verification: { overall: true, unit_ok: true, crossing_ok: true },
          rigidity: {
            rank: flexible ? 4 : 5,
            internal_dof: flexible ? 1 : 0,
            classification: flexible ? "flexible" : "rigid",
            gap_ratio: 1e13,
            ill_conditioned: false,
            unrefined_input: false,
          },
          max_residual: 2.5e-13,
        },
      }),
    },
    {
      match: (url, m) => m === "GET" && url.endsWith("/flexmodes"),
      respond: () => ({
        status: 200,
        body: { modes: flexible ? [Array.from({ length: 8 }, (_, k) => (k % 2 ? 0.25 : -0.25))] : [] },
      }),
    },
    {
      match: (url, m) => m === "POST" && url.endsWith("/step"),
      respond: () => ({
        status: 200,
        body: { coordinates: RHOMBUS, max_residual: 3.1e-14, arclength: 0.01 },
      }),
    },
    {
      match: (url, m) => m === "POST" && url.endsWith("/steer"),
      respond: () => ({
        status: 200,
        body: {
          coordinates: RHOMBUS.map((p) => [p[0] * (2 / Math.sqrt(3)), p[1] * (2 / Math.sqrt(3))]),
          max_residual: 4.2e-15,
          arclength: 0.52,
          monitor: steerTarget - 3.6e-10,
          target: steerTarget,
          trace: [
            { step: 0, arclength: 0, monitor: Math.SQRT2, max_residual: 0 },
            { step: 1, arclength: 0.3, monitor: 1.8, max_residual: 8.0e-13 },
            { step: 2, arclength: 0.52, monitor: steerTarget - 3.6e-10, max_residual: 4.2e-15 },
          ],
        },
      }),
    },
    {
      match: (url, m) => m === "POST" && url.endsWith("/reset"),
      respond: () => ({
        status: 200,
        body: { coordinates: SQUARE, max_residual: 0, arclength: 0 },
      }),
    },
  ];
  const impl = async (url: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    log.push(`${method} ${url.replace(/^http:\/\/[^/]+/, "")}`);
    const route = routes.find((r) => r.match(url, method));
    const out = route
      ? route.respond(init?.body ? JSON.parse(init.body as string) : {})
      : { status: 404, body: { error: `no route ${url}` } };
    return {
      ok: out.status < 300,
      status: out.status,
      json: async () => out.body,
    } as Response;
  };
  return { impl, log };
}

function buildDom(): StudioElements {
  document.body.innerHTML = `
    <canvas id="drawing" width="800" height="600"></canvas>
    <canvas id="trace" width="800" height="160"></canvas>
    <span id="badge"></span>
    <div id="residual"></div>
    <div id="monitor"></div>
    <div id="arclength"></div>
    <div id="error"></div>
    <div id="sliders"></div>
    <button id="steer"></button>
    <button id="reset"></button>
    <input id="target" value="2">
  `;
  const get = (id: string) => document.getElementById(id)!;
  return {
    canvas: get("drawing") as HTMLCanvasElement,
    chart: get("trace") as HTMLCanvasElement,
    badge: get("badge"),
    residual: get("residual"),
    monitor: get("monitor"),
    arclength: get("arclength"),
    error: get("error"),
    sliderBox: get("sliders"),
    steerButton: get("steer") as HTMLButtonElement,
    resetButton: get("reset") as HTMLButtonElement,
    targetInput: get("target") as HTMLInputElement,
  };
}

describe("studio", () => {
  let elements: StudioElements;

  beforeEach(() => {
    // jsdom has no canvas rasterizer; the studio skips drawing on null
    (HTMLCanvasElement.prototype as unknown as { getContext: () => null }).getContext = () => null;
    elements = buildDom();
  });

  it("shows a rigid badge and disables steering for rigid graphs", async () => {
    const { impl } = mockServer({ rigid: true });
    const studio = new Studio(new ApiClient("http://h:1", impl), elements);
    await studio.loadGraph("v 0 0 0\n");
    expect(elements.badge.textContent).toBe("rigid, dof 0");
    expect(elements.steerButton.disabled).toBe(true);
    expect(elements.sliderBox.querySelectorAll("input")).toHaveLength(0);
  });

  it("enables sliders and steering for flexible graphs", async () => {
    const { impl } = mockServer({ rigid: false });
    const studio = new Studio(new ApiClient("http://h:1", impl), elements);
    await studio.loadGraph("v 0 0 0\n");
    expect(elements.badge.textContent).toBe("flexible, dof 1");
    expect(elements.steerButton.disabled).toBe(false);
    const sliders = elements.sliderBox.querySelectorAll("input");
    expect(sliders).toHaveLength(1);
    expect((sliders[0] as HTMLInputElement).disabled).toBe(false);
  });

  it("steers the selected pair to the target and stays warning-free", async () => {
    const { impl, log } = mockServer({ rigid: false });
    const studio = new Studio(new ApiClient("http://h:1", impl), elements);
    await studio.loadGraph("v 0 0 0\n");
    studio.view!.selected = [0, 2];
    elements.targetInput.value = "2";
    await studio.steerToTarget();
    expect(log).toContain("POST /sessions/fff/steer");
    // the displayed pair distance satisfies |d - target| <= 1e-9
    expect(elements.monitor.textContent).toContain("|d-target|");
    const err = Math.abs(studio.view!.lastMonitor!.value - 2);
    expect(err).toBeLessThanOrEqual(1e-9);
    // warning-free residual readout throughout
    expect(elements.residual.classList.contains("warning")).toBe(false);
    expect(studio.view!.trace!.every((t) => t.max_residual <= 1e-8)).toBe(true);
  });

  it("renders only server coordinates after a step", async () => {
    const { impl } = mockServer({ rigid: false });
    const studio = new Studio(new ApiClient("http://h:1", impl), elements);
    await studio.loadGraph("v 0 0 0\n");
    studio.pump.request(0, 0.01);
    await new Promise((r) => setTimeout(r, 0));
    expect(studio.view!.vertices).toEqual(RHOMBUS);
    expect(elements.residual.textContent).toContain("3.10e-14");
  });

  it("reset restores the exact initial coordinates", async () => {
    const { impl } = mockServer({ rigid: false });
    const studio = new Studio(new ApiClient("http://h:1", impl), elements);
    await studio.loadGraph("v 0 0 0\n");
    studio.pump.request(0, 0.01);
    await new Promise((r) => setTimeout(r, 0));
    await studio.reset();
    expect(studio.view!.vertices).toEqual(SQUARE);
    expect(elements.error.textContent).toBe("");
  });

  it("surfaces server rejections verbatim", async () => {
    const { impl } = mockServer({ rigid: false });
    const failing = async (url: string, init?: RequestInit) => {
      if (url.endsWith("/sessions")) {
        return {
          ok: false,
          status: 400,
          json: async () => ({ error: "line 1: unknown directive 'x'" }),
        } as Response;
      }
      return impl(url, init);
    };
    const studio = new Studio(new ApiClient("http://h:1", failing), elements);
    await studio.loadGraph("x nonsense\n");
    expect(elements.error.textContent).toBe("line 1: unknown directive 'x'");
    expect(elements.error.classList.contains("visible")).toBe(true);
    expect(studio.view).toBeNull();
  });

  it("residual readout warns above 1e-8", async () => {
    const { impl } = mockServer({ rigid: false });
    const driftImpl = async (url: string, init?: RequestInit) => {
      if (url.endsWith("/step")) {
        return {
          ok: true,
          status: 200,
          json: async () => ({ coordinates: SQUARE, max_residual: 5e-7, arclength: 0.2 }),
        } as Response;
      }
      return impl(url, init);
    };
    const studio = new Studio(new ApiClient("http://h:1", driftImpl), elements);
    await studio.loadGraph("v 0 0 0\n");
    studio.pump.request(0, 0.01);
    await new Promise((r) => setTimeout(r, 0));
    expect(elements.residual.classList.contains("warning")).toBe(true);
  });
});
