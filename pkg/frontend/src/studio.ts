/** Studio controller: wires the API client, session state and canvas.
 * Everything rendered comes from the last server response. */

import { ApiClient } from "./api.js";
import type { SteerResponse, StepResponse } from "./api.js";
import { drawGraph, fitTransform, hitTest } from "./canvasView.js";
import { drawTrace } from "./traceChart.js";
import {
  SessionView,
  StepPump,
  applyCoordinates,
  matchesInitial,
  newSessionView,
  residualNeedsWarning,
  rigidityBadge,
  steeringEnabled,
  toggleSelection,
} from "./state.js";

export interface StudioElements {
  canvas: HTMLCanvasElement;
  chart: HTMLCanvasElement;
  badge: HTMLElement;
  residual: HTMLElement;
  monitor: HTMLElement;
  arclength: HTMLElement;
  error: HTMLElement;
  sliderBox: HTMLElement;
  steerButton: HTMLButtonElement;
  resetButton: HTMLButtonElement;
  targetInput: HTMLInputElement;
}

export class Studio {
  view: SessionView | null = null;
  pump: StepPump;
  private sliderPositions: number[] = [];

  constructor(private readonly api: ApiClient, private readonly el: StudioElements) {
    this.pump = new StepPump((modeIndex, h) => this.sendStep(modeIndex, h));
    this.el.steerButton.addEventListener("click", () => void this.steerToTarget());
    this.el.resetButton.addEventListener("click", () => void this.reset());
    this.el.canvas.addEventListener("click", (ev) => this.onCanvasClick(ev));
  }

  async loadGraph(msgText: string): Promise<void> {
    this.showError(null);
    try {
      const created = await this.api.createSession(msgText);
      const graph = await this.api.getGraph(created.session_id);
      this.view = newSessionView(created.session_id, graph.vertices, graph.edges, graph.markers);
      const report = await this.api.getReport(created.session_id);
      this.view.rigidity = report.rigidity;
      this.view.residual = report.max_residual;
      const modes = await this.api.getFlexModes(created.session_id);
      this.view.flexModeCount = modes.modes.length;
      this.buildSliders();
      this.render();
    } catch (err) {
      this.view = null;
      this.showError(err instanceof Error ? err.message : String(err));
    }
  }

  private buildSliders(): void {
    const view = this.view;
    this.el.sliderBox.textContent = "";
    this.sliderPositions = [];
    if (!view) {
      return;
    }
    for (let mode = 0; mode < view.flexModeCount; mode++) {
      const label = document.createElement("label");
      label.textContent = `flex mode ${mode}`;
      const slider = document.createElement("input");
      slider.type = "range";
      slider.min = "-100";
      slider.max = "100";
      slider.value = "0";
      slider.step = "1";
      slider.dataset.mode = String(mode);
      slider.disabled = !steeringEnabled(view);
      this.sliderPositions.push(0);
      slider.addEventListener("input", () => {
        const pos = Number(slider.value);
        const delta = (pos - this.sliderPositions[mode]) * 1e-3;
        this.sliderPositions[mode] = pos;
        if (delta !== 0) {
          this.pump.request(mode, delta);
        }
      });
      label.appendChild(slider);
      this.el.sliderBox.appendChild(label);
    }
    this.el.steerButton.disabled = !steeringEnabled(view);
  }

  private async sendStep(modeIndex: number, h: number): Promise<void> {
    const view = this.view;
    if (!view) {
      return;
    }
    try {
      const resp = await this.api.step(view.sessionId, modeIndex, h);
      this.applyStep(resp);
    } catch (err) {
      this.showError(err instanceof Error ? err.message : String(err));
    }
  }

  private applyStep(resp: StepResponse): void {
    const view = this.view;
    if (!view) {
      return;
    }
    applyCoordinates(view, resp.coordinates, resp.max_residual, resp.arclength);
    this.render();
  }

  async steerToTarget(): Promise<void> {
    const view = this.view;
    if (!view || view.selected.length !== 2) {
      this.showError("select two vertices to steer");
      return;
    }
    const target = Number(this.el.targetInput.value);
    if (!Number.isFinite(target) || target <= 0) {
      this.showError("target distance must be positive");
      return;
    }
    const [a, b] = view.selected;
    view.lastMonitor = { a, b, target, value: NaN };
    this.showError(null);
    try {
      const resp: SteerResponse = await this.api.steer(view.sessionId, a, b, target);
      view.trace = resp.trace;
      this.applyStep(resp);
    } catch (err) {
      this.showError(err instanceof Error ? err.message : String(err));
    }
  }

  async reset(): Promise<void> {
    const view = this.view;
    if (!view) {
      return;
    }
    try {
      const resp = await this.api.reset(view.sessionId);
      if (!matchesInitial(view, resp.coordinates)) {
        this.showError("reset echo does not match the initial coordinates");
      }
      view.trace = null;
      view.lastMonitor = null;
      this.sliderPositions = this.sliderPositions.map(() => 0);
      for (const slider of this.el.sliderBox.querySelectorAll("input")) {
        (slider as HTMLInputElement).value = "0";
      }
      this.applyStep(resp);
    } catch (err) {
      this.showError(err instanceof Error ? err.message : String(err));
    }
  }

  private onCanvasClick(ev: MouseEvent): void {
    const view = this.view;
    if (!view) {
      return;
    }
    const rect = this.el.canvas.getBoundingClientRect();
    const vertex = this.pickVertex(ev.clientX - rect.left, ev.clientY - rect.top);
    if (vertex !== null) {
      view.selected = toggleSelection(view.selected, vertex);
      this.render();
    }
  }

  pickVertex(px: number, py: number): number | null {
    const view = this.view;
    if (!view) {
      return null;
    }
    const t = fitTransform(view.vertices, this.el.canvas.width, this.el.canvas.height);
    return hitTest(view.vertices, t, px, py);
  }

  render(): void {
    const view = this.view;
    if (!view) {
      return;
    }
    this.el.badge.textContent = rigidityBadge(view);
    this.el.badge.classList.toggle("flexible", steeringEnabled(view));
    const warn = residualNeedsWarning(view.residual);
    this.el.residual.textContent = `max residual ${view.residual.toExponential(2)}`;
    this.el.residual.classList.toggle("warning", warn);
    this.el.arclength.textContent = `arclength ${view.arclength.toFixed(6)}`;
    if (view.lastMonitor && Number.isFinite(view.lastMonitor.value)) {
      const err = Math.abs(view.lastMonitor.value - view.lastMonitor.target);
      this.el.monitor.textContent =
        `dist(${view.lastMonitor.a},${view.lastMonitor.b}) = `
        + `${view.lastMonitor.value.toFixed(12)} (|d-target| = ${err.toExponential(2)})`;
    } else if (view.selected.length === 2) {
      this.el.monitor.textContent = `selected pair ${view.selected[0]}, ${view.selected[1]}`;
    } else {
      this.el.monitor.textContent = "click two vertices to pick a pair";
    }
    const ctx = this.el.canvas.getContext("2d");
    if (ctx) {
      drawGraph(ctx, this.el.canvas.width, this.el.canvas.height, view.vertices, view.edges, {
        selected: view.selected,
        degrees: view.degrees,
        maxDegree: view.maxDegree,
      });
    }
    const chartCtx = this.el.chart.getContext("2d");
    if (chartCtx && view.trace && view.lastMonitor) {
      drawTrace(chartCtx, this.el.chart.width, this.el.chart.height,
                view.trace, view.lastMonitor.target);
    }
  }

  private showError(message: string | null): void {
    this.el.error.textContent = message ?? "";
    this.el.error.classList.toggle("visible", message !== null);
  }
}
