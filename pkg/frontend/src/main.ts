import { ApiClient } from "./api.js";
import { Studio, StudioElements } from "./studio.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function boot(): void {
  const apiBase = (window as { MATCHSTICKS_API?: string }).MATCHSTICKS_API
    ?? "http://127.0.0.1:8780";
  const elements: StudioElements = {
    canvas: el<HTMLCanvasElement>("drawing"),
    chart: el<HTMLCanvasElement>("trace"),
    badge: el("badge"),
    residual: el("residual"),
    monitor: el("monitor"),
    arclength: el("arclength"),
    error: el("error"),
    sliderBox: el("sliders"),
    steerButton: el<HTMLButtonElement>("steer"),
    resetButton: el<HTMLButtonElement>("reset"),
    targetInput: el<HTMLInputElement>("target"),
  };
  const studio = new Studio(new ApiClient(apiBase), elements);

  const fileInput = el<HTMLInputElement>("file");
  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (!file) {
      return;
    }
    void file.text().then((text) => studio.loadGraph(text));
  });
}

boot();
