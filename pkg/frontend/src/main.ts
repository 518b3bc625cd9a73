/** Canvas app wiring: toolbar, pointer handling, report panel. */

import { ApiClient, ApiError } from "./api.js";
import { colorOf } from "./colors.js";
import { nextName, serialize } from "./dsl.js";
import { fitViewport, renderScene, toWorld, Viewport } from "./render.js";
import { buildScene } from "./scene.js";
import {
  addStep,
  applyCoordinates,
  dragFreePoint,
  exportText,
  importText,
  initialState,
  nearestPoint,
  Tool,
  undo,
  UiState,
} from "./state.js";
import { CircleRef, Step } from "./types.js";

const TOOLS: { id: Tool; label: string; hint: string }[] = [
  { id: "drag", label: "Drag", hint: "drag a free point" },
  { id: "select", label: "Select", hint: "click a point, then press Discover" },
  { id: "point", label: "Point", hint: "click to place a free point" },
  { id: "midpoint", label: "Midpoint", hint: "click two points" },
  { id: "segment-intersect", label: "Intersect", hint: "click four points: A B (first line), C D (second line)" },
  { id: "circle", label: "Circle", hint: "click center, then a point on the circle" },
  { id: "circumcircle", label: "Circumcircle", hint: "click three points" },
  { id: "foot", label: "Foot", hint: "click the point, then the two base points" },
  { id: "polygon", label: "Polygon", hint: "click the first two vertices" },
];

class App {
  state: UiState = initialState();
  api = new ApiClient();
  view: Viewport = { scale: 40, ox: 360, oy: 300 };
  pending: string[] = [];
  dragging: string | null = null;
  target: string | null = null;
  canvas: HTMLCanvasElement;
  ctx: CanvasRenderingContext2D;

  constructor() {
    this.canvas = document.getElementById("canvas") as HTMLCanvasElement;
    this.ctx = this.canvas.getContext("2d")!;
    this.buildToolbar();
    this.bindCanvas();
    this.bindButtons();
    this.setStatus("place points, build a construction, select a point and press Discover");
    this.repaint();
  }

  // -- ui helpers ---------------------------------------------------------

  setStatus(text: string, isError = false): void {
    const el = document.getElementById("status")!;
    el.textContent = text;
    el.className = isError ? "error" : "";
  }

  buildToolbar(): void {
    const bar = document.getElementById("toolbar")!;
    for (const tool of TOOLS) {
      const btn = document.createElement("button");
      btn.textContent = tool.label;
      btn.id = `tool-${tool.id}`;
      btn.onclick = () => {
        this.state.tool = tool.id;
        this.pending = [];
        this.setStatus(tool.hint);
        this.markActiveTool();
      };
      bar.appendChild(btn);
    }
    this.markActiveTool();
  }

  markActiveTool(): void {
    for (const tool of TOOLS) {
      const el = document.getElementById(`tool-${tool.id}`);
      if (el) el.classList.toggle("active", this.state.tool === tool.id);
    }
  }

  bindButtons(): void {
    (document.getElementById("discover") as HTMLButtonElement).onclick = () => this.discover();
    (document.getElementById("undo") as HTMLButtonElement).onclick = () => {
      undo(this.state);
      void this.refresh();
    };
    (document.getElementById("export") as HTMLButtonElement).onclick = () => {
      const area = document.getElementById("dsl") as HTMLTextAreaElement;
      area.value = exportText(this.state, this.target ?? undefined);
    };
    (document.getElementById("import") as HTMLButtonElement).onclick = () => {
      const area = document.getElementById("dsl") as HTMLTextAreaElement;
      try {
        const target = importText(this.state, area.value);
        if (target) this.target = target;
        void this.refresh(true);
      } catch (err) {
        this.setStatus(String(err), true);
      }
    };
  }

  bindCanvas(): void {
    this.canvas.addEventListener("pointerdown", (ev) => this.onDown(ev));
    this.canvas.addEventListener("pointermove", (ev) => this.onMove(ev));
    this.canvas.addEventListener("pointerup", () => (this.dragging = null));
    this.canvas.addEventListener("pointerleave", () => (this.dragging = null));
  }

  worldOf(ev: PointerEvent): [number, number] {
    const rect = this.canvas.getBoundingClientRect();
    return toWorld(this.view, ev.clientX - rect.left, ev.clientY - rect.top);
  }

  // -- interactions ------------------------------------------------------------

  onDown(ev: PointerEvent): void {
    const [x, y] = this.worldOf(ev);
    const hit = nearestPoint(this.state, x, y, 12 / this.view.scale);
    const tool = this.state.tool;
    if (tool === "drag") {
      if (hit) this.dragging = hit;
      return;
    }
    if (tool === "select") {
      if (hit) {
        this.target = hit;
        this.setStatus(`target: ${hit} — press Discover`);
        this.repaint();
      }
      return;
    }
    if (tool === "point") {
      const name = nextName(this.state.steps);
      addStep(this.state, { op: "point", name, x: x.toFixed(3), y: y.toFixed(3) });
      void this.refresh();
      return;
    }
    if (!hit) return;
    this.pending.push(hit);
    const need: Record<string, number> = {
      midpoint: 2,
      "segment-intersect": 4,
      circle: 2,
      circumcircle: 3,
      foot: 3,
      polygon: 2,
    };
    const wanted = need[tool];
    this.setStatus(`${tool}: ${this.pending.join(", ")} (${this.pending.length}/${wanted})`);
    if (this.pending.length < wanted) return;
    const picks = this.pending;
    this.pending = [];
    const name = nextName(this.state.steps);
    let step: Step | null = null;
    if (tool === "midpoint") {
      step = { op: "midpoint", name, a: picks[0], b: picks[1] };
    } else if (tool === "segment-intersect") {
      step = {
        op: "intersect",
        name,
        l1: { kind: "through", a: picks[0], b: picks[1] },
        l2: { kind: "through", a: picks[2], b: picks[3] },
      };
    } else if (tool === "circle") {
      const circle: CircleRef = { kind: "center_point", points: [picks[0], picks[1]] };
      step = { op: "circle_def", name: name.toLowerCase(), circle };
    } else if (tool === "circumcircle") {
      const circle: CircleRef = { kind: "through3", points: picks };
      step = { op: "circle_def", name: name.toLowerCase(), circle };
    } else if (tool === "foot") {
      step = { op: "foot", name, point: picks[0], a: picks[1], b: picks[2] };
    } else if (tool === "polygon") {
      const sides = Number((document.getElementById("sides") as HTMLInputElement).value) || 6;
      const names: string[] = [];
      let working = [...this.state.steps];
      for (let k = 2; k < sides; k++) {
        const vertex = nextName(working);
        names.push(vertex);
        working = [...working, { op: "point", name: vertex, x: "0", y: "0" }];
      }
      step = { op: "polygon", a: picks[0], b: picks[1], n: sides, names };
    }
    if (step) {
      addStep(this.state, step);
      void this.refresh();
    }
  }

  onMove(ev: PointerEvent): void {
    if (!this.dragging) return;
    const [x, y] = this.worldOf(ev);
    if (dragFreePoint(this.state, this.dragging, x, y)) {
      void this.refreshDrag();
    }
  }

  // -- server round-trips ----------------------------------------------------------

  async refresh(refit = false): Promise<void> {
    if (!this.state.steps.length) {
      this.state.coordinates = {};
      this.repaint();
      return;
    }
    try {
      const resp = await this.api.evaluateNow(serialize(this.state.steps));
      if (resp) {
        applyCoordinates(this.state, resp.coordinates);
        if (refit) this.fit();
        this.repaint();
      }
    } catch (err) {
      this.reportError(err);
    }
  }

  async refreshDrag(): Promise<void> {
    try {
      const resp = await this.api.evaluateDebounced(serialize(this.state.steps));
      if (resp) {
        applyCoordinates(this.state, resp.coordinates);
        this.repaint();
      }
    } catch (err) {
      this.reportError(err);
    }
  }

  async discover(): Promise<void> {
    if (!this.target) {
      this.setStatus("pick a target point first (Select tool)", true);
      return;
    }
    if (this.api.busy) return;
    const btn = document.getElementById("discover") as HTMLButtonElement;
    btn.disabled = true;
    this.setStatus(`discovering theorems about ${this.target}…`);
    const started = Date.now();
    const countdown = setInterval(() => {
      const left = Math.max(0, 60 - Math.round((Date.now() - started) / 1000));
      this.setStatus(`discovering theorems about ${this.target}… (cap ${left}s)`);
    }, 1000);
    try {
      const resp = await this.api.discover(serialize(this.state.steps), this.target);
      this.state.report = resp.report;
      applyCoordinates(this.state, resp.coordinates);
      this.renderReportPanel();
      this.setStatus(
        resp.report.halted
          ? "discovery halted — see the notice"
          : `${resp.report.theorems.length} theorem group(s) found`
      );
      this.repaint();
    } catch (err) {
      this.reportError(err);
    } finally {
      clearInterval(countdown);
      btn.disabled = false;
    }
  }

  reportError(err: unknown): void {
    if (err instanceof ApiError) {
      const d = err.detail as { detail?: { message?: string; line?: number } } | undefined;
      const inner = d && (d as { detail?: unknown }).detail;
      this.setStatus(`server error ${err.status}: ${JSON.stringify(inner)}`, true);
    } else {
      this.setStatus(String(err), true);
    }
  }

  // -- drawing -----------------------------------------------------------------------

  fit(): void {
    this.view = fitViewport(this.state.coordinates, this.canvas.width, this.canvas.height);
  }

  renderReportPanel(): void {
    const panel = document.getElementById("report")!;
    panel.innerHTML = "";
    const report = this.state.report;
    if (!report) return;
    if (report.halted) {
      const div = document.createElement("div");
      div.className = "halted";
      div.textContent =
        (report.halt_reason ?? "discovery halted") +
        " — the construction must be redrawn in a different way";
      panel.appendChild(div);
      return;
    }
    if (!report.theorems.length) {
      const div = document.createElement("div");
      div.textContent = "no non-trivial theorems found";
      panel.appendChild(div);
      return;
    }
    const scene = buildScene(this.state.steps, this.state.coordinates, report, this.target);
    for (const s of scene.sentences) {
      const div = document.createElement("div");
      div.className = "sentence";
      div.textContent = s.text;
      if (s.color) div.style.borderLeft = `4px solid ${s.color}`;
      panel.appendChild(div);
    }
  }

  repaint(): void {
    if (!Object.keys(this.state.coordinates).length && this.state.steps.length === 0) {
      this.ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
      return;
    }
    const scene = buildScene(this.state.steps, this.state.coordinates, this.state.report, this.target);
    renderScene(this.ctx, scene, this.view, this.canvas.width, this.canvas.height);
    if (scene.notice) {
      this.ctx.fillStyle = "#b3261e";
      this.ctx.font = "14px sans-serif";
      this.ctx.fillText(scene.notice, 16, 24);
    }
  }
}

if (typeof document !== "undefined" && document.getElementById("canvas")) {
  new App();
}
