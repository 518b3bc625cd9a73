/** Construction state for the canvas: an ordered step list that serializes to
 * valid construction text at all times, plus selection and undo history. */

import { parse, pointNames, serialize } from "./dsl.js";
import { Coordinates, Report, Step } from "./types.js";

export type Tool =
  | "drag"
  | "point"
  | "midpoint"
  | "segment-intersect"
  | "circle"
  | "circumcircle"
  | "foot"
  | "polygon"
  | "select";

export interface UiState {
  steps: Step[];
  coordinates: Coordinates;
  selection: string[];
  tool: Tool;
  report: Report | null;
  history: Step[][];
  polygonSides: number;
}

export function initialState(): UiState {
  return {
    steps: [],
    coordinates: {},
    selection: [],
    tool: "point",
    report: null,
    history: [],
    polygonSides: 6,
  };
}

function snapshot(state: UiState): void {
  state.history.push(state.steps.map((s) => ({ ...s })));
  if (state.history.length > 100) state.history.shift();
}

export function addStep(state: UiState, step: Step): void {
  snapshot(state);
  state.steps = [...state.steps, step];
  state.report = null; // a structural edit invalidates the previous overlays
}

export function undo(state: UiState): void {
  const prev = state.history.pop();
  if (prev === undefined) return; // no-op on empty history
  state.steps = prev;
  state.selection = [];
  state.report = null;
}

export function dragFreePoint(state: UiState, name: string, x: number, y: number): boolean {
  const step = state.steps.find((s) => s.op === "point" && s.name === name);
  if (!step || step.op !== "point") return false;
  step.x = x.toFixed(4);
  step.y = y.toFixed(4);
  return true;
}

export function exportText(state: UiState, target?: string): string {
  return serialize(state.steps, target);
}

export function importText(state: UiState, text: string): string | undefined {
  const program = parse(text); // throws on malformed text
  snapshot(state);
  state.steps = program.steps;
  state.selection = [];
  state.report = null;
  return program.target;
}

export function applyCoordinates(state: UiState, coords: Coordinates): void {
  state.coordinates = coords;
}

export function names(state: UiState): string[] {
  return pointNames(state.steps);
}

export function nearestPoint(
  state: UiState,
  x: number,
  y: number,
  radius: number
): string | null {
  let best: string | null = null;
  let bestD = radius * radius;
  for (const [name, [px, py]] of Object.entries(state.coordinates)) {
    const d = (px - x) ** 2 + (py - y) ** 2;
    if (d <= bestD) {
      best = name;
      bestD = d;
    }
  }
  return best;
}
