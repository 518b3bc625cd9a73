/** Shared types mirroring the construction language and the HTTP API. */

export interface LineRef {
  kind: "through" | "parallel" | "perpendicular" | "perp_bisector";
  a: string;
  b: string;
  through?: string;
}

export interface CircleRef {
  kind: "center_point" | "through3";
  points: string[];
}

export type Step =
  | { op: "point"; name: string; x: string; y: string }
  | { op: "midpoint"; name: string; a: string; b: string }
  | { op: "foot"; name: string; point: string; a: string; b: string }
  | { op: "intersect"; name: string; l1: LineRef; l2: LineRef }
  | { op: "intersect2"; name: string; line: LineRef; circle: CircleRef; hint: [number, number] }
  | { op: "circle_def"; name: string; circle: CircleRef }
  | { op: "polygon"; a: string; b: string; n: number; names: string[] };

export interface TheoremEntry {
  kind: "identity" | "collinear" | "concyclic" | "parallel" | "perpendicular" | "congruent";
  points: string[];
  lines?: string[][];
  axes?: string[][][];
  segments?: string[][];
  class_id: string;
  color: number;
}

export interface Report {
  target: string;
  theorems: TheoremEntry[];
  halted: boolean;
  halt_reason?: string;
}

export interface DiscoverResponse {
  report: Report;
  coordinates: Record<string, [number, number]>;
  request_hash: string;
}

export interface EvaluateResponse {
  coordinates: Record<string, [number, number]>;
  request_hash: string;
}

export type Coordinates = Record<string, [number, number]>;
