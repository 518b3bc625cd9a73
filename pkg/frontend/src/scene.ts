/** Pure scene model: construction + coordinates + report -> drawables.
 *
 * All geometry here is presentation-only (line extension, circumcircle of
 * three already-evaluated points); every coordinate comes from the server.
 */

import { colorOf } from "./colors.js";
import { Coordinates, Report, Step, TheoremEntry } from "./types.js";

export interface SegmentDrawable {
  from: string;
  to: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  color: string | null;
  ticks: number;
}

export interface LineDrawable {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  color: string;
  members: string[];
}

export interface CircleDrawable {
  cx: number;
  cy: number;
  r: number;
  color: string;
  members: string[];
}

export interface PointDrawable {
  name: string;
  x: number;
  y: number;
  emphasis: string | null; // identity-class color, when merged with others
}

export interface Scene {
  points: PointDrawable[];
  baseSegments: SegmentDrawable[];
  circles: CircleDrawable[];
  lines: LineDrawable[];
  overlaySegments: SegmentDrawable[];
  sentences: { text: string; color: string | null }[];
  notice: string | null;
}

function segment(
  coords: Coordinates,
  a: string,
  b: string,
  color: string | null = null,
  ticks = 0
): SegmentDrawable | null {
  const pa = coords[a];
  const pb = coords[b];
  if (!pa || !pb) return null;
  return { from: a, to: b, x1: pa[0], y1: pa[1], x2: pb[0], y2: pb[1], color, ticks };
}

function extendedLine(coords: Coordinates, members: string[], color: string): LineDrawable | null {
  const present = members.filter((m) => coords[m]);
  if (present.length < 2) return null;
  // span the two extremal members and extend beyond them
  let best: [string, string] = [present[0], present[1]];
  let bestD = -1;
  for (let i = 0; i < present.length; i++) {
    for (let j = i + 1; j < present.length; j++) {
      const [ax, ay] = coords[present[i]];
      const [bx, by] = coords[present[j]];
      const d = (ax - bx) ** 2 + (ay - by) ** 2;
      if (d > bestD) {
        bestD = d;
        best = [present[i], present[j]];
      }
    }
  }
  const [a, b] = best;
  const [ax, ay] = coords[a];
  const [bx, by] = coords[b];
  const len = Math.sqrt(bestD) || 1;
  const margin = 0.3 * len + 0.5;
  const ux = (bx - ax) / len;
  const uy = (by - ay) / len;
  return {
    x1: ax - margin * ux,
    y1: ay - margin * uy,
    x2: bx + margin * ux,
    y2: by + margin * uy,
    color,
    members: present,
  };
}

function circleThrough(coords: Coordinates, members: string[], color: string): CircleDrawable | null {
  const pts = members.filter((m) => coords[m]).map((m) => coords[m]);
  if (pts.length < 3) return null;
  const [[ax, ay], [bx, by], [cx, cy]] = pts;
  const d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  if (Math.abs(d) < 1e-12) return null;
  const ux =
    ((ax * ax + ay * ay) * (by - cy) +
      (bx * bx + by * by) * (cy - ay) +
      (cx * cx + cy * cy) * (ay - by)) /
    d;
  const uy =
    ((ax * ax + ay * ay) * (cx - bx) +
      (bx * bx + by * by) * (ax - cx) +
      (cx * cx + cy * cy) * (bx - ax)) /
    d;
  return {
    cx: ux,
    cy: uy,
    r: Math.hypot(ax - ux, ay - uy),
    color,
    members,
  };
}

function lineName(points: string[]): string {
  return points.slice(0, 2).join("");
}

export function sentence(t: TheoremEntry): string {
  const join = (xs: string[]) =>
    xs.length <= 2 ? xs.join(" and ") : xs.slice(0, -1).join(", ") + " and " + xs[xs.length - 1];
  switch (t.kind) {
    case "identity":
      return `the points ${join(t.points)} are equal`;
    case "collinear":
      return `${join(t.points)} are collinear`;
    case "concyclic":
      return `${join(t.points)} are concyclic`;
    case "parallel": {
      const names = (t.lines ?? []).map(lineName);
      return names.length === 2
        ? `${names[0]} is parallel to ${names[1]}`
        : `${join(names)} are parallel`;
    }
    case "perpendicular": {
      const [a1, a2] = t.axes ?? [[], []];
      return `${join(a1.map(lineName))} ⟂ ${join(a2.map(lineName))}`;
    }
    case "congruent": {
      const names = (t.segments ?? []).map((s) => s.join(""));
      return `the segments ${join(names)} are congruent`;
    }
  }
}

/** Segments implied by the construction itself (uncolored scaffolding). */
export function baseSegments(steps: Step[], coords: Coordinates): SegmentDrawable[] {
  const out: SegmentDrawable[] = [];
  const push = (a: string, b: string) => {
    const s = segment(coords, a, b);
    if (s) out.push(s);
  };
  for (const s of steps) {
    switch (s.op) {
      case "midpoint":
        push(s.a, s.b);
        break;
      case "foot":
        push(s.a, s.b);
        push(s.point, s.name);
        break;
      case "intersect":
        for (const ref of [s.l1, s.l2]) {
          if (ref.kind === "through") push(ref.a, ref.b);
        }
        break;
      case "intersect2":
        if (s.line.kind === "through") push(s.line.a, s.line.b);
        break;
      case "polygon": {
        const ring = [s.a, s.b, ...s.names, s.a];
        for (let i = 0; i + 1 < ring.length; i++) push(ring[i], ring[i + 1]);
        break;
      }
    }
  }
  return out;
}

export function buildScene(
  steps: Step[],
  coords: Coordinates,
  report: Report | null,
  target: string | null
): Scene {
  const scene: Scene = {
    points: [],
    baseSegments: baseSegments(steps, coords),
    circles: [],
    lines: [],
    overlaySegments: [],
    sentences: [],
    notice: null,
  };

  // construction circles are part of the scaffolding
  for (const s of steps) {
    if (s.op === "circle_def" || s.op === "intersect2") {
      const ref = s.op === "circle_def" ? s.circle : s.circle;
      if (ref.kind === "center_point") {
        const [o, a] = ref.points;
        if (coords[o] && coords[a]) {
          scene.circles.push({
            cx: coords[o][0],
            cy: coords[o][1],
            r: Math.hypot(coords[a][0] - coords[o][0], coords[a][1] - coords[o][1]),
            color: "#c3cad2",
            members: ref.points,
          });
        }
      } else {
        const c = circleThrough(coords, ref.points, "#c3cad2");
        if (c) scene.circles.push(c);
      }
    }
  }

  const emphasis: Record<string, string> = {};
  if (report && !report.halted) {
    for (const t of report.theorems) {
      const color = colorOf(t.color);
      scene.sentences.push({ text: sentence(t), color });
      switch (t.kind) {
        case "identity":
          for (const p of t.points) emphasis[p] = color;
          break;
        case "collinear": {
          const l = extendedLine(coords, t.points, color);
          if (l) scene.lines.push(l);
          break;
        }
        case "concyclic": {
          const c = circleThrough(coords, t.points, color);
          if (c) scene.circles.push(c);
          break;
        }
        case "parallel":
          for (const members of t.lines ?? []) {
            const l = extendedLine(coords, members, color);
            if (l) scene.lines.push(l);
          }
          break;
        case "perpendicular":
          for (const axis of t.axes ?? []) {
            for (const members of axis) {
              const l = extendedLine(coords, members, color);
              if (l) scene.lines.push(l);
            }
          }
          break;
        case "congruent": {
          const tickCount = (t.color % 3) + 1;
          for (const [a, b] of t.segments ?? []) {
            const s = segment(coords, a, b, color, tickCount);
            if (s) scene.overlaySegments.push(s);
          }
          break;
        }
      }
    }
  } else if (report && report.halted) {
    scene.notice =
      (report.halt_reason ?? "the discovery was halted") +
      " — the construction must be redrawn in a different way";
  }

  for (const [name, [x, y]] of Object.entries(coords)) {
    scene.points.push({
      name,
      x,
      y,
      emphasis: emphasis[name] ?? (name === target ? "#24292f" : null),
    });
  }
  scene.points.sort((a, b) => (a.name < b.name ? -1 : 1));
  return scene;
}
