/** Serialize the step list to construction text and parse it back.
 *
 * The canvas never computes geometry; the text is the single source of truth
 * sent to the server, so export-then-import must reproduce the step list.
 */

import { CircleRef, LineRef, Step } from "./types.js";

function fmtLine(ref: LineRef): string {
  if (ref.kind === "through") return `line(${ref.a},${ref.b})`;
  if (ref.kind === "perp_bisector") return `perp_bisector(${ref.a},${ref.b})`;
  return `${ref.kind}(${ref.through},${ref.a},${ref.b})`;
}

function fmtCircle(ref: CircleRef): string {
  return ref.kind === "center_point"
    ? `circle(${ref.points[0]},${ref.points[1]})`
    : `circum(${ref.points.join(",")})`;
}

export function serialize(steps: Step[], target?: string): string {
  const out: string[] = [];
  for (const s of steps) {
    switch (s.op) {
      case "point":
        out.push(`point ${s.name} ${s.x} ${s.y}`);
        break;
      case "midpoint":
        out.push(`midpoint ${s.name} ${s.a} ${s.b}`);
        break;
      case "foot":
        out.push(`foot ${s.name} ${s.point} ${s.a} ${s.b}`);
        break;
      case "intersect":
        out.push(`intersect ${s.name} ${fmtLine(s.l1)} ${fmtLine(s.l2)}`);
        break;
      case "intersect2":
        out.push(
          `intersect2 ${s.name} ${fmtLine(s.line)} ${fmtCircle(s.circle)} near ${s.hint[0]} ${s.hint[1]}`
        );
        break;
      case "circle_def":
        out.push(
          s.circle.kind === "center_point"
            ? `circle ${s.name} ${s.circle.points[0]} ${s.circle.points[1]}`
            : `circumcircle ${s.name} ${s.circle.points.join(" ")}`
        );
        break;
      case "polygon":
        out.push(`regular_polygon ${s.a} ${s.b} ${s.n} ${s.names.join(" ")}`);
        break;
    }
  }
  if (target) out.push(`discover ${target}`);
  return out.join("\n") + "\n";
}

const REF = /^(line|parallel|perpendicular|perp_bisector|circle|circum)\(([^()]*)\)$/;

function parseLineRef(tok: string, circles: Map<string, CircleRef>): LineRef {
  const m = REF.exec(tok);
  if (!m || m[1] === "circle" || m[1] === "circum") {
    throw new Error(`expected a line reference, got '${tok}'`);
  }
  const args = m[2].split(",").filter((x) => x);
  if (m[1] === "line") return { kind: "through", a: args[0], b: args[1] };
  if (m[1] === "perp_bisector") return { kind: "perp_bisector", a: args[0], b: args[1] };
  return { kind: m[1] as "parallel" | "perpendicular", through: args[0], a: args[1], b: args[2] };
}

function parseCircleRef(tok: string, circles: Map<string, CircleRef>): CircleRef {
  const m = REF.exec(tok);
  if (m && m[1] === "circle") return { kind: "center_point", points: m[2].split(",") };
  if (m && m[1] === "circum") return { kind: "through3", points: m[2].split(",") };
  const named = circles.get(tok);
  if (!named) throw new Error(`unknown circle '${tok}'`);
  return named;
}

export interface ParsedProgram {
  steps: Step[];
  target?: string;
}

export function parse(text: string): ParsedProgram {
  const steps: Step[] = [];
  const circles = new Map<string, CircleRef>();
  let target: string | undefined;
  for (const raw of text.split("\n")) {
    const line = raw.split("#")[0].trim();
    if (!line) continue;
    const tok = line.split(/\s+/);
    switch (tok[0]) {
      case "point":
        steps.push({ op: "point", name: tok[1], x: tok[2], y: tok[3] });
        break;
      case "midpoint":
        steps.push({ op: "midpoint", name: tok[1], a: tok[2], b: tok[3] });
        break;
      case "foot":
        steps.push({ op: "foot", name: tok[1], point: tok[2], a: tok[3], b: tok[4] });
        break;
      case "intersect":
        steps.push({
          op: "intersect",
          name: tok[1],
          l1: parseLineRef(tok[2], circles),
          l2: parseLineRef(tok[3], circles),
        });
        break;
      case "intersect2": {
        if (tok[4] !== "near") throw new Error("intersect2 needs a 'near x y' hint");
        steps.push({
          op: "intersect2",
          name: tok[1],
          line: parseLineRef(tok[2], circles),
          circle: parseCircleRef(tok[3], circles),
          hint: [Number(tok[5]), Number(tok[6])],
        });
        break;
      }
      case "circle": {
        const ref: CircleRef = { kind: "center_point", points: [tok[2], tok[3]] };
        circles.set(tok[1], ref);
        steps.push({ op: "circle_def", name: tok[1], circle: ref });
        break;
      }
      case "circumcircle": {
        const ref: CircleRef = { kind: "through3", points: [tok[2], tok[3], tok[4]] };
        circles.set(tok[1], ref);
        steps.push({ op: "circle_def", name: tok[1], circle: ref });
        break;
      }
      case "regular_polygon":
        steps.push({
          op: "polygon",
          a: tok[1],
          b: tok[2],
          n: Number(tok[3]),
          names: tok.slice(4),
        });
        break;
      case "discover":
        target = tok[1];
        break;
      case "hide":
        break; // not surfaced in the canvas yet
      default:
        throw new Error(`unknown command '${tok[0]}'`);
    }
  }
  return { steps, target };
}

/** Point names produced by a step list, in order. */
export function pointNames(steps: Step[]): string[] {
  const out: string[] = [];
  for (const s of steps) {
    if (s.op === "polygon") out.push(...s.names);
    else if (s.op !== "circle_def") out.push(s.name);
  }
  return out;
}

export function freePointNames(steps: Step[]): string[] {
  return steps.filter((s) => s.op === "point").map((s) => (s as { name: string }).name);
}

const ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";

export function nextName(steps: Step[]): string {
  const used = new Set(pointNames(steps));
  for (const s of steps) if (s.op === "circle_def") used.add(s.name);
  for (const ch of ALPHABET) if (!used.has(ch)) return ch;
  let i = 1;
  for (;;) {
    for (const ch of ALPHABET) {
      const name = `${ch}${i}`;
      if (!used.has(name)) return name;
    }
    i += 1;
  }
}
