/** Canvas painting of a scene model. */

import { BASE_STROKE, POINT_FILL } from "./colors.js";
import { Scene } from "./scene.js";

export interface Viewport {
  scale: number; // pixels per world unit
  ox: number; // world origin -> canvas x
  oy: number;
}

export function fitViewport(
  coords: Record<string, [number, number]>,
  width: number,
  height: number
): Viewport {
  const xs = Object.values(coords).map((p) => p[0]);
  const ys = Object.values(coords).map((p) => p[1]);
  if (!xs.length) return { scale: 40, ox: width / 2, oy: height / 2 };
  const minX = Math.min(...xs),
    maxX = Math.max(...xs);
  const minY = Math.min(...ys),
    maxY = Math.max(...ys);
  const spanX = Math.max(maxX - minX, 1);
  const spanY = Math.max(maxY - minY, 1);
  const scale = Math.min((width * 0.8) / spanX, (height * 0.8) / spanY, 80);
  return {
    scale,
    ox: width / 2 - ((minX + maxX) / 2) * scale,
    oy: height / 2 + ((minY + maxY) / 2) * scale,
  };
}

export function toScreen(v: Viewport, x: number, y: number): [number, number] {
  return [v.ox + x * v.scale, v.oy - y * v.scale];
}

export function toWorld(v: Viewport, px: number, py: number): [number, number] {
  return [(px - v.ox) / v.scale, (v.oy - py) / v.scale];
}

export function renderScene(
  ctx: CanvasRenderingContext2D,
  scene: Scene,
  view: Viewport,
  width: number,
  height: number
): void {
  ctx.clearRect(0, 0, width, height);

  const drawSeg = (x1: number, y1: number, x2: number, y2: number, color: string, w: number) => {
    ctx.strokeStyle = color;
    ctx.lineWidth = w;
    ctx.beginPath();
    const [sx1, sy1] = toScreen(view, x1, y1);
    const [sx2, sy2] = toScreen(view, x2, y2);
    ctx.moveTo(sx1, sy1);
    ctx.lineTo(sx2, sy2);
    ctx.stroke();
  };

  for (const s of scene.baseSegments) {
    drawSeg(s.x1, s.y1, s.x2, s.y2, BASE_STROKE, 1);
  }
  for (const c of scene.circles) {
    ctx.strokeStyle = c.color;
    ctx.lineWidth = c.color === "#c3cad2" ? 1 : 2;
    ctx.beginPath();
    const [cx, cy] = toScreen(view, c.cx, c.cy);
    ctx.arc(cx, cy, c.r * view.scale, 0, Math.PI * 2);
    ctx.stroke();
  }
  for (const l of scene.lines) {
    drawSeg(l.x1, l.y1, l.x2, l.y2, l.color, 2);
  }
  for (const s of scene.overlaySegments) {
    drawSeg(s.x1, s.y1, s.x2, s.y2, s.color ?? BASE_STROKE, 2.5);
    // congruence tick marks at the midpoint, perpendicular to the segment
    const mx = (s.x1 + s.x2) / 2;
    const my = (s.y1 + s.y2) / 2;
    const len = Math.hypot(s.x2 - s.x1, s.y2 - s.y1) || 1;
    const nx = -(s.y2 - s.y1) / len;
    const ny = (s.x2 - s.x1) / len;
    const ux = (s.x2 - s.x1) / len;
    const uy = (s.y2 - s.y1) / len;
    const tickWorld = 4 / view.scale;
    for (let i = 0; i < s.ticks; i++) {
      const off = (i - (s.ticks - 1) / 2) * (5 / view.scale);
      drawSeg(
        mx + off * ux - tickWorld * nx,
        my + off * uy - tickWorld * ny,
        mx + off * ux + tickWorld * nx,
        my + off * uy + tickWorld * ny,
        s.color ?? BASE_STROKE,
        2
      );
    }
  }
  for (const p of scene.points) {
    const [sx, sy] = toScreen(view, p.x, p.y);
    if (p.emphasis) {
      ctx.strokeStyle = p.emphasis;
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.arc(sx, sy, 8, 0, Math.PI * 2);
      ctx.stroke();
    }
    ctx.fillStyle = POINT_FILL;
    ctx.beginPath();
    ctx.arc(sx, sy, 3.5, 0, Math.PI * 2);
    ctx.fill();
    ctx.font = "13px sans-serif";
    ctx.fillText(p.name, sx + 7, sy - 7);
  }
}
