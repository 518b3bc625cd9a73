/** Stable palette: theorem class N always renders in palette[N % len]. */

export const PALETTE = [
  "#e05263", // red
  "#2d7dd2", // blue
  "#41a36a", // green
  "#c78e2d", // amber
  "#8e5bc0", // violet
  "#28a8a8", // teal
  "#c25bab", // magenta
  "#6b7f2d", // olive
  "#d2642d", // orange
  "#5b6ac0", // indigo
];

export function colorOf(index: number): string {
  return PALETTE[index % PALETTE.length];
}

export const BASE_STROKE = "#9aa3ad";
export const POINT_FILL = "#24292f";
export const TARGET_FILL = "#e05263";
