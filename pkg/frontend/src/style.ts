/** Curve styling: fixed colors for the recipe roles, palette for the rest. */

export interface CurveStyle {
  color: string;
  dash: string; // SVG stroke-dasharray, "" for solid
}

// Role colors follow the figure convention: the two-stage recipe is purple,
// the heterogeneous recipe red, the raw baseline gray.
const ROLE_COLORS: Array<[RegExp, string]> = [
  [/^raw-/, "#7f7f7f"],
  [/-p1p2$/, "#9467bd"],
  [/-p1$/, "#1f77b4"],
  [/-p2$/, "#2ca02c"],
  [/-het$/, "#d62728"],
];

const PALETTE = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#17becf",
];

// Increasing operational-noise levels render solid, dashed, dotted, then
// cycle with longer patterns.
export const LEVEL_DASHES = ["", "7,4", "2,3", "10,3,2,3"];

export const ENGINE_DASH = "5,3"; // perturbative curves when both engines plot

export function protocolColor(protocol: string, rank: number): string {
  for (const [pattern, color] of ROLE_COLORS) {
    if (pattern.test(protocol)) return color;
  }
  return PALETTE[rank % PALETTE.length];
}
