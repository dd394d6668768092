/**
 * Pure figure assembly: (CSV texts, spec) -> SVG document string.
 *
 * No clocks, no randomness, no filesystem: identical inputs give
 * byte-identical output. The renderer never recomputes simulation values;
 * every drawn coordinate comes straight from the CSV.
 */

import { parseSweepCsv, SweepRow } from "./csv.js";
import { Curve, groupCurves, Metric } from "./curves.js";
import { CurveStyle } from "./style.js";
import {
  bandPath,
  fmt,
  linearScale,
  linePath,
  padDomain,
  pxs,
  Scale,
  textEl,
  ticks,
} from "./svg.js";

export type FigureKind = "fig2a" | "fig2b" | "fig2c" | "fig4" | "custom";

export interface FigureSpec {
  kind: FigureKind;
  /** Parsed CSV texts keyed by a display name (usually the path). */
  inputs: Array<{ source: string; text: string }>;
  title?: string;
  styles?: Record<string, Partial<CurveStyle>>;
}

interface Preset {
  title: string;
  metrics: Metric[];
}

export const PRESETS: Record<FigureKind, Preset> = {
  fig2a: { title: "GHZ3 purification under network noise", metrics: ["fidelity", "success"] },
  fig2b: { title: "GHZ4 purification under network noise", metrics: ["fidelity", "success"] },
  fig2c: { title: "Cluster4 purification under network noise", metrics: ["fidelity", "success"] },
  fig4: { title: "GHZ3 purification with noisy gates and readout", metrics: ["fidelity"] },
  custom: { title: "Purification sweep", metrics: ["fidelity", "success"] },
};

const METRIC_LABEL: Record<Metric, string> = {
  fidelity: "Output fidelity",
  success: "Success probability",
};

const X_LABEL: Record<string, string> = {
  input_fidelity: "Input fidelity",
  eps: "Network noise rate",
};

// Layout constants (pixels).
const WIDTH = 640;
const PLOT_LEFT = 66;
const PLOT_RIGHT = 624;
const PLOT_H = 190;
const PANEL_STRIDE = 252;
const TOP = 40;

function metricDomain(curves: Curve[], metric: Metric): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const curve of curves) {
    for (const p of curve.points.get(metric)!) {
      for (const v of [p.y, p.lo, p.hi]) {
        if (Number.isFinite(v ?? NaN)) {
          lo = Math.min(lo, v!);
          hi = Math.max(hi, v!);
        }
      }
    }
  }
  return padDomain(lo, hi);
}

function xDomain(curves: Curve[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const curve of curves) {
    for (const p of curve.points.get("fidelity")!) {
      lo = Math.min(lo, p.x);
      hi = Math.max(hi, p.x);
    }
  }
  return padDomain(lo, hi, 0.03);
}

function panel(
  curves: Curve[],
  metric: Metric,
  top: number,
  sx: Scale,
  xLabel: string,
  lastPanel: boolean,
): string {
  const bottom = top + PLOT_H;
  const sy = linearScale(metricDomain(curves, metric), [bottom, top]);
  const parts: string[] = [];

  for (const t of ticks(sy.domain[0], sy.domain[1])) {
    const y = sy(t);
    parts.push(
      `<line x1="${pxs(PLOT_LEFT)}" y1="${pxs(y)}" x2="${pxs(PLOT_RIGHT)}" y2="${pxs(y)}" stroke="#e0e0e0" stroke-width="0.6"/>`,
      textEl(PLOT_LEFT - 7, y + 3.5, fmt(t), { anchor: "end" }),
    );
  }
  for (const t of ticks(sx.domain[0], sx.domain[1], 7)) {
    const x = sx(t);
    parts.push(
      `<line x1="${pxs(x)}" y1="${pxs(bottom)}" x2="${pxs(x)}" y2="${pxs(bottom + 4)}" stroke="#333" stroke-width="1"/>`,
      textEl(x, bottom + 16, fmt(t), { anchor: "middle" }),
    );
  }
  parts.push(
    `<rect x="${pxs(PLOT_LEFT)}" y="${pxs(top)}" width="${pxs(PLOT_RIGHT - PLOT_LEFT)}" height="${pxs(PLOT_H)}" fill="none" stroke="#333" stroke-width="1"/>`,
    textEl(22, (top + bottom) / 2, METRIC_LABEL[metric], {
      anchor: "middle",
      rotate: -90,
      size: 12,
    }),
  );
  if (lastPanel) {
    parts.push(
      textEl((PLOT_LEFT + PLOT_RIGHT) / 2, bottom + 36, xLabel, { anchor: "middle", size: 12 }),
    );
  }

  for (const curve of curves) {
    const pts = curve.points.get(metric)!;
    const band = bandPath(pts, sx, sy);
    if (band) {
      parts.push(
        `<path d="${band}" fill="${curve.style.color}" fill-opacity="0.13" stroke="none"/>`,
      );
    }
  }
  for (const curve of curves) {
    const d = linePath(curve.points.get(metric)!, sx, sy);
    if (!d) continue;
    const dash = curve.style.dash ? ` stroke-dasharray="${curve.style.dash}"` : "";
    parts.push(
      `<path d="${d}" fill="none" stroke="${curve.style.color}" stroke-width="1.6"${dash}/>`,
    );
  }
  return parts.join("\n");
}

function legend(curves: Curve[], top: number): string {
  const parts: string[] = [];
  curves.forEach((curve, i) => {
    const y = top + i * 16;
    const dash = curve.style.dash ? ` stroke-dasharray="${curve.style.dash}"` : "";
    parts.push(
      `<line x1="${pxs(PLOT_LEFT)}" y1="${pxs(y - 4)}" x2="${pxs(PLOT_LEFT + 26)}" y2="${pxs(y - 4)}" stroke="${curve.style.color}" stroke-width="1.6"${dash}/>`,
      textEl(PLOT_LEFT + 34, y, curve.label),
    );
  });
  return parts.join("\n");
}

export function buildFigure(spec: FigureSpec): string {
  const preset = PRESETS[spec.kind];
  const rows: SweepRow[] = [];
  for (const input of spec.inputs) {
    rows.push(...parseSweepCsv(input.text, input.source));
  }
  const { curves, xAxis } = groupCurves(rows, spec.styles ?? {});
  const xLabel = X_LABEL[xAxis] ?? xAxis;
  const sx = linearScale(xDomain(curves), [PLOT_LEFT, PLOT_RIGHT]);

  const panels = preset.metrics.map((metric, i) =>
    panel(curves, metric, TOP + i * PANEL_STRIDE, sx, xLabel, i === preset.metrics.length - 1),
  );
  const legendTop = TOP + (preset.metrics.length - 1) * PANEL_STRIDE + PLOT_H + 58;
  const height = legendTop + Math.max(curves.length, 1) * 16 + 8;

  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${height}" viewBox="0 0 ${WIDTH} ${height}">`,
    `<rect width="${WIDTH}" height="${height}" fill="white"/>`,
    textEl(WIDTH / 2, 20, spec.title ?? preset.title, { anchor: "middle", size: 14 }),
    ...panels,
    legend(curves, legendTop),
    `</svg>`,
    ``,
  ].join("\n");
}
