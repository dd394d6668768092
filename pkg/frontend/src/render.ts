/** File-facing wrapper: read CSVs, build the figure, write the SVG. */

import { readFileSync, writeFileSync } from "node:fs";

import { buildFigure, FigureKind, FigureSpec } from "./figure.js";
import { CurveStyle } from "./style.js";

export interface RenderRequest {
  kind: FigureKind;
  csvPaths: string[];
  outPath: string;
  format?: string;
  title?: string;
  styles?: Record<string, Partial<CurveStyle>>;
}

export function render(request: RenderRequest): void {
  const format = request.format ?? "svg";
  if (format !== "svg") {
    throw new Error(`unsupported output format "${format}"; only svg is emitted`);
  }
  const spec: FigureSpec = {
    kind: request.kind,
    inputs: request.csvPaths.map((path) => ({
      source: path,
      text: readFileSync(path, "utf-8"),
    })),
    title: request.title,
    styles: request.styles,
  };
  writeFileSync(request.outPath, buildFigure(spec));
}
