export { parseSweepCsv, SchemaError, type SweepRow } from "./csv.js";
export { groupCurves, type Curve, type CurvePoint, type Metric } from "./curves.js";
export { buildFigure, PRESETS, type FigureKind, type FigureSpec } from "./figure.js";
export { render, type RenderRequest } from "./render.js";
export { protocolColor, LEVEL_DASHES, ENGINE_DASH, type CurveStyle } from "./style.js";
