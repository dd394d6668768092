/** Low-level SVG building blocks: scales, ticks, paths, text. */

export interface Scale {
  (v: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  return scale;
}

/** Extend [lo, hi] by a fraction on each side; degenerate ranges get padding. */
export function padDomain(lo: number, hi: number, frac = 0.05): [number, number] {
  if (!Number.isFinite(lo) || !Number.isFinite(hi)) return [0, 1];
  if (hi <= lo) return [lo - 0.01, hi + 0.01];
  const pad = (hi - lo) * frac;
  return [lo - pad, hi + pad];
}

function niceStep(rough: number): number {
  const power = Math.pow(10, Math.floor(Math.log10(rough)));
  const frac = rough / power;
  const nice = frac < 1.5 ? 1 : frac < 3 ? 2 : frac < 7 ? 5 : 10;
  return nice * power;
}

export function ticks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const step = niceStep((hi - lo) / Math.max(count - 1, 1));
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

/** Compact deterministic number label: trims float noise. */
export function fmt(v: number): string {
  if (!Number.isFinite(v)) return "";
  return String(Number(v.toPrecision(8)));
}

const px = (v: number): string => v.toFixed(2);

export function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Polyline path over finite points; NaN gaps split the line. */
export function linePath(
  points: Array<{ x: number; y: number }>,
  sx: Scale,
  sy: Scale,
): string {
  let d = "";
  let pen = false;
  for (const p of points) {
    if (!Number.isFinite(p.y)) {
      pen = false;
      continue;
    }
    d += `${pen ? " L" : d ? " M" : "M"}${px(sx(p.x))} ${px(sy(p.y))}`;
    pen = true;
  }
  return d;
}

/** Closed band between lo and hi over the points that carry both. */
export function bandPath(
  points: Array<{ x: number; lo?: number; hi?: number }>,
  sx: Scale,
  sy: Scale,
): string {
  const usable = points.filter(
    (p) => Number.isFinite(p.lo ?? NaN) && Number.isFinite(p.hi ?? NaN),
  );
  if (usable.length < 2) return "";
  const upper = usable.map((p) => `${px(sx(p.x))} ${px(sy(p.hi!))}`);
  const lower = [...usable].reverse().map((p) => `${px(sx(p.x))} ${px(sy(p.lo!))}`);
  return `M${upper.join(" L")} L${lower.join(" L")} Z`;
}

export interface TextOpts {
  size?: number;
  anchor?: "start" | "middle" | "end";
  rotate?: number;
  color?: string;
}

export function textEl(x: number, y: number, content: string, opts: TextOpts = {}): string {
  const { size = 11, anchor = "start", rotate, color = "#333" } = opts;
  const transform = rotate ? ` transform="rotate(${rotate} ${px(x)} ${px(y)})"` : "";
  return (
    `<text x="${px(x)}" y="${px(y)}" font-size="${size}" fill="${color}"` +
    ` font-family="Helvetica, Arial, sans-serif" text-anchor="${anchor}"${transform}>` +
    `${escapeXml(content)}</text>`
  );
}

export function pxs(v: number): string {
  return px(v);
}
