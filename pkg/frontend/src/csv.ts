/**
 * Reader for the sweep CSV schema emitted by the simulation harness.
 *
 * Required columns identify the run and carry the two metrics; the four
 * interval columns are optional and, when present, switch on confidence
 * bands downstream. Everything else in the file is carried along untouched
 * so the renderer stays read-only over the data.
 */

export interface SweepRow {
  protocol: string;
  engine: string;
  xAxis: string;
  x: number;
  pGate: number;
  pMeas: number;
  success: number;
  successLo?: number;
  successHi?: number;
  fidelity: number;
  fidelityLo?: number;
  fidelityHi?: number;
}

export class SchemaError extends Error {}

const REQUIRED = [
  "protocol",
  "engine",
  "x_axis",
  "x_value",
  "p_gate",
  "p_meas",
  "success",
  "fidelity",
] as const;

const INTERVALS = ["success_lo", "success_hi", "fidelity_lo", "fidelity_hi"] as const;

export function parseSweepCsv(text: string, source = "csv"): SweepRow[] {
  const lines = text.split("\n").map((l) => l.replace(/\r$/, ""));
  while (lines.length && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) {
    throw new SchemaError(`${source}: empty file, expected a header row`);
  }
  const header = lines[0].split(",").map((h) => h.trim());
  const index = new Map(header.map((name, i) => [name, i]));
  const missing = REQUIRED.filter((name) => !index.has(name));
  if (missing.length) {
    throw new SchemaError(`${source}: missing required columns: ${missing.join(", ")}`);
  }
  const hasIntervals = INTERVALS.every((name) => index.has(name));

  const col = (cells: string[], name: string): string => cells[index.get(name)!] ?? "";
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length < REQUIRED.length) {
      throw new SchemaError(`${source}: row ${i + 1} has ${cells.length} cells`);
    }
    const row: SweepRow = {
      protocol: col(cells, "protocol"),
      engine: col(cells, "engine"),
      xAxis: col(cells, "x_axis"),
      x: Number(col(cells, "x_value")),
      pGate: Number(col(cells, "p_gate")),
      pMeas: Number(col(cells, "p_meas")),
      success: Number(col(cells, "success")),
      fidelity: Number(col(cells, "fidelity")),
    };
    if (hasIntervals) {
      row.successLo = Number(col(cells, "success_lo"));
      row.successHi = Number(col(cells, "success_hi"));
      row.fidelityLo = Number(col(cells, "fidelity_lo"));
      row.fidelityHi = Number(col(cells, "fidelity_hi"));
    }
    if (Number.isNaN(row.x)) {
      throw new SchemaError(`${source}: row ${i + 1} has non-numeric x_value`);
    }
    rows.push(row);
  }
  return rows;
}
