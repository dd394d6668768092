#!/usr/bin/env node
/**
 * render --csv <path>... --figure {fig2a,fig2b,fig2c,fig4,custom} --out <path>
 *
 * Exit codes: 0 rendered, 1 usage or schema problem, 2 file I/O.
 */

import { parseArgs } from "node:util";

import { SchemaError } from "./csv.js";
import { PRESETS, FigureKind } from "./figure.js";
import { render } from "./render.js";

const USAGE =
  "usage: render --csv <path> [--csv <path> ...] " +
  `--figure {${Object.keys(PRESETS).join(",")}} --out <path> ` +
  "[--format svg] [--title <text>]";

export function run(argv: string[], stderr: (line: string) => void): number {
  const args = argv[0] === "render" ? argv.slice(1) : argv;
  let values;
  try {
    ({ values } = parseArgs({
      args,
      options: {
        csv: { type: "string", multiple: true },
        figure: { type: "string" },
        out: { type: "string" },
        format: { type: "string", default: "svg" },
        title: { type: "string" },
        help: { type: "boolean", default: false },
      },
      allowPositionals: false,
    }));
  } catch (err) {
    stderr(`${(err as Error).message}\n${USAGE}`);
    return 1;
  }
  if (values.help) {
    stderr(USAGE);
    return 0;
  }
  if (!values.csv?.length || !values.figure || !values.out) {
    stderr(`--csv, --figure and --out are all required\n${USAGE}`);
    return 1;
  }
  if (!(values.figure in PRESETS)) {
    stderr(`unknown figure "${values.figure}", expected one of ${Object.keys(PRESETS).join(", ")}`);
    return 1;
  }
  try {
    render({
      kind: values.figure as FigureKind,
      csvPaths: values.csv,
      outPath: values.out,
      format: values.format,
      title: values.title,
    });
  } catch (err) {
    if (err instanceof SchemaError) {
      stderr(String((err as Error).message));
      return 1;
    }
    const code = (err as NodeJS.ErrnoException).code;
    if (code === "ENOENT" || code === "EACCES" || code === "EISDIR") {
      stderr(`i/o error: ${(err as Error).message}`);
      return 2;
    }
    stderr(String((err as Error).message));
    return 1;
  }
  return 0;
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("purecliff-render")) {
  process.exit(run(process.argv.slice(2), (line) => console.error(line)));
}
