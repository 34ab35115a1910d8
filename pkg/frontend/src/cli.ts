/**
 * Figure rendering CLI.
 *
 *   render --kind {fig2|fig3|fig4|histogram|equator-scatter}
 *          --in data.csv [--in more.csv]
 *          --out figure.svg
 *
 * Reads only exported CSV files; exits non-zero with the offending
 * column/file named on any error, and writes nothing in that case.
 */

import * as fs from "fs";
import * as path from "path";

import { parseCsv } from "./csv";
import { FIGURE_KINDS, FigureKind, renderFigure } from "./render";

interface Args {
  kind: FigureKind;
  inputs: string[];
  out: string;
}

export function parseArgs(argv: string[]): Args {
  if (argv[0] !== "render") {
    throw new Error(`unknown command ${JSON.stringify(argv[0])}; expected "render"`);
  }
  let kind: string | undefined;
  const inputs: string[] = [];
  let out: string | undefined;
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new Error(`missing value for ${flag}`);
    }
    if (flag === "--kind") kind = value;
    else if (flag === "--in") inputs.push(value);
    else if (flag === "--out") out = value;
    else throw new Error(`unknown flag ${flag}`);
  }
  if (!kind || !(FIGURE_KINDS as readonly string[]).includes(kind)) {
    throw new Error(`--kind must be one of ${FIGURE_KINDS.join(", ")}; got ${kind}`);
  }
  if (inputs.length === 0) {
    throw new Error("at least one --in CSV is required");
  }
  if (!out) {
    throw new Error("--out FILE is required");
  }
  if (path.extname(out).toLowerCase() !== ".svg") {
    throw new Error(`unsupported output extension ${path.extname(out) || "(none)"}; supported: .svg`);
  }
  return { kind: kind as FigureKind, inputs, out };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 2;
  }
  try {
    const tables = args.inputs.map((file) => {
      const body = fs.readFileSync(file, "utf-8");
      try {
        return parseCsv(body);
      } catch (err) {
        throw new Error(`${file}: ${(err as Error).message}`);
      }
    });
    const svg = renderFigure(args.kind, tables);
    fs.writeFileSync(args.out, svg, "utf-8");
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  process.stdout.write(`${args.out}\n`);
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
