#!/usr/bin/env node
/** Command line front door: plots <kind> <inputs...> -o out.svg */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";
import { pathToFileURL } from "node:url";
import { SchemaError } from "./errors.js";
import { parseSampleCsv, empiricalPmf } from "./csv.js";
import { parseReport, pmfFromReport, trendFromReport } from "./report.js";
import { renderPmf, renderEcdfPair, renderAsymTrend } from "./plots.js";

const USAGE = `usage: plots <kind> <inputs...> -o <out.svg>

kinds:
  pmf <samples.csv | report.json>   bar chart of an integer-valued sample,
                                    with exact masses overlaid when the JSON
                                    report carries them
  ecdf-pair <a.csv> <b.csv>         two empirical distribution functions on
                                    shared axes, max vertical gap annotated
  asym-trend <report.json>          median log-size per height against the
                                    predicted curve

Inputs are the CSV and JSON files written by the dstsim command line tools.
`;

interface ParsedArgs {
  kind: string;
  inputs: string[];
  out: string;
}

class UsageError extends Error {}

function parseArgs(argv: string[]): ParsedArgs {
  const inputs: string[] = [];
  let kind: string | null = null;
  let out: string | null = null;
  let i = 0;
  while (i < argv.length) {
    const arg = argv[i]!;
    if (arg === "-h" || arg === "--help") {
      throw new UsageError("");
    } else if (arg === "-o" || arg === "--out") {
      if (i + 1 >= argv.length) {
        throw new UsageError(`${arg} needs a file name`);
      }
      out = argv[i + 1]!;
      i += 2;
    } else if (arg.startsWith("-") && arg !== "-") {
      throw new UsageError(`unknown option: ${arg}`);
    } else if (kind === null) {
      kind = arg;
      i += 1;
    } else {
      inputs.push(arg);
      i += 1;
    }
  }
  if (kind === null) {
    throw new UsageError("missing plot kind");
  }
  if (out === null) {
    throw new UsageError("missing -o <out.svg>");
  }
  return { kind, inputs, out };
}

function readText(path: string): string {
  try {
    return readFileSync(path, "utf8");
  } catch (err) {
    throw new SchemaError(`${path}: ${(err as NodeJS.ErrnoException).message}`);
  }
}

function renderKind(args: ParsedArgs): string {
  switch (args.kind) {
    case "pmf": {
      if (args.inputs.length !== 1) {
        throw new UsageError("pmf takes exactly one input file");
      }
      const path = args.inputs[0]!;
      const text = readText(path);
      if (path.endsWith(".json")) {
        return renderPmf(pmfFromReport(parseReport(text, path), path));
      }
      const values = parseSampleCsv(text, path);
      for (const v of values) {
        if (!Number.isInteger(v)) {
          throw new SchemaError(
            `${path}: pmf plots need integer values, found ${v} ` +
            `(use ecdf-pair for continuous samples)`,
          );
        }
      }
      return renderPmf({
        empirical: empiricalPmf(values),
        oracle: null,
        title: basename(path),
      });
    }
    case "ecdf-pair": {
      if (args.inputs.length !== 2) {
        throw new UsageError("ecdf-pair takes exactly two input files");
      }
      const [pathA, pathB] = args.inputs as [string, string];
      const a = parseSampleCsv(readText(pathA), pathA);
      const b = parseSampleCsv(readText(pathB), pathB);
      return renderEcdfPair(a, b, basename(pathA), basename(pathB));
    }
    case "asym-trend": {
      if (args.inputs.length !== 1) {
        throw new UsageError("asym-trend takes exactly one input file");
      }
      const path = args.inputs[0]!;
      return renderAsymTrend(trendFromReport(parseReport(readText(path), path), path));
    }
    default:
      throw new UsageError(`unknown plot kind: ${args.kind}`);
  }
}

export function main(argv: string[]): number {
  let args: ParsedArgs;
  try {
    args = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      const stream = err.message === "" ? process.stdout : process.stderr;
      if (err.message !== "") {
        stream.write(`plots: ${err.message}\n`);
      }
      stream.write(USAGE);
      return err.message === "" ? 0 : 2;
    }
    throw err;
  }
  try {
    const svg = renderKind(args);
    writeFileSync(args.out, svg);
    process.stdout.write(`wrote ${args.out}\n`);
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`plots: ${err.message}\n${USAGE}`);
      return 2;
    }
    if (err instanceof SchemaError || err instanceof Error) {
      process.stderr.write(`plots: ${(err as Error).message}\n`);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
