/** Readers for the simulator's JSON report layout. */

import { SchemaError } from "./errors.js";

export interface PmfPair {
  /** value -> observed frequency */
  empirical: Map<number, number>;
  /** value -> exact probability, when the report carried the reference */
  oracle: Map<number, number> | null;
  title: string;
}

export interface TrendRow {
  K: number;
  medianLog2: number;
  log2Prediction: number;
  deviation: number;
}

function asObject(x: unknown, path: string, what: string): Record<string, unknown> {
  if (typeof x !== "object" || x === null || Array.isArray(x)) {
    throw new SchemaError(`${path}: ${what} is not a JSON object`);
  }
  return x as Record<string, unknown>;
}

export function parseReport(text: string, path: string): Record<string, unknown> {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(`${path}: not valid JSON (${(err as Error).message})`);
  }
  const report = asObject(doc, path, "document");
  if (typeof report["experiment"] !== "string") {
    throw new SchemaError(`${path}: missing "experiment" field; is this a simulator report?`);
  }
  return report;
}

function numericMap(raw: Record<string, unknown>, path: string, field: string): Map<number, number> {
  const out = new Map<number, number>();
  for (const key of Object.keys(raw).sort((a, b) => Number(a) - Number(b))) {
    const value = Number(key);
    const prob = raw[key];
    if (!Number.isFinite(value) || typeof prob !== "number") {
      throw new SchemaError(`${path}: ${field} has non-numeric entry ${JSON.stringify(key)}`);
    }
    out.set(value, prob);
  }
  return out;
}

/** Pull the empirical and reference pmfs out of a count-sampling report. */
export function pmfFromReport(report: Record<string, unknown>, path: string): PmfPair {
  if (report["experiment"] !== "bam-xi") {
    throw new SchemaError(
      `${path}: pmf plots read "bam-xi" reports, got "${report["experiment"]}" ` +
      `(re-run the sampler with --format json, or pass a sample CSV)`,
    );
  }
  const empiricalRaw = report["empirical_pmf"];
  if (empiricalRaw === undefined) {
    throw new SchemaError(
      `${path}: report has no empirical_pmf (sampled outside the exact-reference budget)`,
    );
  }
  const empirical = numericMap(asObject(empiricalRaw, path, "empirical_pmf"), path, "empirical_pmf");
  let oracle: Map<number, number> | null = null;
  if (report["pmf_float"] !== undefined) {
    oracle = numericMap(asObject(report["pmf_float"], path, "pmf_float"), path, "pmf_float");
  } else if (report["oracle_pmf"] !== undefined) {
    const raw = asObject(report["oracle_pmf"], path, "oracle_pmf");
    oracle = new Map();
    for (const key of Object.keys(raw).sort((a, b) => Number(a) - Number(b))) {
      oracle.set(Number(key), parseFraction(String(raw[key]), path));
    }
  }
  const config = asObject(report["config"] ?? {}, path, "config");
  const title = `particle count pmf, height K=${config["K"]}, b=${config["b"]}`;
  return { empirical, oracle, title };
}

function parseFraction(text: string, path: string): number {
  const slash = text.indexOf("/");
  if (slash < 0) {
    const value = Number(text);
    if (!Number.isFinite(value)) {
      throw new SchemaError(`${path}: bad probability ${JSON.stringify(text)}`);
    }
    return value;
  }
  const num = Number(text.slice(0, slash));
  const den = Number(text.slice(slash + 1));
  if (!Number.isFinite(num) || !Number.isFinite(den) || den === 0) {
    throw new SchemaError(`${path}: bad fraction ${JSON.stringify(text)}`);
  }
  return num / den;
}

/** Pull the per-height medians and predictions out of a trend report. */
export function trendFromReport(report: Record<string, unknown>, path: string): TrendRow[] {
  if (report["experiment"] !== "asym-txi") {
    throw new SchemaError(
      `${path}: trend plots read "asym-txi" reports, got "${report["experiment"]}"`,
    );
  }
  const perK = asObject(report["per_K"], path, "per_K");
  const rows: TrendRow[] = [];
  for (const key of Object.keys(perK).sort((a, b) => Number(a) - Number(b))) {
    const row = asObject(perK[key], path, `per_K[${key}]`);
    const medianLog2 = row["median_log2"];
    const log2Prediction = row["log2_mK"];
    const deviation = row["deviation"];
    if (typeof medianLog2 !== "number" || typeof log2Prediction !== "number" ||
        typeof deviation !== "number") {
      throw new SchemaError(`${path}: per_K[${key}] is missing median_log2/log2_mK/deviation`);
    }
    rows.push({ K: Number(key), medianLog2, log2Prediction, deviation });
  }
  if (rows.length === 0) {
    throw new SchemaError(`${path}: per_K table is empty`);
  }
  return rows;
}
