/** Readers for the simulator's sample CSV layout (replicate,value). */

import { SchemaError } from "./errors.js";

/**
 * Parse a two-column sample file.  The header must be exactly
 * `replicate,value` and replicate indices must count 0..n-1 in order,
 * which is what the producer guarantees whatever its worker count.
 */
export function parseSampleCsv(text: string, path: string): number[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${path}: empty file, expected a sample CSV`);
  }
  const header = lines[0]!.trim();
  if (header !== "replicate,value") {
    throw new SchemaError(
      `${path}: bad header ${JSON.stringify(header)}, expected "replicate,value"`,
    );
  }
  if (lines.length === 1) {
    throw new SchemaError(`${path}: header but no samples`);
  }
  const values: number[] = [];
  for (let i = 1; i < lines.length; i++) {
    const row = lines[i]!;
    const comma = row.indexOf(",");
    if (comma < 0) {
      throw new SchemaError(`${path}:${i + 1}: expected "replicate,value", got ${JSON.stringify(row)}`);
    }
    const rep = Number(row.slice(0, comma));
    const value = Number(row.slice(comma + 1));
    if (!Number.isInteger(rep) || rep !== i - 1) {
      throw new SchemaError(`${path}:${i + 1}: replicate index ${row.slice(0, comma)} out of order`);
    }
    if (!Number.isFinite(value)) {
      throw new SchemaError(`${path}:${i + 1}: value ${JSON.stringify(row.slice(comma + 1))} is not a number`);
    }
    values.push(value);
  }
  return values;
}

/** Empirical probability mass function of an integer-valued sample. */
export function empiricalPmf(values: number[]): Map<number, number> {
  const counts = new Map<number, number>();
  for (const v of values) {
    counts.set(v, (counts.get(v) ?? 0) + 1);
  }
  const pmf = new Map<number, number>();
  for (const key of [...counts.keys()].sort((a, b) => a - b)) {
    pmf.set(key, counts.get(key)! / values.length);
  }
  return pmf;
}
