/** The three plot kinds. Every renderer is a pure function from parsed data to SVG text. */

import { SvgDoc, MARGIN, WIDTH, HEIGHT, niceTicks, scale, fmtValue } from "./svg.js";
import type { PmfPair, TrendRow } from "./report.js";

const BAR_FILL = "#4878a8";
const ORACLE_FILL = "#c44e52";
const CURVE_A = "#4878a8";
const CURVE_B = "#c44e52";
const GRID = "#ddd";
const AXIS = "#444";

interface Frame {
  doc: SvgDoc;
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}

function frame(title: string, xlabel: string, ylabel: string): Frame {
  const doc = new SvgDoc();
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  doc.text(WIDTH / 2, 24, title, { anchor: "middle", size: 15 });
  doc.text((x0 + x1) / 2, HEIGHT - 12, xlabel, { anchor: "middle", size: 12 });
  doc.text(18, (y0 + y1) / 2, ylabel, { anchor: "middle", size: 12, rotate: -90 });
  return { doc, x0, x1, y0, y1 };
}

function drawAxes(f: Frame, xTicks: number[], yTicks: number[],
                  sx: (x: number) => number, sy: (y: number) => number): void {
  for (const t of yTicks) {
    const y = sy(t);
    f.doc.line(f.x0, y, f.x1, y, GRID, 1);
    f.doc.text(f.x0 - 6, y + 4, fmtValue(t), { anchor: "end", size: 10 });
  }
  for (const t of xTicks) {
    const x = sx(t);
    f.doc.line(x, f.y0, x, f.y0 + 4, AXIS, 1);
    f.doc.text(x, f.y0 + 16, fmtValue(t), { anchor: "middle", size: 10 });
  }
  f.doc.line(f.x0, f.y0, f.x1, f.y0, AXIS, 1);
  f.doc.line(f.x0, f.y0, f.x0, f.y1, AXIS, 1);
}

/** Bar chart of an empirical pmf, with oracle masses marked when present. */
export function renderPmf(pair: PmfPair): string {
  const support = [...pair.empirical.keys()].sort((a, b) => a - b);
  if (support.length === 0) {
    throw new Error("empty pmf");
  }
  const lo = support[0]! - 1;
  const hi = support[support.length - 1]! + 1;
  let peak = 0;
  for (const p of pair.empirical.values()) {
    peak = Math.max(peak, p);
  }
  if (pair.oracle) {
    for (const p of pair.oracle.values()) {
      peak = Math.max(peak, p);
    }
  }

  const f = frame(pair.title, "value", "probability");
  const sx = scale(lo, hi, f.x0, f.x1);
  const sy = scale(0, peak * 1.1, f.y0, f.y1);
  drawAxes(f, support, niceTicks(0, peak * 1.1), sx, sy);

  const slot = (f.x1 - f.x0) / (hi - lo);
  const barW = Math.min(slot * 0.7, 48);
  for (const v of support) {
    const p = pair.empirical.get(v)!;
    f.doc.rect(sx(v) - barW / 2, sy(p), barW, f.y0 - sy(p), BAR_FILL, 0.85);
  }
  if (pair.oracle) {
    const oracleSupport = [...pair.oracle.keys()].sort((a, b) => a - b);
    for (const v of oracleSupport) {
      const p = pair.oracle.get(v)!;
      f.doc.line(sx(v) - barW / 2 - 4, sy(p), sx(v) + barW / 2 + 4, sy(p), ORACLE_FILL, 2);
      f.doc.circle(sx(v), sy(p), 3, ORACLE_FILL);
    }
    f.doc.rect(f.x1 - 150, f.y1 + 6, 12, 12, BAR_FILL, 0.85);
    f.doc.text(f.x1 - 134, f.y1 + 16, "empirical", { size: 11 });
    f.doc.line(f.x1 - 150, f.y1 + 30, f.x1 - 138, f.y1 + 30, ORACLE_FILL, 2);
    f.doc.text(f.x1 - 134, f.y1 + 34, "exact", { size: 11 });
  }
  return f.doc.toString();
}

function ecdfSteps(sorted: number[]): Array<[number, number]> {
  const n = sorted.length;
  const points: Array<[number, number]> = [];
  let i = 0;
  while (i < n) {
    let j = i;
    while (j < n && sorted[j] === sorted[i]) {
      j += 1;
    }
    points.push([sorted[i]!, j / n]);
    i = j;
  }
  return points;
}

/** Largest vertical gap between two ecdfs over the pooled support. */
export function ksDistance(a: number[], b: number[]): number {
  const sa = [...a].sort((x, y) => x - y);
  const sb = [...b].sort((x, y) => x - y);
  let i = 0;
  let j = 0;
  let d = 0;
  while (i < sa.length && j < sb.length) {
    const va = sa[i]!;
    const vb = sb[j]!;
    const v = Math.min(va, vb);
    while (i < sa.length && sa[i]! <= v) {
      i += 1;
    }
    while (j < sb.length && sb[j]! <= v) {
      j += 1;
    }
    d = Math.max(d, Math.abs(i / sa.length - j / sb.length));
  }
  return d;
}

/** Two empirical distribution functions drawn as step curves, with the max gap reported. */
export function renderEcdfPair(a: number[], b: number[], labelA: string, labelB: string): string {
  if (a.length === 0 || b.length === 0) {
    throw new Error("empty sample");
  }
  const sa = [...a].sort((x, y) => x - y);
  const sb = [...b].sort((x, y) => x - y);
  const lo = Math.min(sa[0]!, sb[0]!);
  const hi = Math.max(sa[sa.length - 1]!, sb[sb.length - 1]!);
  const pad = hi > lo ? (hi - lo) * 0.05 : 1;

  const f = frame("empirical distribution functions", "value", "F(x)");
  const sx = scale(lo - pad, hi + pad, f.x0, f.x1);
  const sy = scale(0, 1, f.y0, f.y1);
  drawAxes(f, niceTicks(lo, hi), [0, 0.25, 0.5, 0.75, 1], sx, sy);

  const curves: Array<[number[], string]> = [[sa, CURVE_A], [sb, CURVE_B]];
  for (const [sorted, color] of curves) {
    const steps = ecdfSteps(sorted);
    const points: Array<[number, number]> = [[sx(lo - pad), sy(0)]];
    let prevY = 0;
    for (const [v, level] of steps) {
      points.push([sx(v), sy(prevY)]);
      points.push([sx(v), sy(level)]);
      prevY = level;
    }
    points.push([sx(hi + pad), sy(1)]);
    f.doc.polyline(points, color, 1.5);
  }

  const d = ksDistance(a, b);
  f.doc.line(f.x0 + 8, f.y1 + 10, f.x0 + 36, f.y1 + 10, CURVE_A, 2);
  f.doc.text(f.x0 + 42, f.y1 + 14, labelA, { size: 11 });
  f.doc.line(f.x0 + 8, f.y1 + 28, f.x0 + 36, f.y1 + 28, CURVE_B, 2);
  f.doc.text(f.x0 + 42, f.y1 + 32, labelB, { size: 11 });
  f.doc.text(f.x1 - 8, f.y1 + 14, `D = ${fmtValue(d)}`, { anchor: "end", size: 12 });
  return f.doc.toString();
}

/** Median log-size against its predicted curve, one point per tree height. */
export function renderAsymTrend(rows: TrendRow[]): string {
  if (rows.length === 0) {
    throw new Error("no trend rows");
  }
  const ks = rows.map((r) => r.K);
  const values = rows.flatMap((r) => [r.medianLog2, r.log2Prediction]);
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const pad = hi > lo ? (hi - lo) * 0.08 : 1;

  const f = frame("median growth against prediction", "height K", "log2 of node count");
  const sx = scale(ks[0]! - 1, ks[ks.length - 1]! + 1, f.x0, f.x1);
  const sy = scale(lo - pad, hi + pad, f.y0, f.y1);
  drawAxes(f, ks, niceTicks(lo, hi), sx, sy);

  const predicted: Array<[number, number]> = rows.map((r) => [sx(r.K), sy(r.log2Prediction)]);
  f.doc.polyline(predicted, CURVE_B, 1.5, "5,3");
  const measured: Array<[number, number]> = rows.map((r) => [sx(r.K), sy(r.medianLog2)]);
  f.doc.polyline(measured, CURVE_A, 1.5);
  for (const r of rows) {
    f.doc.circle(sx(r.K), sy(r.medianLog2), 3.5, CURVE_A);
  }

  let worst = 0;
  for (const r of rows) {
    worst = Math.max(worst, Math.abs(r.deviation));
  }
  f.doc.line(f.x0 + 8, f.y1 + 10, f.x0 + 36, f.y1 + 10, CURVE_A, 2);
  f.doc.text(f.x0 + 42, f.y1 + 14, "measured median", { size: 11 });
  f.doc.line(f.x0 + 8, f.y1 + 28, f.x0 + 36, f.y1 + 28, CURVE_B, 2);
  f.doc.text(f.x0 + 42, f.y1 + 32, "prediction", { size: 11 });
  f.doc.text(f.x1 - 8, f.y1 + 14, `max scaled deviation = ${fmtValue(worst)}`, { anchor: "end", size: 12 });
  return f.doc.toString();
}
