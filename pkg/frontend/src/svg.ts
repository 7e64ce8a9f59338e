/** Small deterministic SVG builder: fixed sizes, fixed precision, no DOM. */

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN = { top: 48, right: 24, bottom: 48, left: 64 };

export function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

/** Coordinates at fixed precision so output bytes never wobble. */
export function px(x: number): string {
  return x.toFixed(2);
}

/** Data values in labels: short, stable formatting. */
export function fmtValue(x: number): string {
  if (Number.isInteger(x) && Math.abs(x) < 1e9) {
    return String(x);
  }
  return x.toPrecision(4);
}

export interface TextOptions {
  anchor?: "start" | "middle" | "end";
  size?: number;
  fill?: string;
  rotate?: number;
}

export class SvgDoc {
  private parts: string[] = [];

  constructor(readonly width = WIDTH, readonly height = HEIGHT) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
      `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`,
    );
  }

  rect(x: number, y: number, w: number, h: number, fill: string, opacity = 1): void {
    const op = opacity === 1 ? "" : ` fill-opacity="${opacity}"`;
    this.parts.push(`<rect x="${px(x)}" y="${px(y)}" width="${px(w)}" height="${px(h)}" fill="${fill}"${op}/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1, dash?: string): void {
    const extra = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${px(x1)}" y1="${px(y1)}" x2="${px(x2)}" y2="${px(y2)}" ` +
      `stroke="${stroke}" stroke-width="${width}"${extra}/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5, dash?: string): void {
    const path = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
    const extra = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<polyline points="${path}" fill="none" stroke="${stroke}" stroke-width="${width}"${extra}/>`,
    );
  }

  circle(cx: number, cy: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${px(cx)}" cy="${px(cy)}" r="${px(r)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, content: string, options: TextOptions = {}): void {
    const anchor = options.anchor ?? "start";
    const size = options.size ?? 12;
    const fill = options.fill ?? "#222";
    const transform = options.rotate
      ? ` transform="rotate(${options.rotate} ${px(x)} ${px(y)})"`
      : "";
    this.parts.push(
      `<text x="${px(x)}" y="${px(y)}" text-anchor="${anchor}" font-size="${size}" ` +
      `fill="${fill}"${transform}>${esc(content)}</text>`,
    );
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

/** Round tick positions on the 1-2-5 ladder covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const rawStep = (hi - lo) / target;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = power;
  for (const mult of [1, 2, 5, 10]) {
    step = mult * power;
    if (step >= rawStep) {
      break;
    }
  }
  const ticks: number[] = [];
  let t = Math.ceil(lo / step) * step;
  // snap to the grid to avoid 0.30000000000000004-style labels
  const decimals = Math.max(0, -Math.floor(Math.log10(step)) + 1);
  while (t <= hi + step * 1e-9) {
    ticks.push(Number(t.toFixed(decimals)));
    t += step;
  }
  return ticks;
}

/** Linear mapping from a data range onto a pixel range. */
export function scale(lo: number, hi: number, pxLo: number, pxHi: number): (x: number) => number {
  const span = hi - lo;
  if (span === 0) {
    return () => (pxLo + pxHi) / 2;
  }
  return (x: number) => pxLo + ((x - lo) / span) * (pxHi - pxLo);
}
