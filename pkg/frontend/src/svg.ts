/**
 * Minimal deterministic SVG plot builder: fixed canvas, log or linear axes,
 * polylines, markers, reference lines.  No DOM, no randomness, plain strings,
 * so the same inputs always produce byte-identical files.
 */

export type AxisKind = "log" | "linear";

export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
  xKind: AxisKind;
  yKind: AxisKind;
  xDomain: [number, number];
  yDomain: [number, number];
}

const fmt = (v: number): string => v.toFixed(2);

export function makeScale(kind: AxisKind, domain: [number, number], range: [number, number]) {
  const [d0, d1] = kind === "log" ? [Math.log10(domain[0]), Math.log10(domain[1])] : domain;
  const span = d1 - d0 || 1;
  return (v: number): number => {
    const x = kind === "log" ? Math.log10(v) : v;
    return range[0] + ((x - d0) / span) * (range[1] - range[0]);
  };
}

export function decadeTicks(domain: [number, number]): number[] {
  const lo = Math.ceil(Math.log10(domain[0]) - 1e-9);
  const hi = Math.floor(Math.log10(domain[1]) + 1e-9);
  const out: number[] = [];
  for (let e = lo; e <= hi; e++) out.push(Math.pow(10, e));
  return out;
}

export function linearTicks(domain: [number, number], count = 5): number[] {
  const [a, b] = domain;
  if (!(b > a)) return [a];
  const step = (b - a) / (count - 1);
  return Array.from({ length: count }, (_, i) => a + i * step);
}

const tickLabel = (v: number): string => {
  if (v === 0) return "0";
  const e = Math.log10(Math.abs(v));
  if (Number.isInteger(e) && (e >= 4 || e <= -3)) return `1e${e}`;
  return Math.abs(v) >= 1e4 || Math.abs(v) < 1e-3 ? v.toExponential(1) : String(Number(v.toPrecision(4)));
};

export class SvgPlot {
  private parts: string[] = [];
  readonly x: (v: number) => number;
  readonly y: (v: number) => number;

  constructor(readonly frame: Frame, title: string) {
    const { width, height, margin } = frame;
    this.x = makeScale(frame.xKind, frame.xDomain, [margin.left, width - margin.right]);
    this.y = makeScale(frame.yKind, frame.yDomain, [height - margin.bottom, margin.top]);
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
      `<text x="${width / 2}" y="${margin.top - 8}" text-anchor="middle" font-family="monospace" font-size="13">${escapeXml(title)}</text>`,
    );
  }

  axes(xLabel: string, yLabel: string): void {
    const { width, height, margin, xKind, yKind, xDomain, yDomain } = this.frame;
    const x0 = margin.left;
    const x1 = width - margin.right;
    const y0 = height - margin.bottom;
    const y1 = margin.top;
    this.parts.push(
      `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`,
      `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`,
    );
    const xt = xKind === "log" ? decadeTicks(xDomain) : linearTicks(xDomain);
    for (const v of xt) {
      const px = this.x(v);
      this.parts.push(
        `<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 4}" stroke="black"/>`,
        `<text x="${fmt(px)}" y="${y0 + 16}" text-anchor="middle" font-family="monospace" font-size="10">${tickLabel(v)}</text>`,
      );
    }
    const yt = yKind === "log" ? decadeTicks(yDomain) : linearTicks(yDomain);
    for (const v of yt) {
      const py = this.y(v);
      this.parts.push(
        `<line x1="${x0 - 4}" y1="${fmt(py)}" x2="${x0}" y2="${fmt(py)}" stroke="black"/>`,
        `<text x="${x0 - 6}" y="${fmt(py + 3)}" text-anchor="end" font-family="monospace" font-size="10">${tickLabel(v)}</text>`,
      );
    }
    this.parts.push(
      `<text x="${(x0 + x1) / 2}" y="${height - 6}" text-anchor="middle" font-family="monospace" font-size="11">${escapeXml(xLabel)}</text>`,
      `<text x="12" y="${(y0 + y1) / 2}" text-anchor="middle" font-family="monospace" font-size="11" transform="rotate(-90 12 ${(y0 + y1) / 2})">${escapeXml(yLabel)}</text>`,
    );
  }

  polyline(xs: number[], ys: number[], stroke: string, attrs = ""): void {
    if (xs.length === 0) return;
    const pts = xs.map((v, i) => `${fmt(this.x(v))},${fmt(this.y(ys[i]))}`).join(" ");
    this.parts.push(`<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="1.5" ${attrs}/>`);
  }

  markers(xs: number[], ys: number[], fill: string): void {
    for (let i = 0; i < xs.length; i++) {
      this.parts.push(`<circle cx="${fmt(this.x(xs[i]))}" cy="${fmt(this.y(ys[i]))}" r="3" fill="${fill}"/>`);
    }
  }

  hline(yValue: number, stroke: string, label: string, data: Record<string, string> = {}): void {
    const { width, margin } = this.frame;
    const py = fmt(this.y(yValue));
    const dataAttrs = Object.entries(data)
      .map(([k, v]) => `data-${k}="${v}"`)
      .join(" ");
    this.parts.push(
      `<line x1="${margin.left}" y1="${py}" x2="${width - margin.right}" y2="${py}" stroke="${stroke}" stroke-dasharray="6 3" ${dataAttrs}/>`,
      `<text x="${width - margin.right + 4}" y="${fmt(this.y(yValue) + 3)}" font-family="monospace" font-size="10" fill="${stroke}">${escapeXml(label)}</text>`,
    );
  }

  note(text: string, line: number): void {
    const { margin } = this.frame;
    this.parts.push(
      `<text x="${margin.left + 6}" y="${margin.top + 14 + 14 * line}" font-family="monospace" font-size="11">${escapeXml(text)}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function padDomain(values: number[], kind: AxisKind): [number, number] {
  if (values.length === 0) return kind === "log" ? [0.1, 10] : [0, 1];
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (kind === "log") {
    lo = lo > 0 ? lo / 1.5 : 1e-12;
    hi = hi > 0 ? hi * 1.5 : 1;
    return [lo, hi];
  }
  const pad = (hi - lo || Math.abs(hi) || 1) * 0.1;
  return [lo - pad, hi + pad];
}
