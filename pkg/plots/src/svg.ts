/**
 * Hand-rolled SVG primitives. No DOM, no dates, no randomness: the
 * same inputs must produce the same bytes, because rerendering a
 * figure from an unchanged CSV has to be a no-op in version control.
 */

export const WIDTH = 640;
export const HEIGHT = 440;
export const MARGIN = { left: 72, right: 24, top: 44, bottom: 56 };

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c"];

/** Fixed-precision number -> string, the only float formatter used. */
export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "nan";
  const s = Number(x.toPrecision(6)).toString();
  return s === "-0" ? "0" : s;
}

export interface Scale {
  (x: number): number;
  ticks: number[];
}

function niceStep(raw: number): number {
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const r = raw / mag;
  if (r <= 1) return mag;
  if (r <= 2) return 2 * mag;
  if (r <= 5) return 5 * mag;
  return 10 * mag;
}

export function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (hi <= lo) {
    // degenerate domain (single value): pad a symmetric window around it
    const pad = lo === 0 ? 1 : Math.abs(lo) * 0.1;
    hi = lo + pad;
    lo = lo - pad;
  }
  const span = hi - lo;
  const step = niceStep(span / 5);
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + span * 1e-9; t += step) {
    ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  const f = (x: number) => outLo + ((x - lo) / span) * (outHi - outLo);
  return Object.assign(f, { ticks });
}

export function logScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (!(lo > 0) || !(hi > 0)) throw new Error("log scale needs positive bounds");
  if (hi <= lo) {
    lo = lo / 2;
    hi = hi * 2;
  }
  const la = Math.log10(lo);
  const lb = Math.log10(hi);
  const ticks: number[] = [];
  const mantissas = lb - la <= 1.5 ? [1, 2, 5] : [1];
  for (let e = Math.floor(la); e <= Math.ceil(lb); e++) {
    for (const m of mantissas) {
      const t = m * Math.pow(10, e);
      if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) ticks.push(t);
    }
  }
  const f = (x: number) => outLo + ((Math.log10(x) - la) / (lb - la)) * (outHi - outLo);
  return Object.assign(f, { ticks });
}

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export class Svg {
  private parts: string[] = [];

  constructor(title: string) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
      `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">${esc(title)}</text>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
      `stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  polyline(pts: Array<[number, number]>, stroke: string): void {
    const d = pts.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline points="${d}" fill="none" stroke="${stroke}" stroke-width="1.5"/>`);
  }

  circle(x: number, y: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${fill}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string, opacity: number): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ` +
      `fill="${fill}" opacity="${opacity}"/>`,
    );
  }

  text(x: number, y: number, s: string, anchor = "middle", size = 11, extra = ""): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" font-size="${size}"${extra}>` +
      `${esc(s)}</text>`,
    );
  }

  /** Bottom x axis and left y axis with tick marks and labels. */
  axes(xs: Scale, ys: Scale, xlabel: string, ylabel: string): void {
    const { left, right, top, bottom } = MARGIN;
    const x0 = left;
    const x1 = WIDTH - right;
    const y0 = HEIGHT - bottom;
    const y1 = top;
    this.line(x0, y0, x1, y0, "#333");
    this.line(x0, y0, x0, y1, "#333");
    for (const t of xs.ticks) {
      const px = xs(t);
      this.line(px, y0, px, y0 + 5, "#333");
      this.text(px, y0 + 18, fmt(t));
    }
    for (const t of ys.ticks) {
      const py = ys(t);
      this.line(x0 - 5, py, x0, py, "#333");
      this.text(x0 - 8, py + 4, fmt(t), "end");
    }
    this.text((x0 + x1) / 2, HEIGHT - 12, xlabel, "middle", 12);
    this.text(16, (y0 + y1) / 2, ylabel, "middle", 12,
      ` transform="rotate(-90 16 ${fmt((y0 + y1) / 2)})"`);
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}
