import { SweepRow, readSweepCsv } from "./csv";
import { HEIGHT, MARGIN, PALETTE, Svg, WIDTH, fmt, linearScale, logScale } from "./svg";

export type FigureKind = "collapse" | "comparison" | "envelope";

export interface FigureSpec {
  kind: FigureKind;
  inputs: string[];
  /** log-log axes; fixed per kind (envelope true, others false). */
  logLog?: boolean;
}

const X0 = MARGIN.left;
const X1 = WIDTH - MARGIN.right;
const Y0 = HEIGHT - MARGIN.bottom;
const Y1 = MARGIN.top;

/** Predicted growth rate of mean D* for the jittered full grid. */
function rate(m: number, d: number): number {
  const radicand = 1 + Math.log(m / d);
  if (radicand <= 0) throw new Error(`collapse rate undefined at m=${m}, d=${d}`);
  return d * Math.pow(m, (d - 1) / 2) * Math.sqrt(radicand);
}

function loadAll(inputs: string[]): SweepRow[] {
  if (inputs.length === 0) throw new Error("no input CSV given");
  return inputs.flatMap(readSweepCsv);
}

/**
 * Ratio mean_disc / rate(m, d) against m. The shaded band spans the
 * observed min..max ratio; the flatter and thinner it is, the better
 * the rate law. This is a per-row arithmetic transform of CSV columns;
 * no statistic is recomputed here.
 */
function renderCollapse(rows: SweepRow[]): string {
  for (const r of rows) {
    if (r.sampler !== "jittered") {
      throw new Error(`collapse needs jittered rows, got sampler '${r.sampler}'`);
    }
  }
  const sorted = [...rows].sort((a, b) => a.m - b.m);
  const ratios = sorted.map((r) => r.mean_disc / rate(r.m, r.d));
  const lo = Math.min(...ratios);
  const hi = Math.max(...ratios);
  const svg = new Svg("scaling collapse: mean D* over predicted rate");
  const xs = linearScale(sorted[0].m, sorted[sorted.length - 1].m, X0, X1);
  const pad = (hi - lo || lo * 0.1 || 1) * 0.5;
  const ys = linearScale(Math.max(0, lo - pad), hi + pad, Y0, Y1);
  svg.rect(X0, ys(hi), X1 - X0, ys(lo) - ys(hi), PALETTE[0], 0.15);
  svg.axes(xs, ys, "m (cells per axis)", "mean_disc / rate");
  svg.polyline(sorted.map((r, i) => [xs(r.m), ys(ratios[i])]), PALETTE[0]);
  sorted.forEach((r, i) => svg.circle(xs(r.m), ys(ratios[i]), 3.5, PALETTE[0]));
  svg.text(X1, Y1 + 12, `spread max/min = ${fmt(hi / lo)}`, "end");
  return svg.toString();
}

/**
 * mean_normalized per row with 95% CI whiskers, one category slot per
 * row across all input CSVs. The CI columns are stored on mean_disc,
 * so they are divided by N: a unit change, not a new statistic.
 */
function renderComparison(rows: SweepRow[]): string {
  const svg = new Svg("mean normalized star discrepancy, 95% CI");
  const los = rows.map((r) => r.ci95_lo / r.N);
  const his = rows.map((r) => r.ci95_hi / r.N);
  const span = Math.max(...his) - Math.min(...los);
  const pad = span > 0 ? span * 0.4 : Math.max(...his) * 0.1 || 1;
  const ys = linearScale(Math.min(...los) - pad, Math.max(...his) + pad, Y0, Y1);
  const xs = linearScale(0, rows.length, X0, X1);
  svg.line(X0, Y0, X1, Y0, "#333");
  svg.line(X0, Y0, X0, Y1, "#333");
  for (const t of ys.ticks) {
    svg.line(X0 - 5, ys(t), X0, ys(t), "#333");
    svg.text(X0 - 8, ys(t) + 4, fmt(t), "end");
  }
  rows.forEach((r, i) => {
    const cx = xs(i + 0.5);
    const color = PALETTE[i % PALETTE.length];
    svg.line(cx, ys(los[i]), cx, ys(his[i]), color, 1.5);
    svg.line(cx - 6, ys(los[i]), cx + 6, ys(los[i]), color, 1.5);
    svg.line(cx - 6, ys(his[i]), cx + 6, ys(his[i]), color, 1.5);
    svg.circle(cx, ys(r.mean_normalized), 4, color);
    svg.text(cx, Y0 + 18, `${r.sampler} N=${r.N}`);
    svg.text(cx, ys(r.mean_normalized) - 10, fmt(r.mean_normalized));
  });
  svg.text(16, (Y0 + Y1) / 2, "mean D* / N", "middle", 12,
    ` transform="rotate(-90 16 ${fmt((Y0 + Y1) / 2)})"`);
  return svg.toString();
}

interface Series {
  label: string;
  color: string;
  pts: Array<[number, number]>;
}

/** Log-log overlay of the mean against the closed-form bound columns. */
function renderEnvelope(rows: SweepRow[]): string {
  const sorted = [...rows].sort((a, b) => a.N - b.N);
  const series: Series[] = [];
  const pick = (label: string, color: string, get: (r: SweepRow) => number) => {
    const pts = sorted
      .map((r): [number, number] => [r.N, get(r)])
      .filter(([, v]) => Number.isFinite(v) && v > 0);
    if (pts.length > 0) series.push({ label, color, pts });
  };
  pick("mean_disc", PALETTE[0], (r) => r.mean_disc);
  pick("bound_lower", PALETTE[2], (r) => r.bound_lower);
  pick("bound_upper", PALETTE[1], (r) => r.bound_upper);
  if (series.length < 2) {
    throw new Error("envelope needs bound_lower or bound_upper next to mean_disc");
  }
  const allX = series.flatMap((s) => s.pts.map(([x]) => x));
  const allY = series.flatMap((s) => s.pts.map(([, y]) => y));
  const svg = new Svg("mean star discrepancy inside the bound envelope");
  const xs = logScale(Math.min(...allX), Math.max(...allX), X0, X1);
  const ys = logScale(Math.min(...allY), Math.max(...allY), Y0, Y1);
  svg.axes(xs, ys, "N (log)", "value (log)");
  series.forEach((s, i) => {
    svg.polyline(s.pts.map(([x, y]) => [xs(x), ys(y)]), s.color);
    s.pts.forEach(([x, y]) => svg.circle(xs(x), ys(y), 3, s.color));
    svg.text(X1, Y1 + 12 + 14 * i, s.label, "end", 11, ` fill="${s.color}"`);
  });
  return svg.toString();
}

export function renderFigure(spec: FigureSpec): string {
  const rows = loadAll(spec.inputs);
  switch (spec.kind) {
    case "collapse":
      return renderCollapse(rows);
    case "comparison":
      return renderComparison(rows);
    case "envelope":
      return renderEnvelope(rows);
  }
}
