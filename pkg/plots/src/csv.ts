import { readFileSync } from "fs";

/** One aggregated sweep row, straight from the harness CSV. */
export interface SweepRow {
  m: number;
  d: number;
  N: number;
  sampler: string;
  method: string;
  R: number;
  mean_disc: number;
  std_disc: number;
  ci95_lo: number;
  ci95_hi: number;
  mean_normalized: number;
  witness_mean: number;
  bound_lower: number;
  bound_upper: number;
  seed: number;
}

export const COLUMNS = [
  "m", "d", "N", "sampler", "method", "R",
  "mean_disc", "std_disc", "ci95_lo", "ci95_hi", "mean_normalized",
  "witness_mean", "bound_lower", "bound_upper", "seed",
] as const;

const STRING_COLUMNS = new Set(["sampler", "method"]);

function parseNumber(field: string, column: string, path: string, lineno: number): number {
  if (field === "nan") return NaN;
  const v = Number(field);
  if (field === "" || !Number.isFinite(v)) {
    throw new Error(`${path}:${lineno}: column '${column}' is not a number: '${field}'`);
  }
  return v;
}

/**
 * Read a sweep CSV. Comment lines (the optional timestamp stamp) are
 * skipped; the header must carry exactly the expected columns so a
 * missing or renamed column fails by name, not by position.
 */
export function readSweepCsv(path: string): SweepRow[] {
  const lines = readFileSync(path, "ascii").split("\n");
  const rows: Array<[number, string]> = [];
  for (let i = 0; i < lines.length; i++) {
    const s = lines[i].trim();
    if (s === "" || s.startsWith("#")) continue;
    rows.push([i + 1, s]);
  }
  if (rows.length === 0) throw new Error(`${path}: empty CSV`);
  const header = rows[0][1].split(",");
  for (let i = 0; i < COLUMNS.length; i++) {
    if (header[i] !== COLUMNS[i]) {
      throw new Error(
        `${path}:${rows[0][0]}: expected column '${COLUMNS[i]}' at position ${i + 1}, ` +
        `got '${header[i] ?? ""}'`,
      );
    }
  }
  if (header.length !== COLUMNS.length) {
    throw new Error(`${path}:${rows[0][0]}: expected ${COLUMNS.length} columns, got ${header.length}`);
  }
  const out: SweepRow[] = [];
  for (const [lineno, line] of rows.slice(1)) {
    const fields = line.split(",");
    if (fields.length !== COLUMNS.length) {
      throw new Error(`${path}:${lineno}: expected ${COLUMNS.length} fields, got ${fields.length}`);
    }
    const rec: Record<string, number | string> = {};
    COLUMNS.forEach((col, i) => {
      rec[col] = STRING_COLUMNS.has(col) ? fields[i] : parseNumber(fields[i], col, path, lineno);
    });
    out.push(rec as unknown as SweepRow);
  }
  if (out.length === 0) throw new Error(`${path}: no data rows`);
  return out;
}
