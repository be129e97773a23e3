/**
 * Reader for the primary tool's CSV contract: '# ' comment lines, one header
 * row, then comma-separated data rows (17-digit scientific reals, lowercase
 * booleans).
 */

export interface CsvTable {
  comments: string[];
  columns: string[];
  rows: string[][];
}

export class SchemaMismatchError extends Error {
  constructor(
    readonly expected: string[],
    readonly actual: string[],
  ) {
    const missing = expected.filter((c) => !actual.includes(c));
    const extra = actual.filter((c) => !expected.includes(c));
    super(
      `CSV header does not match the documented schema\n` +
        `  expected: ${expected.join(",")}\n` +
        `  actual:   ${actual.join(",")}\n` +
        (missing.length ? `  missing:  ${missing.join(",")}\n` : "") +
        (extra.length ? `  extra:    ${extra.join(",")}` : ""),
    );
    this.name = "SchemaMismatchError";
  }
}

export function parseCsv(text: string): CsvTable {
  const comments: string[] = [];
  let columns: string[] | null = null;
  const rows: string[][] = [];
  for (const raw of text.split(/\r?\n/)) {
    const line = raw.trimEnd();
    if (line.length === 0) continue;
    if (line.startsWith("#")) {
      comments.push(line);
      continue;
    }
    if (columns === null) {
      columns = line.split(",");
      continue;
    }
    rows.push(line.split(","));
  }
  if (columns === null) {
    throw new Error("CSV has no header row");
  }
  return { comments, columns, rows };
}

export function requireColumns(table: CsvTable, expected: string[]): void {
  const ok =
    table.columns.length === expected.length &&
    expected.every((c, i) => table.columns[i] === c);
  if (!ok) throw new SchemaMismatchError(expected, table.columns);
}

export function numericColumn(table: CsvTable, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) throw new SchemaMismatchError([name], table.columns);
  return table.rows.map((r) => {
    const v = Number(r[idx]);
    if (!Number.isFinite(v)) throw new Error(`non-numeric value ${r[idx]} in column ${name}`);
    return v;
  });
}
