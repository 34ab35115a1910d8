/**
 * Minimal CSV reader for the simulator's exports: comma-separated, first
 * line is the header, no quoting (the exporter never emits commas inside
 * fields).
 */

export interface Table {
  columns: string[];
  rows: Array<Record<string, string>>;
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV: no header line");
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line) => {
    const cells = line.split(",");
    const row: Record<string, string> = {};
    columns.forEach((name, i) => {
      row[name] = cells[i] ?? "";
    });
    return row;
  });
  return { columns, rows };
}

/** Throw if the table misses any of the named columns or has no rows. */
export function requireColumns(table: Table, names: string[], context: string): void {
  const missing = names.filter((n) => !table.columns.includes(n));
  if (missing.length > 0) {
    throw new Error(`${context}: missing columns: ${missing.join(", ")}`);
  }
  if (table.rows.length === 0) {
    throw new Error(`${context}: no data rows`);
  }
}

export function numeric(row: Record<string, string>, column: string): number {
  const value = Number(row[column]);
  if (!Number.isFinite(value)) {
    throw new Error(`non-numeric value ${JSON.stringify(row[column])} in column ${column}`);
  }
  return value;
}
