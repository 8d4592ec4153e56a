/** CSV ingestion with strict column contracts.
 *
 * The primary component writes plain comma-separated files with a single
 * header row and no quoting; anything fancier here would hide producer bugs.
 */

export class MissingColumnError extends Error {
  constructor(public readonly column: string, public readonly path: string) {
    super(`missing contract column "${column}" in ${path}`);
  }
}

export interface Table {
  columns: string[];
  rows: number[][];
}

export function parseCsv(text: string, source = "<string>"): Table {
  const lines = text
    .split(/\r?\n/)
    .filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new Error(`empty CSV: ${source}`);
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows: number[][] = [];
  for (const line of lines.slice(1)) {
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new Error(
        `row width ${parts.length} != header width ${columns.length} in ${source}`,
      );
    }
    rows.push(parts.map((p) => Number(p)));
  }
  return { columns, rows };
}

export function requireColumns(
  table: Table,
  required: string[],
  source: string,
): Map<string, number[]> {
  const out = new Map<string, number[]>();
  for (const name of required) {
    const idx = table.columns.indexOf(name);
    if (idx < 0) {
      throw new MissingColumnError(name, source);
    }
    out.set(
      name,
      table.rows.map((r) => r[idx]),
    );
  }
  return out;
}
