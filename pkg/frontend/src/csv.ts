/**
 * Readers for the experiment harness CSVs.
 *
 * The aggregate schema is
 *   setting,n,missing_rate,method,mse_mean,mse_std,fail_frac
 * optionally preceded by `#` comment lines. Matrix files are headerless
 * numeric CSVs (rows = observations or centers).
 */

export class SchemaError extends Error {}

export interface AggregateRow {
  setting: string
  n: number
  missingRate: number
  method: string
  mseMean: number | null
  mseStd: number | null
  failFrac: number
}

export const AGGREGATE_HEADER = 'setting,n,missing_rate,method,mse_mean,mse_std,fail_frac'

function dataLines(text: string): string[] {
  return text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0 && !line.startsWith('#'))
}

function numeric(field: string, where: string): number {
  const v = Number(field)
  if (field === '' || !Number.isFinite(v)) {
    throw new SchemaError(`${where}: expected a number, got '${field}'`)
  }
  return v
}

function numericOrNull(field: string, where: string): number | null {
  return field === '' ? null : numeric(field, where)
}

export function parseAggregateCsv(text: string): AggregateRow[] {
  const lines = dataLines(text)
  if (lines.length === 0) {
    throw new SchemaError('empty aggregate CSV')
  }
  if (lines[0] !== AGGREGATE_HEADER) {
    throw new SchemaError(
      `aggregate header mismatch: expected '${AGGREGATE_HEADER}', got '${lines[0]}'`,
    )
  }
  const rows: AggregateRow[] = []
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(',')
    if (parts.length !== 7) {
      throw new SchemaError(`aggregate line ${i + 1}: expected 7 fields, got ${parts.length}`)
    }
    rows.push({
      setting: parts[0],
      n: numeric(parts[1], `line ${i + 1} (n)`),
      missingRate: numeric(parts[2], `line ${i + 1} (missing_rate)`),
      method: parts[3],
      mseMean: numericOrNull(parts[4], `line ${i + 1} (mse_mean)`),
      mseStd: numericOrNull(parts[5], `line ${i + 1} (mse_std)`),
      failFrac: numeric(parts[6], `line ${i + 1} (fail_frac)`),
    })
  }
  if (rows.length === 0) {
    throw new SchemaError('aggregate CSV has a header but no rows')
  }
  return rows
}

export function parseMatrixCsv(text: string): number[][] {
  const lines = dataLines(text)
  if (lines.length === 0) {
    throw new SchemaError('empty matrix CSV')
  }
  const rows = lines.map((line, i) =>
    line.split(',').map((field) => numeric(field, `matrix line ${i + 1}`)),
  )
  const width = rows[0].length
  for (const [i, row] of rows.entries()) {
    if (row.length !== width) {
      throw new SchemaError(`matrix line ${i + 1}: ragged row (${row.length} vs ${width})`)
    }
  }
  return rows
}
