#!/usr/bin/env node
/**
 * plot-trend --input aggregate.csv --out trend.svg [--png]
 *
 * Draws MSE-versus-n curves (one per method) from an aggregate CSV.
 */

import { readFileSync } from 'fs'
import { parseArgs, requireFlag, UsageError } from './args'
import { parseAggregateCsv, SchemaError } from './csv'
import { writeImage } from './output'
import { buildTrendSvg } from './trend'

export function run(argv: string[]): number {
  try {
    const flags = parseArgs(argv, ['input', 'out'], ['png'])
    const input = requireFlag(flags, 'input')
    const png = flags.get('png') === true
    const out = (flags.get('out') as string) ?? (png ? 'trend.png' : 'trend.svg')
    const rows = parseAggregateCsv(readFileSync(input, 'utf8'))
    writeImage(out, buildTrendSvg(rows), png)
    console.error(`plot-trend: wrote ${out}`)
    return 0
  } catch (err) {
    if (err instanceof UsageError || err instanceof SchemaError) {
      console.error(`plot-trend: ${err.message}`)
    } else {
      console.error(`plot-trend: ${(err as Error).message ?? err}`)
    }
    return 1
  }
}

if (require.main === module) {
  process.exit(run(process.argv.slice(2)))
}
