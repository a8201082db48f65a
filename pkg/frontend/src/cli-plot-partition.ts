#!/usr/bin/env node
/**
 * plot-partition --data X.csv [--centers-kmeans F] [--centers-complete-case F]
 *                [--centers-kpod F] --out partition.svg [--png]
 *
 * Scatter of 2-D data with each method's centers and the induced
 * nearest-center boundaries.
 */

import { readFileSync } from 'fs'
import { parseArgs, requireFlag, UsageError } from './args'
import { parseMatrixCsv, SchemaError } from './csv'
import { writeImage } from './output'
import { buildPartitionSvg, MethodCenters } from './partition'

const CENTER_FLAGS: Array<{ flag: string; method: string }> = [
  { flag: 'centers-kmeans', method: 'oracle' },
  { flag: 'centers-complete-case', method: 'complete_case' },
  { flag: 'centers-kpod', method: 'kpod' },
]

export function run(argv: string[]): number {
  try {
    const flags = parseArgs(
      argv,
      ['data', 'out', ...CENTER_FLAGS.map((c) => c.flag)],
      ['png'],
    )
    const data = parseMatrixCsv(readFileSync(requireFlag(flags, 'data'), 'utf8'))
    const methods: MethodCenters[] = []
    for (const { flag, method } of CENTER_FLAGS) {
      const path = flags.get(flag)
      if (typeof path === 'string') {
        methods.push({ method, centers: parseMatrixCsv(readFileSync(path, 'utf8')) })
      }
    }
    if (methods.length === 0) {
      throw new UsageError('at least one --centers-* file is required')
    }
    const png = flags.get('png') === true
    const out = (flags.get('out') as string) ?? (png ? 'partition.png' : 'partition.svg')
    writeImage(out, buildPartitionSvg(data, methods), png)
    console.error(`plot-partition: wrote ${out}`)
    return 0
  } catch (err) {
    if (err instanceof UsageError || err instanceof SchemaError) {
      console.error(`plot-partition: ${err.message}`)
    } else {
      console.error(`plot-partition: ${(err as Error).message ?? err}`)
    }
    return 1
  }
}

if (require.main === module) {
  process.exit(run(process.argv.slice(2)))
}
