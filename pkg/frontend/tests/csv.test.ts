import { describe, expect, it } from 'vitest'
import { AGGREGATE_HEADER, parseAggregateCsv, parseMatrixCsv, SchemaError } from '../src/csv'

const SAMPLE = [
  '# mse_std is the sample standard deviation (ddof=1)',
  AGGREGATE_HEADER,
  'a,1000,0.33,oracle,0.03,0.01,0.0',
  'a,1000,0.33,complete_case,,,1.0',
  'a,1000,0.33,kpod,0.25,0.05,0.0',
].join('\n')

describe('parseAggregateCsv', () => {
  it('parses rows and skips comment lines', () => {
    const rows = parseAggregateCsv(SAMPLE)
    expect(rows).toHaveLength(3)
    expect(rows[0]).toEqual({
      setting: 'a',
      n: 1000,
      missingRate: 0.33,
      method: 'oracle',
      mseMean: 0.03,
      mseStd: 0.01,
      failFrac: 0,
    })
    expect(rows[1].mseMean).toBeNull()
  })

  it('rejects an empty file', () => {
    expect(() => parseAggregateCsv('')).toThrow(SchemaError)
    expect(() => parseAggregateCsv('# only a comment\n')).toThrow(SchemaError)
  })

  it('rejects a wrong header', () => {
    expect(() => parseAggregateCsv('setting,n,method\na,1,oracle')).toThrow(/header mismatch/)
  })

  it('rejects a header without rows and wrong field counts', () => {
    expect(() => parseAggregateCsv(AGGREGATE_HEADER)).toThrow(/no rows/)
    expect(() => parseAggregateCsv(`${AGGREGATE_HEADER}\na,1,0.1,oracle,1`)).toThrow(/7 fields/)
  })

  it('rejects non-numeric fields', () => {
    expect(() => parseAggregateCsv(`${AGGREGATE_HEADER}\na,x,0.1,oracle,1,1,0`)).toThrow(
      /expected a number/,
    )
  })
})

describe('parseMatrixCsv', () => {
  it('parses a headerless numeric matrix', () => {
    expect(parseMatrixCsv('1,2\n3,4\n')).toEqual([
      [1, 2],
      [3, 4],
    ])
  })

  it('rejects empty and ragged input', () => {
    expect(() => parseMatrixCsv('\n\n')).toThrow(SchemaError)
    expect(() => parseMatrixCsv('1,2\n3\n')).toThrow(/ragged/)
  })
})
