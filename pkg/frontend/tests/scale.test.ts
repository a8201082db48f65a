import { describe, expect, it } from 'vitest'
import { linearScale, linearTicks, logScale, logTicks } from '../src/scale'

describe('linearScale', () => {
  it('maps domain endpoints to range endpoints', () => {
    const s = linearScale(0, 10, 100, 200)
    expect(s.map(0)).toBe(100)
    expect(s.map(10)).toBe(200)
    expect(s.map(5)).toBe(150)
  })

  it('produces round ticks covering the domain', () => {
    expect(linearTicks(0, 1, 5)).toEqual([0, 0.2, 0.4, 0.6000000000000001, 0.8, 1])
    expect(linearTicks(0, 0.55, 5)).toContain(0.5)
  })
})

describe('logScale', () => {
  it('maps logarithmically', () => {
    const s = logScale(100, 10000, 0, 100)
    expect(s.map(100)).toBeCloseTo(0)
    expect(s.map(1000)).toBeCloseTo(50)
    expect(s.map(10000)).toBeCloseTo(100)
  })

  it('rejects nonpositive domains', () => {
    expect(() => logScale(0, 10, 0, 1)).toThrow()
  })

  it('ticks at powers of ten with subdivisions on narrow ranges', () => {
    expect(logTicks(1000, 30000)).toEqual([1000, 3000, 10000, 30000])
    expect(logTicks(1, 1e6)).toEqual([1, 10, 100, 1000, 10000, 100000, 1000000])
  })
})
