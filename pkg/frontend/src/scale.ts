/** Minimal deterministic axis scales (no d3 dependency needed). */

export interface Scale {
  map(v: number): number
  ticks(): number[]
}

export function linearScale(
  d0: number,
  d1: number,
  r0: number,
  r1: number,
  tickCount = 5,
): Scale {
  const span = d1 - d0 || 1
  return {
    map: (v) => r0 + ((v - d0) / span) * (r1 - r0),
    ticks: () => linearTicks(d0, d1, tickCount),
  }
}

export function logScale(d0: number, d1: number, r0: number, r1: number): Scale {
  if (d0 <= 0 || d1 <= 0) {
    throw new Error('log scale needs positive domain')
  }
  const l0 = Math.log10(d0)
  const span = Math.log10(d1) - l0 || 1
  return {
    map: (v) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0),
    ticks: () => logTicks(d0, d1),
  }
}

/** Round ticks at a 1/2/5 step covering [min, max]. */
export function linearTicks(min: number, max: number, count = 5): number[] {
  const span = max - min || 1
  const raw = span / Math.max(1, count - 1)
  const mag = Math.pow(10, Math.floor(Math.log10(raw)))
  const norm = raw / mag
  const step = (norm < 1.5 ? 1 : norm < 3 ? 2 : norm < 7 ? 5 : 10) * mag
  const ticks: number[] = []
  for (let v = Math.ceil(min / step) * step; v <= max + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v)
  }
  return ticks
}

/** Powers of ten, with 3x subdivisions when the range is narrow. */
export function logTicks(min: number, max: number): number[] {
  const ticks: number[] = []
  const e0 = Math.floor(Math.log10(min))
  const e1 = Math.ceil(Math.log10(max))
  const sparse = e1 - e0 > 3
  for (let e = e0; e <= e1; e++) {
    for (const m of sparse ? [1] : [1, 3]) {
      const v = m * Math.pow(10, e)
      if (v >= min * 0.999 && v <= max * 1.001) {
        ticks.push(v)
      }
    }
  }
  return ticks
}
