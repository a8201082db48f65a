/** Shared per-method drawing conventions (line styles follow the figure
 * legend: solid = k-means on all data, dotted = complete cases,
 * dashed = k-POD). */

import type { LineStyle } from './svg'

export interface MethodStyle {
  label: string
  line: LineStyle
  marker: 'circle' | 'square' | 'triangle'
}

export const METHOD_ORDER = ['oracle', 'complete_case', 'kpod'] as const

export const METHOD_STYLES: Record<string, MethodStyle> = {
  oracle: {
    label: 'k-means (all data)',
    line: { stroke: '#222222', width: 1.6 },
    marker: 'circle',
  },
  complete_case: {
    label: 'k-means (complete cases)',
    line: { stroke: '#1a7f37', width: 1.6, dash: '2 3' },
    marker: 'square',
  },
  kpod: {
    label: 'k-POD',
    line: { stroke: '#1f5fbf', width: 1.6, dash: '7 4' },
    marker: 'triangle',
  },
}

export function styleFor(method: string): MethodStyle {
  return (
    METHOD_STYLES[method] ?? {
      label: method,
      line: { stroke: '#b03030', width: 1.6, dash: '1 2' },
      marker: 'circle',
    }
  )
}
