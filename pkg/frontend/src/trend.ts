/**
 * MSE-versus-sample-size figure from an aggregate CSV: one curve per
 * method on a log-scaled n axis.
 */

import { AggregateRow, SchemaError } from './csv'
import { linearScale, logScale } from './scale'
import { SvgDoc } from './svg'
import { METHOD_ORDER, styleFor } from './styles'

const WIDTH = 640
const HEIGHT = 470
const MARGIN = { left: 64, right: 20, top: 20, bottom: 110 }

interface Series {
  method: string
  points: Array<{ n: number; mse: number }>
}

export function collectSeries(rows: AggregateRow[]): Series[] {
  const byMethod = new Map<string, Map<number, { sum: number; count: number }>>()
  for (const row of rows) {
    if (row.mseMean === null) continue
    let perN = byMethod.get(row.method)
    if (!perN) {
      perN = new Map()
      byMethod.set(row.method, perN)
    }
    const acc = perN.get(row.n) ?? { sum: 0, count: 0 }
    acc.sum += row.mseMean
    acc.count += 1
    perN.set(row.n, acc)
  }
  const order = (m: string) => {
    const i = (METHOD_ORDER as readonly string[]).indexOf(m)
    return i < 0 ? METHOD_ORDER.length : i
  }
  const methods = [...byMethod.keys()].sort((a, b) => order(a) - order(b) || (a < b ? -1 : 1))
  return methods.map((method) => ({
    method,
    points: [...byMethod.get(method)!.entries()]
      .map(([n, acc]) => ({ n, mse: acc.sum / acc.count }))
      .sort((u, v) => u.n - v.n),
  }))
}

export function buildTrendSvg(rows: AggregateRow[]): string {
  const series = collectSeries(rows)
  if (series.length === 0) {
    throw new SchemaError('no rows with an MSE to plot')
  }
  const ns = series.flatMap((s) => s.points.map((p) => p.n))
  const mses = series.flatMap((s) => s.points.map((p) => p.mse))
  const x = logScale(Math.min(...ns), Math.max(...ns), MARGIN.left, WIDTH - MARGIN.right)
  const yMax = Math.max(...mses) * 1.08 || 1
  const y = linearScale(0, yMax, HEIGHT - MARGIN.bottom, MARGIN.top)

  const doc = new SvgDoc(WIDTH, HEIGHT)
  drawAxes(doc, x, y)
  for (const s of series) {
    const style = styleFor(s.method)
    doc.polyline(
      s.points.map((p) => [x.map(p.n), y.map(p.mse)] as [number, number]),
      style.line,
      `series-${s.method}`,
    )
    for (const p of s.points) {
      doc.circle(x.map(p.n), y.map(p.mse), 2.4, style.line.stroke)
    }
  }
  drawLegend(doc, series.map((s) => s.method))
  return doc.toString()
}

function drawAxes(
  doc: SvgDoc,
  x: ReturnType<typeof logScale>,
  y: ReturnType<typeof linearScale>,
): void {
  const x0 = MARGIN.left
  const x1 = WIDTH - MARGIN.right
  const y0 = HEIGHT - MARGIN.bottom
  const y1 = MARGIN.top
  const axis = { stroke: '#000000', width: 1 }
  doc.line(x0, y0, x1, y0, axis)
  doc.line(x0, y0, x0, y1, axis)
  for (const t of x.ticks()) {
    const px = x.map(t)
    doc.line(px, y0, px, y0 + 5, axis)
    doc.text(px, y0 + 18, formatTick(t), 11, 'middle')
  }
  for (const t of y.ticks()) {
    const py = y.map(t)
    doc.line(x0 - 5, py, x0, py, axis)
    doc.line(x0, py, x1, py, { stroke: '#dddddd', width: 0.5 })
    doc.text(x0 - 8, py + 3.5, formatTick(t), 11, 'end')
  }
  doc.text((x0 + x1) / 2, y0 + 36, 'sample size n (log scale)', 12, 'middle')
  doc.text(16, (y0 + y1) / 2, 'MSE of estimated centers', 12, 'middle', -90)
}

function formatTick(v: number): string {
  if (v !== 0 && (Math.abs(v) >= 1e4 || Math.abs(v) < 1e-3)) {
    const e = Math.floor(Math.log10(Math.abs(v)))
    const m = v / Math.pow(10, e)
    return `${Math.round(m * 100) / 100}e${e}`
  }
  return `${Math.round(v * 1e6) / 1e6}`
}

function drawLegend(doc: SvgDoc, methods: string[]): void {
  const x0 = MARGIN.left + 10
  let yRow = HEIGHT - 60
  const rowH = 16
  doc.rect(x0 - 6, yRow - 12, 240, rowH * methods.length + 10, 'white', '#999999')
  for (const method of methods) {
    const style = styleFor(method)
    doc.line(x0, yRow, x0 + 34, yRow, style.line)
    doc.text(x0 + 42, yRow + 4, style.label, 11)
    yRow += rowH
  }
}
