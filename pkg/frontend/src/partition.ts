/**
 * 2-D partition figure: the data scatter, each method's fitted centers,
 * and the nearest-center boundaries each set of centers induces.
 */

import { SchemaError } from './csv'
import { linearScale } from './scale'
import { SvgDoc } from './svg'
import { styleFor } from './styles'
import { Box, voronoiEdges } from './voronoi'

const WIDTH = 560
const HEIGHT = 600
const PLOT = 470
const MARGIN = { left: 54, right: 24, top: 18 }

export interface MethodCenters {
  method: string
  centers: number[][]
}

export function buildPartitionSvg(data: number[][], methods: MethodCenters[]): string {
  if (data.length === 0) {
    throw new SchemaError('no data points')
  }
  if (data[0].length !== 2) {
    throw new SchemaError(`partition plots need 2-D data, got ${data[0].length} columns`)
  }
  for (const m of methods) {
    if (m.centers.length === 0 || m.centers[0].length !== 2) {
      throw new SchemaError(`centers for '${m.method}' must be a k x 2 matrix`)
    }
  }

  const xs = data.map((r) => r[0])
  const ys = data.map((r) => r[1])
  const padX = 0.05 * (Math.max(...xs) - Math.min(...xs) || 1)
  const padY = 0.05 * (Math.max(...ys) - Math.min(...ys) || 1)
  const box: Box = {
    xmin: Math.min(...xs) - padX,
    xmax: Math.max(...xs) + padX,
    ymin: Math.min(...ys) - padY,
    ymax: Math.max(...ys) + padY,
  }
  const x = linearScale(box.xmin, box.xmax, MARGIN.left, WIDTH - MARGIN.right)
  const y = linearScale(box.ymin, box.ymax, MARGIN.top + PLOT, MARGIN.top)

  const doc = new SvgDoc(WIDTH, HEIGHT)
  doc.rect(MARGIN.left, MARGIN.top, WIDTH - MARGIN.left - MARGIN.right, PLOT, 'none', '#444444')
  for (const row of data) {
    doc.circle(x.map(row[0]), y.map(row[1]), 1.2, '#c8c8c8')
  }
  for (const m of methods) {
    const style = styleFor(m.method)
    const sites = m.centers.map((c) => ({ x: c[0], y: c[1] }))
    for (const edge of voronoiEdges(sites, box)) {
      doc.polyline(
        [
          [x.map(edge.a.x), y.map(edge.a.y)],
          [x.map(edge.b.x), y.map(edge.b.y)],
        ],
        { ...style.line, width: 2 },
        `boundary-${m.method}`,
      )
    }
    for (const c of sites) {
      drawMarker(doc, x.map(c.x), y.map(c.y), style.marker, style.line.stroke)
    }
  }
  drawLegend(doc, methods.map((m) => m.method))
  return doc.toString()
}

function drawMarker(
  doc: SvgDoc,
  px: number,
  py: number,
  marker: 'circle' | 'square' | 'triangle',
  color: string,
): void {
  const r = 5
  if (marker === 'circle') {
    doc.circle(px, py, r, color, 'white')
  } else if (marker === 'square') {
    doc.rect(px - r, py - r, 2 * r, 2 * r, color, 'white')
  } else {
    doc.polygon(
      [
        [px, py - r - 1],
        [px - r, py + r - 1],
        [px + r, py + r - 1],
      ],
      color,
      'white',
    )
  }
}

function drawLegend(doc: SvgDoc, methods: string[]): void {
  const x0 = MARGIN.left + 8
  let yRow = MARGIN.top + PLOT + 28
  for (const method of methods) {
    const style = styleFor(method)
    doc.line(x0, yRow, x0 + 30, yRow, { ...style.line, width: 2 })
    drawMarker(doc, x0 + 15, yRow, style.marker, style.line.stroke)
    doc.text(x0 + 40, yRow + 4, style.label, 11)
    yRow += 18
  }
}
