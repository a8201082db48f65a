import { describe, expect, it } from 'vitest'
import { Box, Point, Segment, voronoiEdges } from '../src/voronoi'

const BOX: Box = { xmin: -10, xmax: 10, ymin: -10, ymax: 10 }

function closestTo(p: Point, sites: Point[]): number[] {
  const d = sites.map((s) => (p.x - s.x) ** 2 + (p.y - s.y) ** 2)
  const min = Math.min(...d)
  return d.map((v, i) => [v, i]).filter(([v]) => v - min < 1e-9).map(([, i]) => i)
}

function midpoint(seg: Segment): Point {
  return { x: (seg.a.x + seg.b.x) / 2, y: (seg.a.y + seg.b.y) / 2 }
}

describe('voronoiEdges', () => {
  it('two sites: a single bisector spanning the box', () => {
    const sites = [{ x: -3, y: 0 }, { x: 3, y: 0 }]
    const edges = voronoiEdges(sites, BOX)
    expect(edges).toHaveLength(1)
    // vertical line x = 0 clipped to the box
    expect(Math.abs(edges[0].a.x)).toBeLessThan(1e-9)
    expect(Math.abs(edges[0].b.x)).toBeLessThan(1e-9)
    expect(Math.abs(edges[0].a.y - edges[0].b.y)).toBeCloseTo(20, 6)
  })

  it('equilateral triangle: three edges meeting at the circumcenter', () => {
    const sites = [
      { x: 0, y: 0 },
      { x: 3, y: 0 },
      { x: 1.5, y: Math.sqrt(6.75) },
    ]
    const edges = voronoiEdges(sites, BOX)
    expect(edges).toHaveLength(3)
    const circum = { x: 1.5, y: Math.sqrt(6.75) / 3 + 0 }
    // circumcenter of an equilateral triangle = centroid
    const centroid = {
      x: (0 + 3 + 1.5) / 3,
      y: Math.sqrt(6.75) / 3,
    }
    for (const e of edges) {
      const dA = Math.hypot(e.a.x - centroid.x, e.a.y - centroid.y)
      const dB = Math.hypot(e.b.x - centroid.x, e.b.y - centroid.y)
      expect(Math.min(dA, dB)).toBeLessThan(1e-6)
    }
    expect(circum.x).toBeCloseTo(centroid.x)
    // every edge midpoint is equidistant from exactly its two sites
    for (const e of edges) {
      expect(closestTo(midpoint(e), sites).length).toBeGreaterThanOrEqual(2)
    }
  })

  it('collinear sites: the blocked pair produces no edge', () => {
    const sites = [{ x: -4, y: 0 }, { x: 0, y: 0 }, { x: 4, y: 0 }]
    const edges = voronoiEdges(sites, BOX)
    // pairs (0,1) and (1,2) yield strips; pair (0,2) is swallowed by site 1
    expect(edges).toHaveLength(2)
    for (const e of edges) {
      expect(Math.abs(e.a.x - e.b.x)).toBeLessThan(1e-9) // vertical lines
      expect([2, -2]).toContain(Math.round(e.a.x))
    }
  })

  it('coincident sites produce no boundary', () => {
    const sites = [{ x: 1, y: 1 }, { x: 1, y: 1 }]
    expect(voronoiEdges(sites, BOX)).toHaveLength(0)
  })

  it('single site produces no boundary', () => {
    expect(voronoiEdges([{ x: 0, y: 0 }], BOX)).toHaveLength(0)
  })

  it('edges stay inside the box', () => {
    const sites = [
      { x: -2, y: -1 },
      { x: 2.5, y: 0.5 },
      { x: 0, y: 3 },
    ]
    for (const e of voronoiEdges(sites, BOX)) {
      for (const p of [e.a, e.b]) {
        expect(p.x).toBeGreaterThanOrEqual(BOX.xmin - 1e-9)
        expect(p.x).toBeLessThanOrEqual(BOX.xmax + 1e-9)
        expect(p.y).toBeGreaterThanOrEqual(BOX.ymin - 1e-9)
        expect(p.y).toBeLessThanOrEqual(BOX.ymax + 1e-9)
      }
    }
  })
})
