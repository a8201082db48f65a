/**
 * Analytic Voronoi edges for a small set of sites.
 *
 * Each edge is the perpendicular bisector of a pair of sites, clipped to
 * the plot box and to the half-planes where those two sites are jointly
 * nearest. Exact for any site count, and cheap for the k <= 3 cases the
 * partition figure needs.
 */

export interface Point {
  x: number
  y: number
}

export interface Segment {
  a: Point
  b: Point
}

export interface Box {
  xmin: number
  xmax: number
  ymin: number
  ymax: number
}

const EPS = 1e-12

interface Interval {
  lo: number
  hi: number
}

/**
 * Clip the parametric line p(t) = origin + t * dir against the half-plane
 * { p : n . p <= c }, shrinking [lo, hi]. Returns null when empty.
 */
function clipHalfPlane(
  origin: Point,
  dir: Point,
  n: Point,
  c: number,
  iv: Interval,
): Interval | null {
  const nd = n.x * dir.x + n.y * dir.y
  const no = n.x * origin.x + n.y * origin.y
  if (Math.abs(nd) < EPS) {
    return no <= c + EPS ? iv : null
  }
  const t = (c - no) / nd
  const next = nd > 0 ? { lo: iv.lo, hi: Math.min(iv.hi, t) } : { lo: Math.max(iv.lo, t), hi: iv.hi }
  return next.lo <= next.hi + EPS ? next : null
}

function boxConstraints(box: Box): Array<{ n: Point; c: number }> {
  return [
    { n: { x: 1, y: 0 }, c: box.xmax },
    { n: { x: -1, y: 0 }, c: -box.xmin },
    { n: { x: 0, y: 1 }, c: box.ymax },
    { n: { x: 0, y: -1 }, c: -box.ymin },
  ]
}

/** Bisector segment of sites (i, j) within the cell structure, or null. */
function bisectorSegment(sites: Point[], i: number, j: number, box: Box): Segment | null {
  const a = sites[i]
  const b = sites[j]
  const dx = b.x - a.x
  const dy = b.y - a.y
  const d2 = dx * dx + dy * dy
  if (d2 < EPS) {
    return null // coincident sites: no boundary between them
  }
  const mid = { x: (a.x + b.x) / 2, y: (a.y + b.y) / 2 }
  const dir = { x: -dy, y: dx } // along the bisector
  let iv: Interval | null = { lo: -1e18, hi: 1e18 }
  for (const { n, c } of boxConstraints(box)) {
    iv = clipHalfPlane(mid, dir, n, c, iv)
    if (!iv) return null
  }
  for (let l = 0; l < sites.length; l++) {
    if (l === i || l === j) continue
    const s = sites[l]
    // keep points at least as close to a as to s: 2 (s - a) . p <= |s|^2 - |a|^2
    const n = { x: 2 * (s.x - a.x), y: 2 * (s.y - a.y) }
    const c = s.x * s.x + s.y * s.y - (a.x * a.x + a.y * a.y)
    if (Math.abs(n.x) < EPS && Math.abs(n.y) < EPS) continue // duplicate of a
    iv = clipHalfPlane(mid, dir, n, c, iv)
    if (!iv) return null
  }
  if (iv.hi - iv.lo < EPS) {
    return null
  }
  return {
    a: { x: mid.x + iv.lo * dir.x, y: mid.y + iv.lo * dir.y },
    b: { x: mid.x + iv.hi * dir.x, y: mid.y + iv.hi * dir.y },
  }
}

export function voronoiEdges(sites: Point[], box: Box): Segment[] {
  const edges: Segment[] = []
  for (let i = 0; i < sites.length; i++) {
    for (let j = i + 1; j < sites.length; j++) {
      const seg = bisectorSegment(sites, i, j, box)
      if (seg) {
        edges.push(seg)
      }
    }
  }
  return edges
}
