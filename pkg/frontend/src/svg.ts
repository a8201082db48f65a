/**
 * Tiny deterministic SVG builder. Coordinates are rounded to a fixed
 * number of decimals so identical inputs always produce identical bytes.
 */

export function fmt(v: number): string {
  const r = Math.round(v * 100) / 100
  // normalize -0 so payloads are stable
  return (Object.is(r, -0) ? 0 : r).toString()
}

export interface LineStyle {
  stroke: string
  dash?: string
  width?: number
}

function styleAttrs(style: LineStyle): string {
  const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : ''
  return `stroke="${style.stroke}" stroke-width="${style.width ?? 1.5}" fill="none"${dash}`
}

export class SvgDoc {
  private parts: string[] = []

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    )
  }

  line(x1: number, y1: number, x2: number, y2: number, style: LineStyle): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${styleAttrs(style)}/>`,
    )
  }

  polyline(points: Array<[number, number]>, style: LineStyle, cls?: string): void {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(' ')
    const klass = cls ? ` class="${cls}"` : ''
    this.parts.push(`<polyline${klass} points="${pts}" ${styleAttrs(style)}/>`)
  }

  circle(cx: number, cy: number, r: number, fill: string, stroke = 'none'): void {
    this.parts.push(
      `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}" stroke="${stroke}"/>`,
    )
  }

  rect(x: number, y: number, w: number, h: number, fill: string, stroke = 'none'): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ` +
        `fill="${fill}" stroke="${stroke}"/>`,
    )
  }

  polygon(points: Array<[number, number]>, fill: string, stroke = 'none'): void {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(' ')
    this.parts.push(`<polygon points="${pts}" fill="${fill}" stroke="${stroke}"/>`)
  }

  text(
    x: number,
    y: number,
    content: string,
    size = 11,
    anchor: 'start' | 'middle' | 'end' = 'start',
    rotate?: number,
  ): void {
    const transform = rotate ? ` transform="rotate(${rotate} ${fmt(x)} ${fmt(y)})"` : ''
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" text-anchor="${anchor}"` +
        `${transform} fill="black">${escapeXml(content)}</text>`,
    )
  }

  raw(markup: string): void {
    this.parts.push(markup)
  }

  toString(): string {
    return this.parts.join('\n') + '\n</svg>\n'
  }
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
}
