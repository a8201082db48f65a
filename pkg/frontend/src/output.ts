/** File output: SVG text, or PNG via resvg when requested. */

import { writeFileSync } from 'fs'

export function renderPng(svg: string): Buffer {
  // required lazily so SVG-only use works even without the native module
  const { Resvg } = require('@resvg/resvg-js')
  return new Resvg(svg).render().asPng()
}

export function writeImage(path: string, svg: string, png: boolean): void {
  if (png) {
    writeFileSync(path, renderPng(svg))
  } else {
    writeFileSync(path, svg, 'utf8')
  }
}
