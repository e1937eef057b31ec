#pragma once

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "geometry.hpp"

namespace chitrakar {

// Ordered cells from the first endpoint to the second.
using PixelList = std::vector<Pixel>;

// Integer-error Bresenham line, all octants, both endpoints included. Ties are
// broken from the lexicographically smaller endpoint so that the cell set does
// not depend on the direction of traversal.
inline PixelList bresenham(Pixel p, Pixel q) {
  const bool flip = q < p;
  if (flip) std::swap(p, q);
  const int dx = std::abs(q.x - p.x);
  const int dy = -std::abs(q.y - p.y);
  const int sx = p.x < q.x ? 1 : -1;
  const int sy = p.y < q.y ? 1 : -1;
  int err = dx + dy;
  PixelList cells;
  cells.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
  Pixel c = p;
  for (;;) {
    cells.push_back(c);
    if (c == q) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      c.x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      c.y += sy;
    }
  }
  if (flip) std::reverse(cells.begin(), cells.end());
  return cells;
}

// Every cell whose closed unit square (centred on the integer coordinate) the
// real segment pq touches. Where the segment passes exactly through a cell
// corner, both orthogonal neighbours are emitted before the diagonal step.
inline PixelList supercover(Pixel p, Pixel q) {
  const long nx = std::labs(static_cast<long>(q.x) - p.x);
  const long ny = std::labs(static_cast<long>(q.y) - p.y);
  const int sx = q.x > p.x ? 1 : -1;
  const int sy = q.y > p.y ? 1 : -1;
  PixelList cells;
  cells.reserve(static_cast<std::size_t>(nx + ny) + 1);
  Pixel c = p;
  cells.push_back(c);
  long ix = 0, iy = 0;
  while (ix < nx || iy < ny) {
    // Compare parameters of the next vertical and horizontal boundary crossings:
    // (2ix+1)/(2nx) vs (2iy+1)/(2ny), cross-multiplied.
    const long lhs = (2 * ix + 1) * ny;
    const long rhs = (2 * iy + 1) * nx;
    if (lhs == rhs) {
      cells.push_back({c.x + sx, c.y});
      cells.push_back({c.x, c.y + sy});
      c.x += sx;
      c.y += sy;
      ++ix;
      ++iy;
    } else if (lhs < rhs) {
      c.x += sx;
      ++ix;
    } else {
      c.y += sy;
      ++iy;
    }
    cells.push_back(c);
  }
  return cells;
}

}  // namespace chitrakar
