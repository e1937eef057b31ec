#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "image.hpp"

namespace chitrakar {

namespace detail {

inline double ellipse_value(double x, double y, double cx, double cy, double rx, double ry) {
  const double dx = (x - cx) / rx, dy = (y - cy) / ry;
  return dx * dx + dy * dy;
}

inline std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace detail

// Deterministic head-and-shoulders test portrait on a light background:
// shaded face, darker hair, eyes, mouth and a dark shirt.
inline RgbImage synthetic_portrait(std::size_t width = 512, std::size_t height = 512) {
  using detail::ellipse_value;
  RgbImage img(width, height);
  const double w = static_cast<double>(width), h = static_cast<double>(height);
  const double cx = 0.5 * w, cy = 0.42 * h;
  const double rx = 0.2 * w, ry = 0.27 * h;
  for (std::size_t yi = 0; yi < height; ++yi) {
    for (std::size_t xi = 0; xi < width; ++xi) {
      const double x = xi + 0.5, y = yi + 0.5;
      double v = 0.92 - 0.08 * y / h;  // background
      if (y > 0.72 * h && ellipse_value(x, y, cx, h, 0.42 * w, 0.3 * h) < 1.0) v = 0.18;  // shirt
      if (ellipse_value(x, y, cx, 0.68 * h, 0.07 * w, 0.1 * h) < 1.0) v = 0.62;            // neck
      const double face = ellipse_value(x, y, cx, cy, rx, ry);
      if (face < 1.0) {
        v = 0.78 - 0.22 * (x - cx) / rx * 0.5 - 0.1 * face;  // side lighting
        if (y < cy - 0.55 * ry && face > 0.35) v = 0.12;      // hair line
        for (double side : {-1.0, 1.0}) {
          const double ex = cx + side * 0.4 * rx, ey = cy - 0.15 * ry;
          if (ellipse_value(x, y, ex, ey, 0.17 * rx, 0.08 * ry) < 1.0) v = 0.95;
          if (ellipse_value(x, y, ex, ey, 0.07 * rx, 0.07 * ry) < 1.0) v = 0.05;
          if (std::abs(y - (ey - 0.14 * ry)) < 0.02 * ry && std::abs(x - ex) < 0.2 * rx) v = 0.2;
        }
        if (std::abs(x - cx) < 0.04 * rx && y > cy - 0.05 * ry && y < cy + 0.3 * ry) v -= 0.15;  // nose
        if (ellipse_value(x, y, cx, cy + 0.55 * ry, 0.3 * rx, 0.05 * ry) < 1.0) v = 0.3;       // mouth
      } else if (face < 1.25 && y < cy + 0.1 * ry) {
        v = 0.1;  // hair
      }
      const std::uint8_t g = detail::to_byte(v);
      img(xi, yi) = {g, g, static_cast<std::uint8_t>(std::min(255, g + 6))};
    }
  }
  return img;
}

// Subject mask matching synthetic_portrait: head, hair, neck and shoulders.
inline BinaryMask synthetic_portrait_mask(std::size_t width = 512, std::size_t height = 512) {
  using detail::ellipse_value;
  BinaryMask mask(width, height, false);
  const double w = static_cast<double>(width), h = static_cast<double>(height);
  const double cx = 0.5 * w, cy = 0.42 * h;
  for (std::size_t yi = 0; yi < height; ++yi)
    for (std::size_t xi = 0; xi < width; ++xi) {
      const double x = xi + 0.5, y = yi + 0.5;
      const bool head = ellipse_value(x, y, cx, cy, 0.2 * w * 1.12, 0.27 * h * 1.12) < 1.0;
      const bool body = y > 0.6 * h && ellipse_value(x, y, cx, h, 0.42 * w, 0.3 * h) < 1.0;
      const bool neck = ellipse_value(x, y, cx, 0.68 * h, 0.07 * w, 0.1 * h) < 1.0;
      mask.set(xi, yi, head || body || neck);
    }
  return mask;
}

}  // namespace chitrakar
