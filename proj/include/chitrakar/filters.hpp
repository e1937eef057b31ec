#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "grid.hpp"
#include "image.hpp"

namespace chitrakar {

struct FilterParams {
  double sigma = 1.0;  // Gaussian width
  int radius = 1;      // Laplacian kernel radius

  void validate() const {
    if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
    if (radius < 1) throw InvalidArgument("laplacian radius must be >= 1");
  }

  // Side of the square Gaussian kernel: 2*ceil(3*sigma)+1.
  int gaussian_side() const { return 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1; }
};

enum class EnhanceMode { multiply, add_negative };

inline EnhanceMode parse_enhance_mode(std::string_view s) {
  if (s == "multiply") return EnhanceMode::multiply;
  if (s == "add-negative" || s == "add_negative") return EnhanceMode::add_negative;
  throw InvalidArgument("unknown enhance mode: " + std::string(s));
}

// Continuous 2-D Gaussian density G(x, y).
inline double gaussian_density(double x, double y, double sigma) {
  const double s2 = sigma * sigma;
  return std::exp(-(x * x + y * y) / (2.0 * s2)) / (2.0 * std::numbers::pi * s2);
}

// Normalized 1-D taps; the 2-D kernel is their outer product, which equals
// the sampled G(x, y) rescaled to unit sum.
inline std::vector<double> gaussian_taps(double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  const int half = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * half + 1);
  double sum = 0.0;
  for (int i = -half; i <= half; ++i) {
    const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
    taps[i + half] = w;
    sum += w;
  }
  for (double& w : taps) w /= sum;
  return taps;
}

namespace detail {

inline Grid<double> convolve_separable(const Grid<double>& in, const std::vector<double>& taps) {
  const long half = static_cast<long>(taps.size() / 2);
  const long w = static_cast<long>(in.width());
  const long h = static_cast<long>(in.height());
  Grid<double> tmp(in.width(), in.height());
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x) {
      double acc = 0.0;
      for (long k = -half; k <= half; ++k) acc += taps[k + half] * in.clamped(x + k, y);
      tmp(x, y) = acc;
    }
  Grid<double> out(in.width(), in.height());
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x) {
      double acc = 0.0;
      for (long k = -half; k <= half; ++k) acc += taps[k + half] * tmp.clamped(x, y + k);
      out(x, y) = acc;
    }
  return out;
}

}  // namespace detail

inline GrayImage gaussian_filter(const GrayImage& img, double sigma) {
  return GrayImage::clamped(detail::convolve_separable(img.grid(), gaussian_taps(sigma)));
}

// Raw 4-neighbour Laplacian of the Gaussian-smoothed image (unbounded values).
inline Grid<double> laplacian_response(const GrayImage& img, const FilterParams& params) {
  params.validate();
  if (params.radius != 1)
    throw UnsupportedParameter("laplacian radius " + std::to_string(params.radius) +
                               " is not supported (only 1)");
  const GrayImage smooth = gaussian_filter(img, params.sigma);
  const Grid<double>& s = smooth.grid();
  Grid<double> out(s.width(), s.height());
  const long w = static_cast<long>(s.width());
  const long h = static_cast<long>(s.height());
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x)
      out(x, y) = s.clamped(x - 1, y) + s.clamped(x + 1, y) + s.clamped(x, y - 1) +
                  s.clamped(x, y + 1) - 4.0 * s(x, y);
  return out;
}

// Affine min/max map onto [0,1]; a constant grid maps to 0.5.
inline GrayImage rescale_unit(const Grid<double>& g) {
  const auto [lo, hi] = std::minmax_element(g.values().begin(), g.values().end());
  const double min = *lo;
  const double range = *hi - min;
  if (!(range > 0.0)) return GrayImage(Grid<double>(g.width(), g.height(), 0.5));
  return GrayImage::clamped(map(g, [&](double v) { return (v - min) / range; }));
}

inline GrayImage laplacian_of_gaussian(const GrayImage& img, const FilterParams& params) {
  return rescale_unit(laplacian_response(img, params));
}

// Combines an image with its LoG response.
inline GrayImage combine(const GrayImage& original, const GrayImage& log, EnhanceMode mode) {
  if (!original.grid().same_shape(log.grid())) throw InvalidArgument("image shape mismatch");
  Grid<double> out(original.width(), original.height());
  auto a = original.grid().values();
  auto b = log.grid().values();
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i)
    o[i] = mode == EnhanceMode::multiply ? a[i] * b[i] : a[i] - b[i];
  return GrayImage::clamped(std::move(out));
}

inline GrayImage enhance(const GrayImage& img, const FilterParams& params,
                         EnhanceMode mode = EnhanceMode::multiply) {
  return combine(img, laplacian_of_gaussian(img, params), mode);
}

}  // namespace chitrakar
