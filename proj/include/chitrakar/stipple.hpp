#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "image.hpp"

namespace chitrakar {

// Distinct pixel coordinates inside a source image, kept sorted.
class StippleSet {
 public:
  StippleSet() = default;

  StippleSet(std::vector<Pixel> points, std::size_t width, std::size_t height)
      : points_(std::move(points)), width_(width), height_(height) {
    std::sort(points_.begin(), points_.end());
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
      throw InvalidArgument("duplicate stipple point");
    for (const Pixel& p : points_)
      if (p.x < 0 || p.y < 0 || static_cast<std::size_t>(p.x) >= width_ ||
          static_cast<std::size_t>(p.y) >= height_)
        throw InvalidArgument("stipple point outside source dimensions");
  }

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Pixel& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Pixel>& points() const noexcept { return points_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const StippleSet&, const StippleSet&) = default;

 private:
  std::vector<Pixel> points_;
  std::size_t width_ = 0;
  std::size_t height_ = 0;
};

enum class StippleMode { threshold, probabilistic };

inline StippleMode parse_stipple_mode(std::string_view s) {
  if (s == "threshold") return StippleMode::threshold;
  if (s == "prob" || s == "probabilistic") return StippleMode::probabilistic;
  throw InvalidArgument("unknown stipple mode: " + std::string(s));
}

struct StippleConfig {
  StippleMode mode = StippleMode::probabilistic;
  double threshold = 0.5;  // normalized intensity cut for threshold mode
  std::size_t target_points = 2000;
  double gamma = 1.0;  // darkness exponent
  std::uint64_t seed = 1;

  void validate() const {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw InvalidArgument("threshold must be in [0,1]");
    if (target_points < 3) throw InvalidArgument("target_points must be >= 3");
    if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  }
};

// Dark pixels: { (x, y) : intensity < threshold }.
inline StippleSet stipple_threshold(const GrayImage& img, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw InvalidArgument("threshold must be in [0,1]");
  std::vector<Pixel> pts;
  for (std::size_t y = 0; y < img.height(); ++y)
    for (std::size_t x = 0; x < img.width(); ++x)
      if (img(x, y) < threshold)
        pts.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
  return StippleSet(std::move(pts), img.width(), img.height());
}

// Uniform in (0, 1] from the top 53 bits of the generator.
inline double unit_open_closed(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Draws min(target_points, #positive-weight pixels) distinct pixels, each with
// weight (1 - intensity)^gamma, by weighted sampling without replacement
// (Efraimidis-Spirakis keys: the k largest log(u)/w).
inline StippleSet stipple_probabilistic(const GrayImage& img, const StippleConfig& cfg) {
  cfg.validate();
  struct Keyed {
    double key;
    std::uint32_t index;
  };
  std::mt19937_64 rng(cfg.seed);
  std::vector<Keyed> keyed;
  const auto values = img.grid().values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    // One draw per pixel keeps the stream aligned with pixel order.
    const double u = unit_open_closed(rng);
    const double w = std::pow(1.0 - values[i], cfg.gamma);
    if (w > 0.0) keyed.push_back({std::log(u) / w, static_cast<std::uint32_t>(i)});
  }
  if (keyed.empty()) throw NoStippleMass("image has no dark pixels to stipple");
  const std::size_t k = std::min(cfg.target_points, keyed.size());
  auto larger = [](const Keyed& a, const Keyed& b) {
    return a.key != b.key ? a.key > b.key : a.index < b.index;
  };
  std::nth_element(keyed.begin(), keyed.begin() + static_cast<long>(k) - 1, keyed.end(), larger);
  std::vector<Pixel> pts;
  pts.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t idx = keyed[i].index;
    pts.push_back({static_cast<std::int32_t>(idx % img.width()),
                   static_cast<std::int32_t>(idx / img.width())});
  }
  return StippleSet(std::move(pts), img.width(), img.height());
}

inline StippleSet stipple(const GrayImage& img, const StippleConfig& cfg) {
  if (cfg.mode == StippleMode::threshold) {
    cfg.validate();
    return stipple_threshold(img, cfg.threshold);
  }
  return stipple_probabilistic(img, cfg);
}

// Two-column "x y" lines.
inline void write_points_text(std::ostream& out, const StippleSet& s) {
  for (const Pixel& p : s) out << p.x << ' ' << p.y << '\n';
}

inline GrayImage render_preview(const StippleSet& s) {
  Grid<double> g(s.width(), s.height(), 1.0);
  for (const Pixel& p : s) g(p.x, p.y) = 0.0;
  return GrayImage(std::move(g));
}

}  // namespace chitrakar
