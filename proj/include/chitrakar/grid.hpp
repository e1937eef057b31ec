#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

#include "error.hpp"

namespace chitrakar {

// Row-major 2-D array addressed as (x, y).
template <typename T>
class Grid {
 public:
  Grid() = default;

  Grid(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), data_(width * height, fill) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t x, std::size_t y) {
    assert(x < width_ && y < height_);
    return data_[y * width_ + x];
  }
  const T& operator()(std::size_t x, std::size_t y) const {
    assert(x < width_ && y < height_);
    return data_[y * width_ + x];
  }

  // Replicate-edge access for signed coordinates.
  const T& clamped(long x, long y) const {
    const long w = static_cast<long>(width_);
    const long h = static_cast<long>(height_);
    x = x < 0 ? 0 : (x >= w ? w - 1 : x);
    y = y < 0 ? 0 : (y >= h ? h - 1 : y);
    return data_[static_cast<std::size_t>(y) * width_ + static_cast<std::size_t>(x)];
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  bool same_shape(const Grid& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

template <typename T, typename F>
Grid<T> map(const Grid<T>& in, F&& f) {
  Grid<T> out(in.width(), in.height());
  auto src = in.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = f(src[i]);
  return out;
}

}  // namespace chitrakar
