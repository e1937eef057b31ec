#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <type_traits>

namespace chitrakar {

// Integer pixel coordinate.
struct Pixel {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

template <typename T>
struct Vec2 {
  T x{};
  T y{};

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

using Point2 = Vec2<double>;

inline double distance(Pixel a, Pixel b) {
  return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

inline std::int64_t squared_distance(Pixel a, Pixel b) {
  const std::int64_t dx = a.x - b.x;
  const std::int64_t dy = a.y - b.y;
  return dx * dx + dy * dy;
}

namespace detail {

template <typename P>
auto coord_x(const P& p) {
  if constexpr (std::is_same_v<P, Pixel>)
    return static_cast<std::int64_t>(p.x);
  else
    return p.x;
}

template <typename P>
auto coord_y(const P& p) {
  if constexpr (std::is_same_v<P, Pixel>)
    return static_cast<std::int64_t>(p.y);
  else
    return p.y;
}

template <typename T>
int sign(T v) {
  return (T{0} < v) - (v < T{0});
}

}  // namespace detail

// Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right, 0 collinear.
// Exact for Pixel inputs.
template <typename P>
int orientation(const P& a, const P& b, const P& c) {
  using detail::coord_x, detail::coord_y;
  const auto cross = (coord_x(b) - coord_x(a)) * (coord_y(c) - coord_y(a)) -
                     (coord_y(b) - coord_y(a)) * (coord_x(c) - coord_x(a));
  return detail::sign(cross);
}

// Whether p lies in the open segment (a, b). Assumes a != b.
template <typename P>
bool strictly_inside(const P& p, const P& a, const P& b) {
  using detail::coord_x, detail::coord_y;
  if (orientation(a, b, p) != 0) return false;
  const auto dot_a = (coord_x(p) - coord_x(a)) * (coord_x(b) - coord_x(a)) +
                     (coord_y(p) - coord_y(a)) * (coord_y(b) - coord_y(a));
  const auto dot_b = (coord_x(p) - coord_x(b)) * (coord_x(a) - coord_x(b)) +
                     (coord_y(p) - coord_y(b)) * (coord_y(a) - coord_y(b));
  return dot_a > 0 && dot_b > 0;
}

// Whether p lies on the closed segment [a, b].
template <typename P>
bool on_segment(const P& p, const P& a, const P& b) {
  using detail::coord_x, detail::coord_y;
  if (orientation(a, b, p) != 0) return false;
  return std::min(coord_x(a), coord_x(b)) <= coord_x(p) &&
         coord_x(p) <= std::max(coord_x(a), coord_x(b)) &&
         std::min(coord_y(a), coord_y(b)) <= coord_y(p) &&
         coord_y(p) <= std::max(coord_y(a), coord_y(b));
}

// True iff the open segments (a,b) and (c,d) share a point interior to both.
// Collinear overlaps of positive length count; touching at an endpoint does not.
template <typename P>
bool segments_properly_intersect(const P& a, const P& b, const P& c, const P& d) {
  using detail::coord_x, detail::coord_y;
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 == 0 && o2 == 0) {
    if (a == b || c == d) return false;
    // Collinear: project onto the dominant axis and test open-interval overlap.
    const auto dx = coord_x(b) - coord_x(a);
    const auto dy = coord_y(b) - coord_y(a);
    const bool use_x = (dx < 0 ? -dx : dx) >= (dy < 0 ? -dy : dy);
    auto proj = [&](const P& p) { return use_x ? coord_x(p) : coord_y(p); };
    const auto lo1 = std::min(proj(a), proj(b));
    const auto hi1 = std::max(proj(a), proj(b));
    const auto lo2 = std::min(proj(c), proj(d));
    const auto hi2 = std::max(proj(c), proj(d));
    return std::max(lo1, lo2) < std::min(hi1, hi2);
  }
  return o1 * o2 < 0 && o3 * o4 < 0;
}

// Exact sign of (sqrt(a) + sqrt(b)) - (sqrt(c) + sqrt(d)) for non-negative
// integers below 2^27.
inline int compare_sqrt_sums(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  using i128 = __int128;
  // (sqrt a + sqrt b)^2 vs (sqrt c + sqrt d)^2  <=>  sqrt(u) - sqrt(v) vs e
  const i128 u = i128{4} * a * b;
  const i128 v = i128{4} * c * d;
  const i128 e = i128{c} + d - a - b;
  // sign(sqrt(u) - sqrt(v) - e)
  if (e >= 0) {
    // sqrt(u) vs sqrt(v) + e  <=>  u - v - e^2 vs 2 e sqrt(v)
    const i128 f = u - v - e * e;
    if (f < 0) return -1;
    const i128 lhs = f * f;
    const i128 rhs = 4 * e * e * v;
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  }
  // sqrt(v) vs sqrt(u) + g, g = -e > 0  <=>  v - u - g^2 vs 2 g sqrt(u)
  const i128 g = -e;
  const i128 h = v - u - g * g;
  if (h < 0) return 1;
  if (h == 0) return u == 0 ? 0 : 1;
  const i128 lhs = h * h;
  const i128 rhs = 4 * g * g * u;
  return lhs > rhs ? -1 : (lhs < rhs ? 1 : 0);
}

}  // namespace chitrakar
