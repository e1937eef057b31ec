#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <limits>
#include <numeric>
#include <ostream>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "stipple.hpp"

namespace chitrakar {

// Closed visiting order over the points of a StippleSet; the edge from the last
// index back to the first is implied.
class Tour {
 public:
  Tour() = default;

  explicit Tour(std::vector<std::size_t> order) : order_(std::move(order)) {
    if (order_.size() < 3) throw InvalidArgument("a tour needs at least 3 points");
    std::vector<bool> seen(order_.size(), false);
    for (std::size_t v : order_) {
      if (v >= order_.size() || seen[v]) throw InvalidArgument("tour order is not a permutation");
      seen[v] = true;
    }
  }

  std::size_t size() const noexcept { return order_.size(); }
  std::size_t operator[](std::size_t pos) const { return order_[pos]; }
  std::size_t next(std::size_t pos) const { return order_[pos + 1 == order_.size() ? 0 : pos + 1]; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }

  friend bool operator==(const Tour&, const Tour&) = default;

 private:
  std::vector<std::size_t> order_;
};

inline double tour_length(const Tour& tour, const StippleSet& points) {
  double total = 0.0;
  for (std::size_t i = 0; i < tour.size(); ++i)
    total += distance(points[tour[i]], points[tour.next(i)]);
  return total;
}

// Greedy chain from `start`; ties go to the lowest index.
inline Tour nearest_neighbor_tour(const StippleSet& points, std::size_t start = 0) {
  const std::size_t n = points.size();
  if (n < 3) throw InvalidArgument("nearest_neighbor_tour needs at least 3 points");
  if (start >= n) throw InvalidArgument("start index out of range");
  std::vector<bool> visited(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  std::size_t cur = start;
  visited[cur] = true;
  order.push_back(cur);
  for (std::size_t step = 1; step < n; ++step) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::size_t best_idx = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (visited[j]) continue;
      const std::int64_t d = squared_distance(points[cur], points[j]);
      if (d < best) {
        best = d;
        best_idx = j;
      }
    }
    visited[best_idx] = true;
    order.push_back(best_idx);
    cur = best_idx;
  }
  return Tour(std::move(order));
}

struct TwoOptReport {
  std::size_t moves = 0;
  std::size_t sweeps = 0;
  double initial_length = 0.0;
  double final_length = 0.0;
};

// Sweeps i = 0..n-1; for each i applies the best improving reversal of
// order[i+1..j]. Stops after a sweep without improvement or after max_passes.
inline Tour two_opt_improve(const Tour& tour, const StippleSet& points, std::size_t max_passes = 50,
                            TwoOptReport* report = nullptr) {
  constexpr double kMinGain = 1e-9;
  const std::size_t n = tour.size();
  std::vector<std::size_t> t = tour.order();
  std::vector<double> xs(points.size()), ys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    xs[i] = points[i].x;
    ys[i] = points[i].y;
  }
  auto d = [&](std::size_t a, std::size_t b) {
    const double dx = xs[a] - xs[b];
    const double dy = ys[a] - ys[b];
    return std::sqrt(dx * dx + dy * dy);
  };

  TwoOptReport local;
  local.initial_length = tour_length(tour, points);
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    ++local.sweeps;
    bool improved = false;
    for (std::size_t i = 0; i + 2 < n; ++i) {
      const std::size_t a = t[i];
      const std::size_t b = t[i + 1];
      const double dab = d(a, b);
      double best = -kMinGain;
      std::size_t best_j = 0;
      // j = n-1 closes back to t[0], which is adjacent to edge 0.
      const std::size_t j_end = i == 0 ? n - 1 : n;
      for (std::size_t j = i + 2; j < j_end; ++j) {
        const std::size_t c = t[j];
        const std::size_t e = t[j + 1 == n ? 0 : j + 1];
        const double delta = d(a, c) + d(b, e) - dab - d(c, e);
        if (delta < best) {
          best = delta;
          best_j = j;
        }
      }
      if (best_j != 0) {
        std::reverse(t.begin() + static_cast<long>(i) + 1, t.begin() + static_cast<long>(best_j) + 1);
        if (!(best < 0.0)) throw InvariantError("2-opt accepted a non-improving move");
        ++local.moves;
        improved = true;
      }
    }
    if (!improved) break;
  }
  Tour out(std::move(t));
  local.final_length = tour_length(out, points);
  if (report) *report = local;
  return out;
}

// Ordered "x y" lines in visiting order.
inline void write_tour_text(std::ostream& out, const Tour& tour, const StippleSet& points) {
  for (std::size_t i = 0; i < tour.size(); ++i) {
    const Pixel& p = points[tour[i]];
    out << p.x << ' ' << p.y << '\n';
  }
}

}  // namespace chitrakar
