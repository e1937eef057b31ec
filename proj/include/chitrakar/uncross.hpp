#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "raster.hpp"
#include "stipple.hpp"
#include "tour.hpp"

namespace chitrakar {

// Whether two vertex-disjoint edges violate simplicity: a proper crossing,
// a collinear overlap, or an endpoint of one lying inside the other.
inline bool edges_conflict(Pixel a, Pixel b, Pixel c, Pixel d) {
  return segments_properly_intersect(a, b, c, d) || strictly_inside(c, a, b) ||
         strictly_inside(d, a, b) || strictly_inside(a, c, d) || strictly_inside(b, c, d);
}

enum class CrossingKind { proper, vertex_on_edge };

// For `proper`, first/second are edge positions (edge i runs from tour[i] to
// tour[i+1]). For `vertex_on_edge`, first is the vertex position and second the
// edge position.
struct Crossing {
  CrossingKind kind = CrossingKind::proper;
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

// Brute-force O(n^2) simplicity check. Empty result <=> the closed polyline is
// a Jordan curve.
inline std::vector<Crossing> verify_jordan(const Tour& tour, const StippleSet& points) {
  const std::size_t n = tour.size();
  if (points.size() != n) throw InvalidArgument("tour and point set sizes differ");
  std::vector<Crossing> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Pixel a = points[tour[i]];
    const Pixel b = points[tour.next(i)];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // shares tour[0]
      if (segments_properly_intersect(a, b, points[tour[j]], points[tour.next(j)]))
        out.push_back({CrossingKind::proper, i, j});
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    const Pixel p = points[tour[v]];
    for (std::size_t e = 0; e < n; ++e) {
      if (e == v || (e + 1) % n == v) continue;  // incident edge
      if (strictly_inside(p, points[tour[e]], points[tour.next(e)]))
        out.push_back({CrossingKind::vertex_on_edge, v, e});
    }
  }
  return out;
}

// A tour over a point set certified free of self-intersections.
class JordanCurve {
 public:
  // Throws InvariantError when verify_jordan reports any crossing.
  static JordanCurve certify(Tour tour, StippleSet points) {
    auto crossings = verify_jordan(tour, points);
    if (!crossings.empty())
      throw InvariantError("tour is not simple: " + std::to_string(crossings.size()) +
                           " crossing(s)");
    return JordanCurve(std::move(tour), std::move(points));
  }

  const Tour& tour() const noexcept { return tour_; }
  const StippleSet& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return tour_.size(); }
  const Pixel& vertex(std::size_t pos) const { return points_[tour_[pos]]; }

  // The (empty) verify_jordan result recorded at certification.
  const std::vector<Crossing>& certificate() const noexcept { return certificate_; }

 private:
  JordanCurve(Tour tour, StippleSet points) : tour_(std::move(tour)), points_(std::move(points)) {}

  Tour tour_;
  StippleSet points_;
  std::vector<Crossing> certificate_;
};

// Raster of drawn tour edges on a supersampled grid. A cell may be covered by
// several edges (shared endpoint cells, near misses), so each cell keeps a
// singly linked list of owner edges. Lists are invalidated in O(1) per pass via
// an epoch stamp.
class OccupancyGrid {
 public:
  static constexpr std::size_t kMaxCells = std::size_t{1} << 27;

  OccupancyGrid(const StippleSet& points, int scale) : scale_(scale) {
    if (scale < 1) throw InvalidArgument("grid scale must be >= 1");
    if (points.empty()) throw InvalidArgument("empty point set");
    min_x_ = max_x_ = points[0].x;
    min_y_ = max_y_ = points[0].y;
    for (const Pixel& p : points) {
      min_x_ = std::min(min_x_, p.x);
      max_x_ = std::max(max_x_, p.x);
      min_y_ = std::min(min_y_, p.y);
      max_y_ = std::max(max_y_, p.y);
    }
    d1_ = static_cast<std::size_t>(max_x_ - min_x_) * scale_ + 1;
    d2_ = static_cast<std::size_t>(max_y_ - min_y_) * scale_ + 1;
    if (d1_ * d2_ > kMaxCells) throw InvalidArgument("occupancy grid too large; lower grid scale");
    head_.assign(d1_ * d2_, kNil);
    stamp_.assign(d1_ * d2_, 0);
  }

  std::size_t d1() const noexcept { return d1_; }
  std::size_t d2() const noexcept { return d2_; }
  int scale() const noexcept { return scale_; }

  Pixel to_cell(Pixel p) const { return {(p.x - min_x_) * scale_, (p.y - min_y_) * scale_}; }

  PixelList cells_of(Pixel a, Pixel b) const { return supercover(to_cell(a), to_cell(b)); }

  // Empties the grid.
  void clear() {
    ++epoch_;
    nodes_.clear();
  }

  void insert(std::uint64_t edge, const PixelList& cells) {
    for (const Pixel& c : cells) {
      const std::size_t idx = index(c);
      refresh(idx);
      nodes_.push_back({edge, head_[idx]});
      head_[idx] = static_cast<std::uint32_t>(nodes_.size() - 1);
    }
  }

  template <typename F>
  void for_each_owner(Pixel cell, F&& f) const {
    const std::size_t idx = index(cell);
    if (stamp_[idx] != epoch_) return;
    for (std::uint32_t n = head_[idx]; n != kNil; n = nodes_[n].next) f(nodes_[n].edge);
  }

 private:
  static constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    std::uint64_t edge;
    std::uint32_t next;
  };

  std::size_t index(Pixel c) const {
    return static_cast<std::size_t>(c.y) * d1_ + static_cast<std::size_t>(c.x);
  }

  void refresh(std::size_t idx) {
    if (stamp_[idx] != epoch_) {
      stamp_[idx] = epoch_;
      head_[idx] = kNil;
    }
  }

  int scale_;
  std::int32_t min_x_ = 0, max_x_ = 0, min_y_ = 0, max_y_ = 0;
  std::size_t d1_ = 0, d2_ = 0;
  std::uint32_t epoch_ = 1;
  std::vector<std::uint32_t> head_;
  std::vector<std::uint32_t> stamp_;
  std::vector<Node> nodes_;
};

enum class RepairKind { two_opt, relocate };

struct RepairMove {
  RepairKind kind = RepairKind::two_opt;
  long double length_before = 0;
  long double length_after = 0;
  int exact_sign = 0;  // sign of the length change, evaluated exactly
};

struct RepairReport {
  std::size_t passes = 0;
  std::size_t raster_hits = 0;      // owner edges met on shared cells (non-adjacent)
  std::size_t confirmed_hits = 0;   // hits confirmed by the exact predicate
  std::vector<RepairMove> moves;
  bool record_lengths = false;      // fill length_before/after (O(n) per move)
};

namespace detail {

inline std::uint64_t edge_key(std::size_t u, std::size_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

inline long double precise_length(const std::vector<std::size_t>& t, const StippleSet& pts) {
  long double total = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Pixel a = pts[t[i]];
    const Pixel b = pts[t[(i + 1) % t.size()]];
    const long double dx = a.x - b.x;
    const long double dy = a.y - b.y;
    total += std::sqrt(dx * dx + dy * dy);
  }
  return total;
}

// Mutable tour state for the repair loop.
class RepairState {
 public:
  RepairState(const Tour& tour, const StippleSet& points)
      : pts_(points), t_(tour.order()), pos_(t_.size()) {
    reindex(0, t_.size());
  }

  std::size_t n() const { return t_.size(); }
  std::size_t at(std::size_t p) const { return t_[p % t_.size()]; }
  const std::vector<std::size_t>& order() const { return t_; }

  // Position of the edge {u, v}; the pair must be consecutive in the tour.
  std::size_t edge_pos(std::size_t u, std::size_t v) const {
    return at(pos_[u] + 1) == v ? pos_[u] : pos_[v];
  }

  Pixel px(std::size_t vertex) const { return pts_[vertex]; }

  bool edges_disjoint(std::size_t e1, std::size_t e2) const {
    const std::size_t a = at(e1), b = at(e1 + 1), c = at(e2), d = at(e2 + 1);
    return a != c && a != d && b != c && b != d;
  }

  // Exact sign of the length change of the 2-opt move on edges e1, e2.
  int two_opt_sign(std::size_t e1, std::size_t e2) const {
    const std::size_t i = std::min(e1, e2), j = std::max(e1, e2);
    const Pixel a = px(at(i)), b = px(at(i + 1)), c = px(at(j)), d = px(at(j + 1));
    return compare_sqrt_sums(squared_distance(a, c), squared_distance(b, d), squared_distance(a, b),
                             squared_distance(c, d));
  }

  // Reverses order[i+1..j]: edges (t_i,t_j) and (t_i+1,t_j+1) replace the pair.
  void apply_two_opt(std::size_t e1, std::size_t e2, std::vector<std::uint64_t>& removed) {
    const std::size_t i = std::min(e1, e2), j = std::max(e1, e2);
    removed.push_back(edge_key(at(i), at(i + 1)));
    removed.push_back(edge_key(at(j), at(j + 1)));
    std::reverse(t_.begin() + static_cast<long>(i) + 1, t_.begin() + static_cast<long>(j) + 1);
    reindex(i + 1, j + 1);
  }

  // Moving vertex v (strictly inside edge e) between that edge's endpoints
  // changes the length by |pq| - |pv| - |vq|, which is negative exactly when v
  // is off the closed segment pq.
  bool relocate_improves(std::size_t v, std::size_t e) const {
    const std::size_t pv = pos_[v];
    const std::size_t p = at(pv + n() - 1), q = at(pv + 1);
    if (at(e) == v || at(e + 1) == v) return false;
    return !on_segment(px(v), px(p), px(q));
  }

  void apply_relocate(std::size_t v, std::size_t e, std::vector<std::uint64_t>& removed) {
    const std::size_t a = at(e), b = at(e + 1);
    const std::size_t pv = pos_[v];
    removed.push_back(edge_key(at(pv + n() - 1), v));
    removed.push_back(edge_key(v, at(pv + 1)));
    removed.push_back(edge_key(a, b));
    t_.erase(t_.begin() + static_cast<long>(pv));
    const auto ia = std::find(t_.begin(), t_.end(), a);
    const auto ib = ia + 1 == t_.end() ? t_.begin() : ia + 1;
    if (*ib == b)
      t_.insert(ia + 1, v);
    else
      t_.insert(ia, v);  // b precedes a
    reindex(0, t_.size());
  }

 private:
  void reindex(std::size_t from, std::size_t to) {
    for (std::size_t p = from; p < to; ++p) pos_[t_[p]] = p;
  }

  const StippleSet& pts_;
  std::vector<std::size_t> t_;
  std::vector<std::size_t> pos_;
};

// Picks and applies a strictly shortening move that addresses the conflict
// between edges e1 and e2. Returns the kind and exact sign, or nothing when no
// candidate shortens the tour.
inline std::optional<std::pair<RepairKind, int>> repair_conflict(
    RepairState& s, std::size_t e1, std::size_t e2, std::vector<std::uint64_t>& removed) {
  const int sign = s.two_opt_sign(e1, e2);
  if (sign < 0) {
    s.apply_two_opt(e1, e2, removed);
    return std::pair{RepairKind::two_opt, sign};
  }
  // Degenerate (collinear) contact: an endpoint of one edge lies inside the other.
  const std::size_t n = s.n();
  for (auto [edge, other] : {std::pair{e1, e2}, std::pair{e2, e1}}) {
    for (std::size_t end : {s.at(other), s.at(other + 1)}) {
      if (!strictly_inside(s.px(end), s.px(s.at(edge)), s.px(s.at(edge + 1)))) continue;
      const std::size_t vpos = s.at(other) == end ? other : (other + 1) % n;
      for (std::size_t inc : {(vpos + n - 1) % n, vpos}) {
        if (!s.edges_disjoint(inc, edge)) continue;
        const int sg = s.two_opt_sign(inc, edge);
        if (sg < 0) {
          s.apply_two_opt(inc, edge, removed);
          return std::pair{RepairKind::two_opt, sg};
        }
      }
      if (s.relocate_improves(end, edge)) {
        s.apply_relocate(end, edge, removed);
        return std::pair{RepairKind::relocate, -1};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Rasterizes tour edges in order into an occupancy grid (supercover cells at
// `scale` supersampling). A shared cell with an earlier, non-adjacent edge is
// confirmed with exact predicates and repaired by a strictly shortening
// reconnection (2-opt on the pair; a vertex relocation for collinear contact).
// Passes repeat until one completes without a repair.
inline JordanCurve remove_intersections(const Tour& tour, const StippleSet& points, int scale = 2,
                                        RepairReport* report = nullptr) {
  if (tour.size() != points.size()) throw InvalidArgument("tour and point set sizes differ");
  OccupancyGrid grid(points, scale);
  detail::RepairState state(tour, points);
  const std::size_t n = state.n();
  std::unordered_set<std::uint64_t> drawn;
  drawn.reserve(2 * n);
  std::vector<std::uint64_t> checked;
  std::vector<std::uint64_t> removed;
  RepairReport local;
  local.record_lengths = report && report->record_lengths;

  for (;;) {
    ++local.passes;
    grid.clear();
    drawn.clear();
    bool repaired = false;
    std::size_t k = 0;
    while (k < n) {
      const std::size_t u = state.at(k), v = state.at(k + 1);
      const std::uint64_t key = detail::edge_key(u, v);
      if (drawn.contains(key)) {
        ++k;
        continue;
      }
      const PixelList cells = grid.cells_of(state.px(u), state.px(v));
      checked.clear();
      std::optional<std::uint64_t> hit;
      for (const Pixel& c : cells) {
        grid.for_each_owner(c, [&](std::uint64_t owner) {
          if (hit || !drawn.contains(owner)) return;
          const std::size_t a = owner >> 32, b = owner & 0xffffffffu;
          if (a == u || a == v || b == u || b == v) return;
          if (std::find(checked.begin(), checked.end(), owner) != checked.end()) return;
          checked.push_back(owner);
          ++local.raster_hits;
          if (edges_conflict(state.px(u), state.px(v), state.px(a), state.px(b))) hit = owner;
        });
        if (hit) break;
      }
      if (!hit) {
        grid.insert(key, cells);
        drawn.insert(key);
        ++k;
        continue;
      }
      ++local.confirmed_hits;
      const std::size_t other = state.edge_pos(*hit >> 32, *hit & 0xffffffffu);
      const long double before = local.record_lengths ? detail::precise_length(state.order(), points) : 0;
      removed.clear();
      const auto move = detail::repair_conflict(state, k, other, removed);
      if (!move)
        throw InvariantError("no length-decreasing move removes the crossing (degenerate input)");
      for (std::uint64_t r : removed) drawn.erase(r);
      RepairMove rec;
      rec.kind = move->first;
      rec.exact_sign = move->second;
      if (local.record_lengths) {
        rec.length_before = before;
        rec.length_after = detail::precise_length(state.order(), points);
      }
      local.moves.push_back(rec);
      repaired = true;
    }
    if (!repaired) break;
  }

  if (report) *report = std::move(local);
  return JordanCurve::certify(Tour(state.order()), points);
}

}  // namespace chitrakar
