#include <gtest/gtest.h>

#include <chitrakar/tour.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "support.hpp"

using namespace chitrakar;
using testing_support::polygon;
using testing_support::random_points;

namespace {

// Shortest closed tour by enumerating every permutation with index 0 fixed.
double exhaustive_optimum(const StippleSet& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  double best = INFINITY;
  do {
    best = std::min(best, tour_length(Tour(order), pts));
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return best;
}

Tour rotated(const Tour& t, std::size_t k) {
  std::vector<std::size_t> o = t.order();
  std::rotate(o.begin(), o.begin() + static_cast<long>(k), o.end());
  return Tour(o);
}

Tour reversed(const Tour& t) {
  std::vector<std::size_t> o = t.order();
  std::reverse(o.begin(), o.end());
  return Tour(o);
}

}  // namespace

TEST(Tour, Validation) {
  EXPECT_THROW(Tour({0, 1}), InvalidArgument);
  EXPECT_THROW(Tour({0, 1, 1}), InvalidArgument);
  EXPECT_THROW(Tour({0, 1, 3}), InvalidArgument);
  const Tour t({2, 0, 1});
  EXPECT_EQ(t.next(2), 2u);
}

TEST(TourLength, Examples) {
  const auto sq = polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_DOUBLE_EQ(tour_length(sq.tour, sq.points), 4.0);
  const auto line = polygon({{0, 0}, {1, 0}, {2, 0}});
  EXPECT_DOUBLE_EQ(tour_length(line.tour, line.points), 4.0);
}

TEST(TourLength, RotationAndReversalInvariant) {
  const auto pts = random_points(30, 100, 1);
  const Tour t = nearest_neighbor_tour(pts, 0);
  const double len = tour_length(t, pts);
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(tour_length(rotated(t, k), pts), len, 1e-9);
  EXPECT_NEAR(tour_length(reversed(t), pts), len, 1e-9);
}

TEST(NearestNeighbor, Examples) {
  const StippleSet tri({{0, 0}, {5, 1}, {2, 7}}, 10, 10);
  EXPECT_EQ(nearest_neighbor_tour(tri, 0).size(), 3u);

  const StippleSet line({{0, 0}, {1, 0}, {2, 0}, {3, 0}}, 4, 1);
  EXPECT_EQ(nearest_neighbor_tour(line, 0).order(), (std::vector<std::size_t>{0, 1, 2, 3}));

  const StippleSet sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 2, 2);
  const Tour t = nearest_neighbor_tour(sq, 0);
  EXPECT_DOUBLE_EQ(tour_length(t, sq), exhaustive_optimum(sq));
  EXPECT_DOUBLE_EQ(tour_length(t, sq), 4.0);
}

TEST(NearestNeighbor, TiesGoToLowestIndex) {
  // From (1,1) the four axis neighbours are equidistant; sorted index order is
  // (0,1) < (1,0) < (1,2) < (2,1).
  const StippleSet s({{1, 1}, {0, 1}, {1, 0}, {1, 2}, {2, 1}}, 3, 3);
  const std::size_t centre = testing_support::index_of(s, {1, 1});
  const Tour t = nearest_neighbor_tour(s, centre);
  EXPECT_EQ(s[t[1]], (Pixel{0, 1}));
}

TEST(NearestNeighbor, IsPermutationAndGreedy) {
  const auto pts = random_points(60, 200, 2);
  const Tour t = nearest_neighbor_tour(pts, 5);
  EXPECT_EQ(t[0], 5u);
  std::vector<bool> used(pts.size(), false);
  used[t[0]] = true;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const auto d = squared_distance(pts[t[i - 1]], pts[t[i]]);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (!used[j]) {
        EXPECT_LE(d, squared_distance(pts[t[i - 1]], pts[j]));
      }
    used[t[i]] = true;
  }
  EXPECT_THROW(nearest_neighbor_tour(StippleSet({{0, 0}, {1, 1}}, 2, 2), 0), InvalidArgument);
  EXPECT_THROW(nearest_neighbor_tour(pts, 60), InvalidArgument);
}

TEST(TwoOpt, OptimalSquareUnchanged) {
  const auto sq = polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  TwoOptReport r;
  EXPECT_EQ(two_opt_improve(sq.tour, sq.points, 50, &r), sq.tour);
  EXPECT_EQ(r.moves, 0u);
}

TEST(TwoOpt, CrossedSquareBecomesPerimeter) {
  // Visiting order 0,2,1,3 over corners numbered around the square.
  const auto sq = polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}});
  EXPECT_NEAR(tour_length(sq.tour, sq.points), 2.0 + 2.0 * std::sqrt(2.0), 1e-12);
  const Tour out = two_opt_improve(sq.tour, sq.points);
  EXPECT_NEAR(tour_length(out, sq.points), 4.0, 1e-12);
  EXPECT_NEAR(tour_length(out, sq.points), exhaustive_optimum(sq.points), 1e-12);
}

TEST(TwoOpt, EightPointsAgainstExhaustiveOptimum) {
  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto pts = random_points(8, 50, seed);
    const Tour nn = nearest_neighbor_tour(pts, 0);
    TwoOptReport r;
    const Tour out = two_opt_improve(nn, pts, 50, &r);
    const double opt = exhaustive_optimum(pts);
    const double len = tour_length(out, pts);
    EXPECT_LE(len, tour_length(nn, pts) + 1e-9);
    EXPECT_GE(len, opt - 1e-9);
    within += len <= 1.5 * opt;
    EXPECT_NEAR(r.final_length, len, 1e-9);
  }
  RecordProperty("within_1_5x_of_optimum", within);
  EXPECT_GE(within, 95);
}

TEST(TwoOpt, NeverIncreasesAndStaysPermutation) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pts = random_points(150, 300, seed);
    const Tour nn = nearest_neighbor_tour(pts, 0);
    for (std::size_t passes : {0u, 1u, 3u, 50u}) {
      TwoOptReport r;
      const Tour out = two_opt_improve(nn, pts, passes, &r);
      EXPECT_LE(tour_length(out, pts), tour_length(nn, pts) + 1e-9);
      EXPECT_LE(r.sweeps, passes);
      auto sorted = out.order();
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) ASSERT_EQ(sorted[i], i);
    }
  }
}

TEST(TwoOpt, MorePassesNeverWorse) {
  const auto pts = random_points(200, 400, 77);
  const Tour nn = nearest_neighbor_tour(pts, 0);
  double prev = tour_length(nn, pts);
  for (std::size_t passes = 1; passes <= 6; ++passes) {
    // Each run starts from the same tour and replays the same sweeps.
    const double len = tour_length(two_opt_improve(nn, pts, passes), pts);
    EXPECT_LE(len, prev + 1e-9);
    prev = len;
  }
}

TEST(Tour, WriteText) {
  const auto sq = polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::ostringstream out;
  write_tour_text(out, sq.tour, sq.points);
  EXPECT_EQ(out.str(), "0 0\n1 0\n1 1\n0 1\n");
}
