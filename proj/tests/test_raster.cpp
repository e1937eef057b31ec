#include <gtest/gtest.h>

#include <chitrakar/raster.hpp>

#include <random>
#include <set>

#include "oracles.hpp"

using namespace chitrakar;

namespace {

std::set<Pixel> as_set(const PixelList& l) { return {l.begin(), l.end()}; }

}  // namespace

TEST(Bresenham, Examples) {
  EXPECT_EQ(bresenham({0, 0}, {0, 0}), (PixelList{{0, 0}}));
  EXPECT_EQ(bresenham({0, 0}, {3, 3}), (PixelList{{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
  EXPECT_EQ(bresenham({0, 0}, {3, 1}), (PixelList{{0, 0}, {1, 0}, {2, 1}, {3, 1}}));
}

TEST(Bresenham, EndpointsAndEightConnected) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-30, 30);
  for (int trial = 0; trial < 2000; ++trial) {
    const Pixel p{c(rng), c(rng)}, q{c(rng), c(rng)};
    const auto cells = bresenham(p, q);
    ASSERT_EQ(cells.front(), p);
    ASSERT_EQ(cells.back(), q);
    EXPECT_EQ(cells.size(), static_cast<std::size_t>(std::max(std::abs(q.x - p.x), std::abs(q.y - p.y))) + 1);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      EXPECT_LE(std::abs(cells[i].x - cells[i - 1].x), 1);
      EXPECT_LE(std::abs(cells[i].y - cells[i - 1].y), 1);
    }
  }
}

TEST(Bresenham, DirectionSymmetricAsSet) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> c(-20, 20);
  for (int trial = 0; trial < 2000; ++trial) {
    const Pixel p{c(rng), c(rng)}, q{c(rng), c(rng)};
    EXPECT_EQ(as_set(bresenham(p, q)), as_set(bresenham(q, p)));
  }
  EXPECT_EQ(as_set(bresenham({0, 0}, {2, 1})), as_set(bresenham({2, 1}, {0, 0})));
}

TEST(Supercover, Examples) {
  EXPECT_EQ(supercover({0, 0}, {2, 0}), (PixelList{{0, 0}, {1, 0}, {2, 0}}));
  const auto diag = as_set(supercover({0, 0}, {1, 1}));
  EXPECT_EQ(diag, (std::set<Pixel>{{0, 0}, {1, 1}, {0, 1}, {1, 0}}));
  const auto sc = as_set(supercover({0, 0}, {3, 1}));
  for (const Pixel& b : bresenham({0, 0}, {3, 1})) EXPECT_TRUE(sc.contains(b));
  EXPECT_EQ(sc, oracles::touched_cells({0, 0}, {3, 1}));
}

TEST(Supercover, MatchesCellTouchOracle) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> c(-12, 12);
  for (int trial = 0; trial < 3000; ++trial) {
    const Pixel p{c(rng), c(rng)}, q{c(rng), c(rng)};
    const auto cells = supercover(p, q);
    EXPECT_EQ(as_set(cells), oracles::touched_cells(p, q)) << p.x << ',' << p.y << " -> " << q.x << ',' << q.y;
    EXPECT_EQ(as_set(cells).size(), cells.size());  // no repeats
    EXPECT_EQ(cells.front(), p);
    EXPECT_EQ(cells.back(), q);
  }
}

TEST(Supercover, SupersetOfBresenham) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> c(-40, 40);
  for (int trial = 0; trial < 2000; ++trial) {
    const Pixel p{c(rng), c(rng)}, q{c(rng), c(rng)};
    const auto sc = as_set(supercover(p, q));
    for (const Pixel& b : bresenham(p, q)) ASSERT_TRUE(sc.contains(b));
  }
}

TEST(Supercover, ConsecutiveCellsAdjacent) {
  std::mt19937 rng(10);
  std::uniform_int_distribution<int> c(-40, 40);
  for (int trial = 0; trial < 2000; ++trial) {
    const Pixel p{c(rng), c(rng)}, q{c(rng), c(rng)};
    const auto cells = supercover(p, q);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      const int dx = std::abs(cells[i].x - cells[i - 1].x), dy = std::abs(cells[i].y - cells[i - 1].y);
      // Edge-adjacent, or the corner jump between the two orthogonal cells.
      EXPECT_TRUE(dx + dy == 1 || (dx == 1 && dy == 1)) << i;
    }
  }
}

TEST(Supercover, CrossingSegmentsShareCell) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(0, 200);
  int tested = 0;
  while (tested < 3000) {
    const Pixel a{c(rng), c(rng)}, b{c(rng), c(rng)}, p{c(rng), c(rng)}, q{c(rng), c(rng)};
    if (!segments_properly_intersect(a, b, p, q)) continue;
    ++tested;
    const auto s1 = as_set(supercover(a, b));
    bool shared = false;
    for (const Pixel& cell : supercover(p, q)) shared = shared || s1.contains(cell);
    EXPECT_TRUE(shared);
  }
}

TEST(Supercover, PlainBresenhamCanMissACrossing) {
  // Two diagonals crossing at a cell corner pass through a diagonal gap.
  const auto l1 = as_set(bresenham({0, 0}, {1, 1}));
  const auto l2 = bresenham({0, 1}, {1, 0});
  bool shared = false;
  for (const Pixel& c : l2) shared = shared || l1.contains(c);
  EXPECT_FALSE(shared);
  ASSERT_TRUE(segments_properly_intersect(Pixel{0, 0}, Pixel{1, 1}, Pixel{0, 1}, Pixel{1, 0}));
  const auto s1 = as_set(supercover({0, 0}, {1, 1}));
  shared = false;
  for (const Pixel& c : supercover({0, 1}, {1, 0})) shared = shared || s1.contains(c);
  EXPECT_TRUE(shared);
}
