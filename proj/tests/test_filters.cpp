#include <gtest/gtest.h>

#include <chitrakar/filters.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace chitrakar;

namespace {

// Dense 2-D convolution with the sampled, normalized G(x, y) and replicate
// padding, computed directly without separability.
Grid<double> dense_gaussian(const Grid<double>& in, double sigma) {
  const int half = static_cast<int>(std::ceil(3.0 * sigma));
  double sum = 0.0;
  for (int dy = -half; dy <= half; ++dy)
    for (int dx = -half; dx <= half; ++dx) sum += gaussian_density(dx, dy, sigma);
  Grid<double> out(in.width(), in.height());
  for (long y = 0; y < static_cast<long>(in.height()); ++y)
    for (long x = 0; x < static_cast<long>(in.width()); ++x) {
      double acc = 0.0;
      for (int dy = -half; dy <= half; ++dy)
        for (int dx = -half; dx <= half; ++dx)
          acc += gaussian_density(dx, dy, sigma) / sum * in.clamped(x + dx, y + dy);
      out(x, y) = acc;
    }
  return out;
}

Grid<double> dense_laplacian(const Grid<double>& s) {
  static const int k[3][3] = {{0, 1, 0}, {1, -4, 1}, {0, 1, 0}};
  Grid<double> out(s.width(), s.height());
  for (long y = 0; y < static_cast<long>(s.height()); ++y)
    for (long x = 0; x < static_cast<long>(s.width()); ++x) {
      double acc = 0.0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) acc += k[dy + 1][dx + 1] * s.clamped(x + dx, y + dy);
      out(x, y) = acc;
    }
  return out;
}

GrayImage random_image(std::size_t w, std::size_t h, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid<double> g(w, h);
  for (double& v : g.values()) v = u(rng);
  return GrayImage(std::move(g));
}

GrayImage flip_x(const GrayImage& img) {
  Grid<double> g(img.width(), img.height());
  for (std::size_t y = 0; y < img.height(); ++y)
    for (std::size_t x = 0; x < img.width(); ++x) g(x, y) = img(img.width() - 1 - x, y);
  return GrayImage(std::move(g));
}

GrayImage flip_y(const GrayImage& img) {
  Grid<double> g(img.width(), img.height());
  for (std::size_t y = 0; y < img.height(); ++y)
    for (std::size_t x = 0; x < img.width(); ++x) g(x, y) = img(x, img.height() - 1 - y);
  return GrayImage(std::move(g));
}

void expect_grids_near(const Grid<double>& a, const Grid<double>& b, double tol) {
  ASSERT_TRUE(a.same_shape(b));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.values()[i], b.values()[i], tol) << "at " << i;
}

}  // namespace

TEST(Gaussian, CenterDensity) {
  EXPECT_NEAR(gaussian_density(0, 0, 1.0), 1.0 / (2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(gaussian_density(0, 0, 1.0), 0.159155, 1e-6);
}

TEST(Gaussian, KernelSide) {
  EXPECT_EQ((FilterParams{1.0, 1}.gaussian_side()), 7);
  EXPECT_EQ((FilterParams{0.5, 1}.gaussian_side()), 5);
  EXPECT_EQ((FilterParams{1.2, 1}.gaussian_side()), 9);
  EXPECT_EQ(gaussian_taps(1.0).size(), 7u);
}

TEST(Gaussian, PreservesConstants) {
  for (double c : {0.0, 0.3, 1.0}) {
    const auto out = gaussian_filter(GrayImage(9, 6, c), 1.3);
    for (double v : out.grid().values()) EXPECT_NEAR(v, c, 1e-15);
  }
}

TEST(Gaussian, MatchesDenseOracle) {
  for (double sigma : {0.5, 1.0, 2.0}) {
    const auto img = random_image(13, 11, 7);
    expect_grids_near(gaussian_filter(img, sigma).grid(), dense_gaussian(img.grid(), sigma), 1e-12);
  }
}

TEST(Gaussian, SinglePixelPeakAndSymmetry) {
  Grid<double> g(9, 9, 0.0);
  g(4, 4) = 1.0;
  const auto out = gaussian_filter(GrayImage(g), 1.0);
  for (std::size_t y = 0; y < 9; ++y)
    for (std::size_t x = 0; x < 9; ++x) {
      if (x != 4 || y != 4) {
        EXPECT_LT(out(x, y), out(4, 4));
      }
      EXPECT_NEAR(out(x, y), out(8 - x, y), 1e-15);
      EXPECT_NEAR(out(x, y), out(x, 8 - y), 1e-15);
      EXPECT_NEAR(out(x, y), out(y, x), 1e-15);
    }
  expect_grids_near(out.grid(), dense_gaussian(g, 1.0), 1e-15);
}

TEST(Gaussian, CommutesWithFlips) {
  const auto img = random_image(10, 7, 3);
  expect_grids_near(gaussian_filter(flip_x(img), 1.0).grid(), flip_x(gaussian_filter(img, 1.0)).grid(), 1e-14);
  expect_grids_near(gaussian_filter(flip_y(img), 1.0).grid(), flip_y(gaussian_filter(img, 1.0)).grid(), 1e-14);
}

TEST(Gaussian, RejectsBadSigma) {
  EXPECT_THROW(gaussian_filter(GrayImage(3, 3, 0.5), 0.0), InvalidArgument);
  EXPECT_THROW(gaussian_filter(GrayImage(3, 3, 0.5), -1.0), InvalidArgument);
}

TEST(Laplacian, ConstantImage) {
  const FilterParams p{};
  const auto response = laplacian_response(GrayImage(6, 6, 0.4), p);
  for (double v : response.values()) EXPECT_NEAR(v, 0.0, 1e-15);
  const auto log = laplacian_of_gaussian(GrayImage(6, 6, 0.4), p);
  for (double v : log.grid().values()) EXPECT_EQ(v, 0.5);
}

TEST(Laplacian, MatchesDenseOracle) {
  const auto img = random_image(12, 9, 11);
  const FilterParams p{1.0, 1};
  expect_grids_near(laplacian_response(img, p), dense_laplacian(dense_gaussian(img.grid(), 1.0)), 1e-12);
}

TEST(Laplacian, StepEdgeExtremaAdjacentToEdge) {
  // Left half dark, right half bright; the edge lies between x=2 and x=3.
  Grid<double> g(5, 5, 0.0);
  for (std::size_t y = 0; y < 5; ++y)
    for (std::size_t x = 3; x < 5; ++x) g(x, y) = 1.0;
  const auto resp = laplacian_response(GrayImage(g), FilterParams{0.5, 1});
  const auto oracle = dense_laplacian(dense_gaussian(g, 0.5));
  expect_grids_near(resp, oracle, 1e-12);
  for (std::size_t y = 0; y < 5; ++y) {
    std::size_t argmax = 0, argmin = 0;
    for (std::size_t x = 1; x < 5; ++x) {
      if (resp(x, y) > resp(argmax, y)) argmax = x;
      if (resp(x, y) < resp(argmin, y)) argmin = x;
    }
    EXPECT_EQ(argmax, 2u);  // dark side of the edge
    EXPECT_EQ(argmin, 3u);  // bright side
  }
}

TEST(Laplacian, GradientRespondsOnlyNearChanges) {
  // Flat, linear ramp, flat: the Laplacian of a ramp is zero away from its kinks.
  Grid<double> g(40, 3);
  for (std::size_t y = 0; y < 3; ++y)
    for (std::size_t x = 0; x < 40; ++x) g(x, y) = x < 10 ? 0.0 : (x >= 30 ? 1.0 : (x - 10) / 20.0);
  const auto resp = laplacian_response(GrayImage(g), FilterParams{1.0, 1});
  for (std::size_t x = 0; x < 40; ++x) {
    const bool near_kink = (x >= 6 && x <= 14) || (x >= 26 && x <= 34);
    if (!near_kink) {
      EXPECT_NEAR(resp(x, 1), 0.0, 1e-12) << x;
    }
  }
  EXPECT_GT(std::abs(resp(10, 1)), 1e-3);
  EXPECT_GT(std::abs(resp(30, 1)), 1e-3);
}

TEST(Laplacian, OnlyRadiusOne) {
  EXPECT_THROW(laplacian_of_gaussian(GrayImage(4, 4, 0.5), FilterParams{1.0, 2}), UnsupportedParameter);
  EXPECT_THROW(laplacian_of_gaussian(GrayImage(4, 4, 0.5), FilterParams{1.0, 0}), InvalidArgument);
}

TEST(Enhance, CombineExamples) {
  EXPECT_EQ(combine(GrayImage(3, 3, 1.0), GrayImage(3, 3, 1.0), EnhanceMode::multiply), GrayImage(3, 3, 1.0));
  EXPECT_EQ(combine(GrayImage(3, 3, 0.5), GrayImage(3, 3, 0.0), EnhanceMode::add_negative), GrayImage(3, 3, 0.5));

  const auto a = random_image(3, 3, 1), b = random_image(3, 3, 2);
  const auto prod = combine(a, b, EnhanceMode::multiply);
  const auto diff = combine(a, b, EnhanceMode::add_negative);
  for (std::size_t y = 0; y < 3; ++y)
    for (std::size_t x = 0; x < 3; ++x) {
      EXPECT_DOUBLE_EQ(prod(x, y), a(x, y) * b(x, y));
      EXPECT_DOUBLE_EQ(diff(x, y), std::clamp(a(x, y) - b(x, y), 0.0, 1.0));
    }
  EXPECT_THROW(combine(GrayImage(2, 2, 0.1), GrayImage(3, 2, 0.1), EnhanceMode::multiply), InvalidArgument);
}

TEST(Enhance, OutputsStayInUnitRange) {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto img = random_image(16, 16, seed);
    for (auto mode : {EnhanceMode::multiply, EnhanceMode::add_negative}) {
      const auto out = enhance(img, FilterParams{0.5 + seed * 0.1, 1}, mode);
      for (double v : out.grid().values()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

TEST(Enhance, DefaultIsMultiply) {
  const auto img = random_image(8, 8, 5);
  EXPECT_EQ(enhance(img, FilterParams{}), enhance(img, FilterParams{}, EnhanceMode::multiply));
  EXPECT_EQ(parse_enhance_mode("add-negative"), EnhanceMode::add_negative);
  EXPECT_THROW(parse_enhance_mode("screen"), InvalidArgument);
}
