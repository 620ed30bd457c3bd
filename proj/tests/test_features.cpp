#include <doctest.h>

#include <array>
#include <tuple>
#include <cmath>

#include "adtrack/features.hpp"
#include "adtrack/spectral.hpp"
#include "oracles.hpp"

using namespace adtrack;

namespace {

Image ramp_image(int w, int h) {
  Image img(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.at(x, y) = static_cast<float>((x * 7 + y * 3) % 101) / 100.0f;
  }
  return img;
}

}  // namespace

TEST_CASE("to_gray uses luma weights") {
  Image rgb(2, 1, 3);
  rgb.at(0, 0, 0) = 1.0f;
  rgb.at(1, 0, 2) = 1.0f;
  const Image g = to_gray(rgb);
  CHECK(g.channels() == 1);
  CHECK(g.at(0, 0) == doctest::Approx(0.299));
  CHECK(g.at(1, 0) == doctest::Approx(0.114));
}

TEST_CASE("extract_patch replicates the border") {
  const Image img = ramp_image(100, 100);
  // Whole image when centered with the full size.
  CHECK(extract_patch(img, {50.0, 50.0}, 100, 100) == img);

  const Image corner = extract_patch(img, {0.0, 0.0}, 5, 5);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) CHECK(corner.at(x, y) == oracle::clamped(img, x - 2, y - 2, 0));
  }

  std::mt19937_64 rng(21);
  const Image color = oracle::random_image(rng, 37, 23, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_real_distribution<double> pos(-30.0, 70.0);
    std::uniform_int_distribution<int> size(1, 50);
    const Point2d c{pos(rng), pos(rng)};
    const int w = size(rng), h = size(rng);
    const Image p = extract_patch(color, c, w, h);
    REQUIRE(p.width() == w);
    REQUIRE(p.height() == h);
    const int x0 = static_cast<int>(std::lround(c.x)) - w / 2;
    const int y0 = static_cast<int>(std::lround(c.y)) - h / 2;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int ch = 0; ch < 3; ++ch) CHECK(p.at(x, y, ch) == oracle::clamped(color, x0 + x, y0 + y, ch));
      }
    }
  }
  CHECK_THROWS_AS(extract_patch(img, {NAN, 1.0}, 4, 4), std::invalid_argument);
}

TEST_CASE("hog shape and the uniform patch") {
  const FeatureMap f = hog(Image(64, 64, 1, 0.4f), 4);
  CHECK(f.rows() == 16);
  CHECK(f.cols() == 16);
  CHECK(f.depth() == kHogChannels);
  for (auto v : f.values()) CHECK(v == 0.0);
  CHECK(hog(Image(30, 18, 1), 4).grid_size() == GridSize{4, 7});
  CHECK_THROWS_AS(hog(Image(7, 16, 1), 4), std::invalid_argument);
}

TEST_CASE("hog matches the reference per-pixel binning") {
  std::mt19937_64 rng(22);
  for (auto [w, h, cell] : std::array{std::tuple{32, 24, 4}, std::tuple{17, 21, 3}, std::tuple{16, 16, 8}}) {
    const Image img = oracle::random_image(rng, w, h, 1);
    int rows = 0, cols = 0;
    const auto ref = oracle::reference_hog(img, cell, rows, cols);
    const FeatureMap f = hog(img, cell);
    REQUIRE(f.rows() == rows);
    REQUIRE(f.cols() == cols);
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(ref[i] - f.values()[i]));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("a vertical step edge fills the horizontal-gradient bins") {
  Image img(32, 32, 1, 0.1f);
  for (int y = 0; y < 32; ++y) {
    for (int x = 16; x < 32; ++x) img.at(x, y) = 0.9f;
  }
  int rows = 0, cols = 0;
  const auto ref = oracle::reference_hog(img, 4, rows, cols);
  const FeatureMap f = hog(img, 4);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      for (int ch = 0; ch < kHogChannels; ++ch) {
        CHECK(f(ch, r, c) == doctest::Approx(ref[(static_cast<std::size_t>(ch) * rows + r) * cols + c]).epsilon(1e-9));
      }
      // Only the angle-0 signed bin and its unsigned partner carry energy.
      for (int ch = 0; ch < 27; ++ch) {
        if (ch != 0 && ch != 18) CHECK(f(ch, r, c) == 0.0);
      }
    }
  }
  // The cells that straddle the edge carry it.
  CHECK(f(0, 3, 3) > 0.0);
  CHECK(f(0, 3, 4) > 0.0);
  CHECK(f(0, 3, 0) == 0.0);
}

TEST_CASE("hog is invariant to brightness offset and contrast scale") {
  std::mt19937_64 rng(23);
  Image img = oracle::random_image(rng, 24, 24, 1);
  for (auto& v : img.values()) v = 0.25f + 0.05f * v;  // low contrast keeps clear of truncation
  Image shifted = img;
  for (auto& v : shifted.values()) v += 0.5f;
  Image scaled = img;
  for (auto& v : scaled.values()) v *= 2.0f;
  const FeatureMap a = hog(img, 4);
  const FeatureMap b = hog(shifted, 4);
  const FeatureMap c = hog(scaled, 4);
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    CHECK(std::abs(a.values()[i] - b.values()[i]) < 1e-5);
    CHECK(std::abs(a.values()[i] - c.values()[i]) < 1e-6);
  }
}

TEST_CASE("featurize windows every channel") {
  std::mt19937_64 rng(24);
  const Image img = oracle::random_image(rng, 40, 28, 3);
  for (bool gray : {false, true}) {
    const FeatureConfig cfg{4, gray};
    const FeatureMap f = featurize(img, cfg);
    CHECK(f.depth() == (gray ? 32 : 31));
    CHECK(f.depth() == feature_depth(cfg));
    CHECK(featurize(oracle::random_image(rng, 64, 20, 1), cfg).depth() == f.depth());
    const FeatureMap raw = hog(img, 4);
    const RealGrid w = hann_window(f.rows(), f.cols());
    for (int ch = 0; ch < f.depth(); ++ch) {
      for (int r = 0; r < f.rows(); ++r) {
        for (int c = 0; c < f.cols(); ++c) {
          if (r == 0 || c == 0 || r == f.rows() - 1 || c == f.cols() - 1) CHECK(f(ch, r, c) == 0.0);
          if (ch < kHogChannels) CHECK(f(ch, r, c) == doctest::Approx(raw(ch, r, c) * w(r, c)));
        }
      }
    }
  }
  const FeatureMap u = featurize(Image(32, 32, 1, 0.6f), {4, true});
  for (auto v : u.values()) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("extract_patch_resampled at unit scale equals extract_patch") {
  const Image img = ramp_image(60, 40);
  const Image a = extract_patch(img, {20.0, 17.0}, 16, 12);
  const Image b = extract_patch_resampled(img, {20.0, 17.0}, 16.0, 12.0, 16, 12);
  CHECK(a == b);
}
