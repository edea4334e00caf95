#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "spreg/core.hpp"
#include "spreg/error.hpp"
#include "support/blobs.hpp"

using namespace spreg;

namespace {

std::vector<PixelCoord> rect(int x0, int y0, int w, int h) {
  std::vector<PixelCoord> out;
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) out.push_back({x, y});
  }
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("uniform 2x2 map is one shape") {
  const Decomposition d = extract_superpixels(LabelMap(2, 2, 0));
  REQUIRE(d.shapes.size() == 1);
  CHECK(d.shapes[0].area == 4);
  CHECK(d.shapes[0].barycenter.x == doctest::Approx(0.5));
  CHECK(d.shapes[0].barycenter.y == doctest::Approx(0.5));
}

TEST_CASE("disconnected labels split or fail depending on policy") {
  const LabelMap m(4, 1, {0, 1, 0, 1});
  const Decomposition d = extract_superpixels(m, ConnectivityPolicy::SplitDisconnected);
  REQUIRE(d.shapes.size() == 4);
  for (const Shape& s : d.shapes) CHECK(s.area == 1);
  std::set<std::uint32_t> labels;
  for (const Shape& s : d.shapes) labels.insert(s.label);
  CHECK(labels.size() == 4);
  CHECK(d.shapes[0].label == 0);
  CHECK(d.shapes[1].label == 1);
  CHECK(d.shapes[2].label == 2);  // fresh labels start at max + 1
  CHECK(d.shapes[3].label == 3);

  CHECK(code_of([&] { extract_superpixels(m, ConnectivityPolicy::Strict); }) == ErrorCode::DisconnectedLabel);
}

TEST_CASE("diagonal contact does not connect") {
  const LabelMap m(2, 2, {1, 0, 0, 1});
  CHECK(extract_superpixels(m).shapes.size() == 4);
}

TEST_CASE("empty map and bad dimensions") {
  CHECK(code_of([] { extract_superpixels(LabelMap()); }) == ErrorCode::EmptyMap);
  CHECK(code_of([] { LabelMap(3, 3, std::vector<std::uint32_t>(8)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("boundary pixel counts") {
  const GridExtent big{100, 100};
  const auto one = rect(5, 5, 1, 1);
  CHECK(boundary_pixels(one, big) == one);

  const auto three = rect(0, 0, 3, 3);
  const auto b3 = boundary_pixels(three, big);
  CHECK(b3.size() == 8);
  CHECK(std::find(b3.begin(), b3.end(), PixelCoord{1, 1}) == b3.end());

  CHECK(boundary_pixels(rect(20, 30, 10, 10), big).size() == 36);
  CHECK(code_of([&] { boundary_pixels({}, big); }) == ErrorCode::EmptyInput);
}

TEST_CASE("image border counts as exterior") {
  // A shape filling the whole grid still has its outer ring as boundary.
  const auto full = rect(0, 0, 4, 4);
  CHECK(boundary_pixels(full, GridExtent{4, 4}).size() == 12);
}

TEST_CASE("moments examples") {
  const std::vector<PixelCoord> single{{3, 7}};
  const Moments m1 = moments(single);
  CHECK(m1.barycenter.x == 3.0);
  CHECK(m1.barycenter.y == 7.0);
  CHECK(m1.sigma_x == 0.0);
  CHECK(m1.sigma_y == 0.0);

  const Moments m2 = moments(rect(0, 0, 3, 2));
  CHECK(m2.sigma_x == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK(m2.sigma_y == doctest::Approx(0.5).epsilon(1e-12));

  for (int p : {2, 5, 17}) {
    const Moments m = moments(rect(3, 9, p, p));
    CHECK(m.sigma_x == m.sigma_y);
  }
}

TEST_CASE("moments match the two-pass oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto blob = testing::random_blob(rng, 40, 40, 400);
    const Moments m = moments(blob);
    const auto ref = testing::naive_moments(blob);
    CHECK(std::abs(m.barycenter.x - ref.mx) <= 1e-12);
    CHECK(std::abs(m.barycenter.y - ref.my) <= 1e-12);
    CHECK(std::abs(m.sigma_x - ref.sx) <= 1e-12);
    CHECK(std::abs(m.sigma_y - ref.sy) <= 1e-12);
  }
}

TEST_CASE("sigma is zero exactly when all pixels share the coordinate") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto blob = testing::random_blob(rng);
    const Moments m = moments(blob);
    const auto [xmin, xmax] = std::minmax_element(blob.begin(), blob.end(),
                                                  [](PixelCoord a, PixelCoord b) { return a.x < b.x; });
    const auto [ymin, ymax] = std::minmax_element(blob.begin(), blob.end(),
                                                  [](PixelCoord a, PixelCoord b) { return a.y < b.y; });
    CHECK((m.sigma_x == 0.0) == (xmin->x == xmax->x));
    CHECK((m.sigma_y == 0.0) == (ymin->y == ymax->y));
  }
}

TEST_CASE("partition property on random label maps") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    const int w = 5 + static_cast<int>(rng() % 30);
    const int h = 5 + static_cast<int>(rng() % 30);
    const LabelMap m = testing::random_partition(rng, w, h, 1 + static_cast<int>(rng() % 12));
    const Decomposition d = extract_superpixels(m);
    std::size_t total = 0;
    std::vector<int> owners(m.size(), 0);
    for (std::size_t k = 0; k < d.shapes.size(); ++k) {
      const Shape& s = d.shapes[k];
      total += s.area;
      CHECK(s.area == s.pixels.size());
      CHECK(is_four_connected(s.pixels));
      for (const PixelCoord p : s.pixels) {
        ++owners[static_cast<std::size_t>(p.y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(p.x)];
        CHECK(d.shape_at(p.x, p.y) == k);
      }
    }
    CHECK(total == m.size());
    CHECK(std::all_of(owners.begin(), owners.end(), [](int c) { return c == 1; }));
  }
}

TEST_CASE("boundary is exactly the members with an exterior neighbour") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    const auto blob = testing::random_blob(rng);
    const std::set<PixelCoord> in(blob.begin(), blob.end());
    std::vector<PixelCoord> expected;
    for (const PixelCoord p : blob) {
      if (!in.count({p.x + 1, p.y}) || !in.count({p.x - 1, p.y}) || !in.count({p.x, p.y + 1}) ||
          !in.count({p.x, p.y - 1})) {
        expected.push_back(p);
      }
    }
    const auto b = boundary_pixels(blob, GridExtent{12, 12});
    CHECK(b == expected);
    // Every reported pixel is needed: it has an exterior neighbour.
    CHECK(std::includes(blob.begin(), blob.end(), b.begin(), b.end()));
  }
}

TEST_CASE("shape_from_pixels sorts and deduplicates") {
  const Shape s = shape_from_pixels(7, {{2, 1}, {1, 1}, {2, 1}, {1, 2}});
  CHECK(s.label == 7);
  CHECK(s.area == 3);
  CHECK(std::is_sorted(s.pixels.begin(), s.pixels.end()));
}
