#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "spreg/error.hpp"
#include "spreg/geometry.hpp"
#include "support/blobs.hpp"

using namespace spreg;

namespace {

const std::vector<PixelCoord> kLTriomino{{0, 0}, {1, 0}, {0, 1}};

Polygon pentagon() { return Polygon{{{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}}}; }

bool same_points(std::vector<Point2> a, std::vector<Point2> b) {
  auto lt = [](Point2 p, Point2 q) { return p.x < q.x || (p.x == q.x && p.y < q.y); };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  return a == b;
}

}  // namespace

TEST_CASE("square corners plus center") {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  const Polygon h = convex_hull(pts);
  CHECK(h.vertices.size() == 4);
  CHECK(same_points(h.vertices, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(h.area() == doctest::Approx(1.0));
}

TEST_CASE("collinear input gives a degenerate segment") {
  const std::vector<Point2> pts{{0, 0}, {1, 1}, {2, 2}};
  const Polygon h = convex_hull(pts);
  CHECK(h.degenerate());
  CHECK(h.vertices.size() == 2);
  CHECK(same_points(h.vertices, {{0, 0}, {2, 2}}));
  CHECK_THROWS_AS(point_in_polygon({1, 1}, h), Error);
}

TEST_CASE("empty hull input") { CHECK_THROWS_AS(convex_hull({}), Error); }

TEST_CASE("random disk points against the vertex oracle") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point2> pts;
    while (pts.size() < 100) {
      const Point2 p{u(rng), u(rng)};
      if (p.x * p.x + p.y * p.y <= 1.0) pts.push_back(p);
    }
    const Polygon h = convex_hull(pts);
    CHECK(same_points(h.vertices, testing::oracle_hull_vertices(pts)));
    for (const Point2& p : pts) CHECK(point_in_polygon(p, h) != PointLocation::Outside);
  }
}

TEST_CASE("point in polygon") {
  const Polygon tri{{{0, 0}, {3, 0}, {0, 3}}};
  CHECK(point_in_polygon({1, 1}, tri) == PointLocation::Inside);
  CHECK(point_in_polygon({3, 0}, tri) == PointLocation::OnBoundary);
  CHECK(point_in_polygon({2, 2}, tri) == PointLocation::Outside);
  CHECK(point_in_polygon({1.5, 1.5}, pentagon()) == PointLocation::OnBoundary);
  CHECK(point_in_polygon({0.5, 0.5}, pentagon()) == PointLocation::Inside);
}

TEST_CASE("L-triomino corner hull") {
  const Polygon h = pixel_corner_hull(kLTriomino);
  CHECK(same_points(h.vertices, pentagon().vertices));
  const auto raster = rasterize_hull(kLTriomino);
  CHECK(raster.size() == 4);
  CHECK(std::find(raster.begin(), raster.end(), PixelCoord{1, 1}) != raster.end());
  const HullStats st = hull_stats(shape_from_pixels(1, kLTriomino));
  CHECK(st.hull_area_px == 4);
}

TEST_CASE("square shape is its own hull") {
  for (int p : {1, 2, 7, 30}) {
    std::vector<PixelCoord> sq;
    for (int y = 0; y < p; ++y) {
      for (int x = 0; x < p; ++x) sq.push_back({x + 4, y + 9});
    }
    const HullStats st = hull_stats(shape_from_pixels(1, sq));
    CHECK(st.hull_area_px == static_cast<std::size_t>(p * p));
  }
}

TEST_CASE("straight lines rasterize to themselves") {
  std::vector<PixelCoord> row, col;
  for (int i = 0; i < 9; ++i) {
    row.push_back({i, 3});
    col.push_back({3, i});
  }
  CHECK(rasterize_hull(row) == row);
  CHECK(rasterize_hull(col) == col);
}

TEST_CASE("hull_stats matches the half-plane oracle on random blobs") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 200; ++i) {
    const auto blob = testing::random_blob(rng);
    const auto oracle = testing::oracle_hull(blob);
    CHECK(rasterize_hull(blob) == oracle.raster);
    const HullStats st = hull_stats(shape_from_pixels(1, blob));
    CHECK(st.hull_area_px == oracle.area);
    CHECK(st.hull_perimeter_px == oracle.perimeter);
  }
}

TEST_CASE("hull contains the shape") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto blob = testing::random_blob(rng, 20, 20, 150);
    const auto raster = rasterize_hull(blob);
    CHECK(std::includes(raster.begin(), raster.end(), blob.begin(), blob.end()));
  }
}

TEST_CASE("adding a pixel never shrinks the hull") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 200; ++i) {
    auto blob = testing::random_blob(rng);
    const std::size_t before = rasterize_hull(blob).size();
    const std::set<PixelCoord> in(blob.begin(), blob.end());
    // Any 4-neighbour outside the blob keeps it connected.
    for (const PixelCoord p : blob) {
      const PixelCoord q{p.x + 1, p.y};
      if (!in.count(q)) {
        blob.push_back(q);
        std::sort(blob.begin(), blob.end());
        break;
      }
    }
    CHECK(rasterize_hull(blob).size() >= before);
  }
}
