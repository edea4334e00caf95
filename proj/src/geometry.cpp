#include "spreg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

#include "spreg/error.hpp"

namespace spreg {

namespace {

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

struct IntPoint {
  std::int64_t x;
  std::int64_t y;
};

}  // namespace

double Polygon::area() const {
  if (degenerate()) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point2 a = vertices[i];
    const Point2 b = vertices[(i + 1) % vertices.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

Polygon convex_hull(std::span<const Point2> points) {
  if (points.empty()) {
    throw Error(ErrorCode::EmptyInput, "convex hull of an empty point set");
  }
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return Polygon{pts};

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2 p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Point2 p = pts[i];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  // All-collinear input collapses to the two extreme points.
  if (hull.size() < 3) {
    return Polygon{{pts.front(), pts.back()}};
  }
  return Polygon{std::move(hull)};
}

PointLocation point_in_polygon(Point2 p, const Polygon& poly) {
  if (poly.degenerate() || poly.area() <= 0.0) {
    throw Error(ErrorCode::DegeneratePolygon, "point location needs a polygon with positive area");
  }
  bool on_edge = false;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double c = cross(v[i], v[(i + 1) % v.size()], p);
    if (c < -kOnEdgeTolerance) return PointLocation::Outside;
    if (c <= kOnEdgeTolerance) on_edge = true;
  }
  return on_edge ? PointLocation::OnBoundary : PointLocation::Inside;
}

Polygon pixel_corner_hull(std::span<const PixelCoord> pixels) {
  if (pixels.empty()) {
    throw Error(ErrorCode::EmptyInput, "hull of an empty shape");
  }
  std::map<std::int32_t, std::pair<std::int32_t, std::int32_t>> rows;
  for (const PixelCoord p : pixels) {
    auto [it, inserted] = rows.try_emplace(p.y, p.x, p.x);
    if (!inserted) {
      it->second.first = std::min(it->second.first, p.x);
      it->second.second = std::max(it->second.second, p.x);
    }
  }
  std::vector<Point2> corners;
  corners.reserve(rows.size() * 4);
  for (const auto& [y, span] : rows) {
    const double top = y;
    const double bottom = y + 1.0;
    corners.push_back({static_cast<double>(span.first), top});
    corners.push_back({static_cast<double>(span.first), bottom});
    corners.push_back({span.second + 1.0, top});
    corners.push_back({span.second + 1.0, bottom});
  }
  return convex_hull(corners);
}

std::vector<PixelCoord> rasterize_hull(std::span<const PixelCoord> pixels) {
  const Polygon hull = pixel_corner_hull(pixels);
  if (hull.degenerate()) {
    std::vector<PixelCoord> own(pixels.begin(), pixels.end());
    std::sort(own.begin(), own.end());
    own.erase(std::unique(own.begin(), own.end()), own.end());
    return own;
  }

  // Doubled coordinates: corners become even integers, centers odd ones.
  std::vector<IntPoint> v;
  v.reserve(hull.vertices.size());
  std::int64_t ymin = std::numeric_limits<std::int64_t>::max();
  std::int64_t ymax = std::numeric_limits<std::int64_t>::min();
  std::int64_t xmin = std::numeric_limits<std::int64_t>::max();
  std::int64_t xmax = std::numeric_limits<std::int64_t>::min();
  for (const Point2 p : hull.vertices) {
    const IntPoint q{2 * static_cast<std::int64_t>(std::llround(p.x)),
                     2 * static_cast<std::int64_t>(std::llround(p.y))};
    v.push_back(q);
    ymin = std::min(ymin, q.y);
    ymax = std::max(ymax, q.y);
    xmin = std::min(xmin, q.x);
    xmax = std::max(xmax, q.x);
  }

  std::vector<PixelCoord> out;
  // Pixel rows whose doubled center 2y+1 lies in [ymin, ymax].
  for (std::int64_t y = ymin / 2; 2 * y + 1 <= ymax; ++y) {
    const std::int64_t py = 2 * y + 1;
    if (py < ymin) continue;
    // Pixel columns whose doubled center 2x+1 lies in [xmin, xmax].
    std::int64_t lo = ceil_div(xmin - 1, 2);
    std::int64_t hi = floor_div(xmax - 1, 2);
    for (std::size_t i = 0; i < v.size() && lo <= hi; ++i) {
      const IntPoint a = v[i];
      const IntPoint b = v[(i + 1) % v.size()];
      const std::int64_t dx = b.x - a.x;
      const std::int64_t dy = b.y - a.y;
      // Inside or on edge a->b:  dx*(py - a.y) - dy*(px - a.x) >= 0.
      const std::int64_t c0 = dx * (py - a.y) + dy * a.x;
      if (dy > 0) {
        // px <= c0 / dy, with px = 2x + 1.
        hi = std::min(hi, floor_div(floor_div(c0, dy) - 1, 2));
      } else if (dy < 0) {
        lo = std::max(lo, ceil_div(ceil_div(c0, dy) - 1, 2));
      } else if (dx * (py - a.y) < 0) {
        hi = lo - 1;
      }
    }
    for (std::int64_t x = lo; x <= hi; ++x) {
      out.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
    }
  }
  return out;
}

HullStats hull_stats(const Shape& shape) {
  const std::vector<PixelCoord> raster = rasterize_hull(shape.pixels);
  const PixelBox box = bounding_box(raster);
  HullStats stats;
  stats.hull_area_px = raster.size();
  stats.hull_perimeter_px = boundary_pixels(raster, GridExtent{box.x1, box.y1}).size();
  return stats;
}

}  // namespace spreg
