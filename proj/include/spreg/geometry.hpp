#pragma once

// Convex hulls of pixel shapes and their discrete area / boundary counts.
//
// A shape's hull is taken over the four corners of each of its pixels, and a
// pixel belongs to the rasterized hull when its center lies inside or on the
// hull polygon. Corners are integers and centers are half-integers, so every
// orientation test is a difference of products of small integers. Those are
// exact in binary64 up to 2^53, which is why no robust-predicate machinery is
// needed; the rasterizer goes one step further and works in doubled integer
// coordinates.

#include <cstddef>
#include <span>
#include <vector>

#include "spreg/core.hpp"

namespace spreg {

/// Convex polygon, vertices in counter-clockwise order with respect to the
/// positive shoelace area (x right, y down as in images). Fewer than three
/// vertices marks a degenerate hull (single point or segment).
struct Polygon {
  std::vector<Point2> vertices;

  bool degenerate() const { return vertices.size() < 3; }
  double area() const;
};

enum class PointLocation { Inside, OnBoundary, Outside };

/// Cross-product magnitude below which a point counts as lying on an edge.
inline constexpr double kOnEdgeTolerance = 1e-9;

/// Andrew's monotone chain; collinear points along edges are dropped.
/// Throws EmptyInput for an empty point set.
Polygon convex_hull(std::span<const Point2> points);

/// Throws DegeneratePolygon when `poly` has zero area.
PointLocation point_in_polygon(Point2 p, const Polygon& poly);

/// Hull of the corner points {(x,y),(x+1,y),(x,y+1),(x+1,y+1)} of every
/// pixel. Only the two extreme pixels of each row contribute candidates.
Polygon pixel_corner_hull(std::span<const PixelCoord> pixels);

/// Pixels whose centers (x+0.5, y+0.5) fall inside or on the corner hull,
/// in row-major order. A degenerate hull rasterizes to the input pixels.
std::vector<PixelCoord> rasterize_hull(std::span<const PixelCoord> pixels);

struct HullStats {
  std::size_t hull_area_px = 0;       // |CH|
  std::size_t hull_perimeter_px = 0;  // |P(CH)|, inner 4-boundary of the raster
};

HullStats hull_stats(const Shape& shape);

}  // namespace spreg
