#pragma once

// Deterministic generators: the nine reference shapes, seeded boundary
// noise, square / hexagonal grids and variance-driven quadtrees.
//
// Reference shapes for a size p, with (u, v) the offset of a pixel center
// from the canvas center (v grows downwards):
//
//   Square   p x p pixels.
//   Circle   u^2 + v^2 <= (p/2)^2.
//   Hexagon  regular, flat top and bottom, circumradius R = p/2:
//            |v| <= R*sqrt(3)/2  and  sqrt(3)|u| + |v| <= sqrt(3) R.
//   Ellipse  axes ratio 2:1 (major axis horizontal) with the area of the
//            Circle: semi-axes a = p/sqrt(2), b = a/2.
//   Cross    plus sign in a p x p box, arm width p/3.
//   Bean     disk of radius R = p/2 squashed vertically by 0.85, minus a
//            bite: with v' = v/0.85, keep u^2 + v'^2 <= R^2 and
//            u^2 + (v' + 0.8R)^2 > (0.6R)^2.
//   W        p x p block minus three wedge notches of depth 0.85p whose
//            width shrinks linearly from 0.14p at the opening to 0 at the
//            apex: two opening on the top edge at x = p/4 and 3p/4, one on
//            the bottom edge at x = p/2 (x, y in box coordinates). A pixel
//            center at distance d from the opening edge is cut when
//            d < 0.85p and |x - c| < 0.07p (1 - d/0.85p).
//   Split    two elliptic lobes, semi-axes 0.18p x 0.5p, centered at
//            u = +-0.32p, joined along the middle pixel row by a bridge one
//            pixel high.
//   U        ring between radii p/2 - 0.12p and p/2, with the part where
//            v < 0 and |u| < 0.2p removed.
//
// Every shape is rasterized by pixel-center inclusion, reduced to its
// largest 4-connected component and translated so its bounding box starts
// at (0, 0).

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spreg/core.hpp"

namespace spreg {

enum class ShapeKind { Square, Circle, Hexagon, Ellipse, Cross, Bean, W, Split, U };
enum class ShapeGroup { Regular, Standard, Irregular };

std::span<const ShapeKind> all_shape_kinds();
ShapeGroup group_of(ShapeKind kind);
std::string_view to_string(ShapeKind kind);
std::string_view to_string(ShapeGroup group);
std::optional<ShapeKind> parse_shape_kind(std::string_view name);

inline constexpr int kMinShapeSize = 8;

/// Throws SizeTooSmall when size < kMinShapeSize.
Shape make_shape(ShapeKind kind, int size);

struct NoiseSpec {
  double amplitude = 0.0;  // flip probability per candidate pixel and round
  int rounds = 3;
  std::uint64_t seed = 0;
};

/// Boundary flip noise. Each round, every exterior pixel 4-adjacent to the
/// shape is added with probability `amplitude` and every boundary pixel is
/// removed with the same probability, all decided from the same snapshot.
/// Afterwards the largest 4-connected component is kept and enclosed holes
/// are filled. Draws come from a counter-based hash of (seed, round, x, y),
/// so the result does not depend on visiting order.
///
/// The output lives on a canvas grown by `rounds` pixels on each side, so
/// its coordinates are shifted by (+rounds, +rounds). Amplitude 0 returns
/// the input unchanged. Throws ShapeVanished if nothing survives.
Shape perturb_boundary(const Shape& shape, const NoiseSpec& spec);

/// Binary label map (1 = shape, 0 = background) framing the shape with
/// `margin` background pixels.
LabelMap shape_mask(const Shape& shape, int margin = 2);

/// Near-uniform rectangular tiling. Block side s = sqrt(W*H/K); the grid has
/// round(W/s) columns and round(H/s) rows (at least one each) whose widths
/// and heights differ by at most one pixel.
LabelMap square_grid(int width, int height, int k);

/// Pointy-top hexagonal tiling with cell area W*H/K, one cell centered on
/// the image center. Pixels go to the nearest cell center, so interior
/// cells are regular hexagons and border cells are clipped. Labels are
/// assigned in order of first appearance in row-major scan.
LabelMap hex_grid(int width, int height, int k);

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> values;  // row-major

  std::uint16_t at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
  }
};

/// Recursive 4-way split of a square, power-of-two image. A block splits
/// when its side exceeds `max_block`, or when its intensity variance
/// exceeds `variance_threshold` and its side exceeds `min_block`. Leaves are
/// labelled in depth-first (NW, NE, SW, SE) order. max_block <= 0 means no
/// upper bound.
LabelMap quadtree(const GrayImage& image, double variance_threshold, int min_block, int max_block = 0);

}  // namespace spreg
