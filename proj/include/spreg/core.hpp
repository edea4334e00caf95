#pragma once

// Label maps, superpixel extraction and the per-shape quantities every
// regularity measure is built from (pixel set, inner boundary, moments).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spreg {

/// Integer pixel position: x is the column, y the row, both 0-based.
struct PixelCoord {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr bool operator==(PixelCoord, PixelCoord) = default;
  // Row-major order: the canonical enumeration order of pixel sets.
  friend constexpr std::strong_ordering operator<=>(PixelCoord a, PixelCoord b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(Point2, Point2) = default;
};

struct GridExtent {
  std::int32_t width = 0;
  std::int32_t height = 0;

  constexpr bool contains(PixelCoord p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
  }
  constexpr std::size_t area() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
};

/// Row-major grid of non-negative labels. Label values need not be
/// contiguous.
class LabelMap {
 public:
  LabelMap() = default;
  LabelMap(std::int32_t width, std::int32_t height, std::uint32_t fill = 0);
  LabelMap(std::int32_t width, std::int32_t height, std::vector<std::uint32_t> labels);

  std::int32_t width() const { return width_; }
  std::int32_t height() const { return height_; }
  GridExtent extent() const { return {width_, height_}; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  std::uint32_t at(std::int32_t x, std::int32_t y) const {
    return labels_[index(x, y)];
  }
  std::uint32_t& at(std::int32_t x, std::int32_t y) { return labels_[index(x, y)]; }
  std::uint32_t at(PixelCoord p) const { return at(p.x, p.y); }

  std::span<const std::uint32_t> labels() const { return labels_; }
  std::uint32_t max_label() const;

  friend bool operator==(const LabelMap&, const LabelMap&) = default;

 private:
  std::size_t index(std::int32_t x, std::int32_t y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  std::int32_t width_ = 0;
  std::int32_t height_ = 0;
  std::vector<std::uint32_t> labels_;
};

struct Moments {
  Point2 barycenter;
  double sigma_x = 0.0;  // population standard deviation of x
  double sigma_y = 0.0;
};

/// One superpixel. `pixels` and `boundary` are sorted in row-major order.
struct Shape {
  std::uint32_t label = 0;
  std::vector<PixelCoord> pixels;
  std::vector<PixelCoord> boundary;
  std::size_t area = 0;
  Point2 barycenter;
  double sigma_x = 0.0;
  double sigma_y = 0.0;
};

enum class ConnectivityPolicy {
  SplitDisconnected,  // every 4-connected component becomes its own shape
  Strict,             // a label with several components is an error
};

/// A full partition of a label map into 4-connected shapes.
struct Decomposition {
  LabelMap source;
  std::vector<Shape> shapes;
  /// For every pixel (row-major), the index into `shapes` that owns it.
  std::vector<std::uint32_t> shape_index;
  std::size_t image_area = 0;

  std::uint32_t shape_at(std::int32_t x, std::int32_t y) const {
    return shape_index[static_cast<std::size_t>(y) * static_cast<std::size_t>(source.width()) +
                       static_cast<std::size_t>(x)];
  }
};

/// Splits `map` into 4-connected shapes, in order of each component's first
/// pixel in row-major scan. Under SplitDisconnected the first component of a
/// label keeps it and later components receive fresh labels counting up from
/// max_label() + 1.
Decomposition extract_superpixels(const LabelMap& map,
                                  ConnectivityPolicy policy = ConnectivityPolicy::SplitDisconnected);

/// Inner 4-connected boundary: pixels with at least one 4-neighbour outside
/// the set (the grid exterior counts as outside). Result is row-major sorted.
std::vector<PixelCoord> boundary_pixels(std::span<const PixelCoord> pixels, GridExtent extent);

/// Barycenter and population standard deviations of the pixel coordinates,
/// each pixel taken at its integer position (x, y).
Moments moments(std::span<const PixelCoord> pixels);

/// Builds a Shape (boundary, area, moments) from an arbitrary pixel list.
/// Duplicates are removed. Does not check connectivity.
Shape shape_from_pixels(std::uint32_t label, std::vector<PixelCoord> pixels);

bool is_four_connected(std::span<const PixelCoord> pixels);

/// Smallest axis-aligned box containing the pixels, as [x0, x1) x [y0, y1).
struct PixelBox {
  std::int32_t x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  std::int32_t width() const { return x1 - x0; }
  std::int32_t height() const { return y1 - y0; }
};
PixelBox bounding_box(std::span<const PixelCoord> pixels);

/// Dense occupancy bitmap over a pixel set's bounding box, padded by `margin`
/// on every side. Lookups outside the stored window report false.
class PixelMask {
 public:
  PixelMask() = default;
  PixelMask(std::span<const PixelCoord> pixels, std::int32_t margin = 1);
  PixelMask(PixelBox window);

  bool contains(std::int32_t x, std::int32_t y) const {
    if (x < window_.x0 || y < window_.y0 || x >= window_.x1 || y >= window_.y1) return false;
    return bits_[offset(x, y)] != 0;
  }
  void set(std::int32_t x, std::int32_t y, bool value = true) {
    bits_[offset(x, y)] = value ? 1 : 0;
  }
  const PixelBox& window() const { return window_; }

  /// Set pixels in row-major order.
  std::vector<PixelCoord> pixels() const;

 private:
  std::size_t offset(std::int32_t x, std::int32_t y) const {
    return static_cast<std::size_t>(y - window_.y0) * static_cast<std::size_t>(window_.width()) +
           static_cast<std::size_t>(x - window_.x0);
  }

  PixelBox window_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace spreg
