#include "spreg/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "spreg/error.hpp"

namespace spreg {

namespace {

constexpr std::array<PixelCoord, 4> kFourNeighbours{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

// Population standard deviation from exact integer power sums.
double population_sigma(std::int64_t n, std::int64_t sum, std::int64_t sum_sq) {
  const __int128 numerator =
      static_cast<__int128>(n) * static_cast<__int128>(sum_sq) -
      static_cast<__int128>(sum) * static_cast<__int128>(sum);
  if (numerator <= 0) return 0.0;
  const double nn = static_cast<double>(n);
  return std::sqrt(static_cast<double>(numerator) / (nn * nn));
}

}  // namespace

LabelMap::LabelMap(std::int32_t width, std::int32_t height, std::uint32_t fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::InvalidArgument, "negative label map dimensions");
  }
  labels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

LabelMap::LabelMap(std::int32_t width, std::int32_t height, std::vector<std::uint32_t> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
  if (width < 0 || height < 0 ||
      labels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::DimensionMismatch,
                "label buffer of size " + std::to_string(labels_.size()) + " does not match " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

std::uint32_t LabelMap::max_label() const {
  if (labels_.empty()) return 0;
  return *std::max_element(labels_.begin(), labels_.end());
}

PixelBox bounding_box(std::span<const PixelCoord> pixels) {
  if (pixels.empty()) return {};
  PixelBox box{std::numeric_limits<std::int32_t>::max(), std::numeric_limits<std::int32_t>::max(),
               std::numeric_limits<std::int32_t>::min(), std::numeric_limits<std::int32_t>::min()};
  for (const PixelCoord p : pixels) {
    box.x0 = std::min(box.x0, p.x);
    box.y0 = std::min(box.y0, p.y);
    box.x1 = std::max(box.x1, p.x + 1);
    box.y1 = std::max(box.y1, p.y + 1);
  }
  return box;
}

PixelMask::PixelMask(PixelBox window) : window_(window) {
  bits_.assign(static_cast<std::size_t>(std::max(window.width(), 0)) *
                   static_cast<std::size_t>(std::max(window.height(), 0)),
               0);
}

PixelMask::PixelMask(std::span<const PixelCoord> pixels, std::int32_t margin) {
  PixelBox box = bounding_box(pixels);
  box.x0 -= margin;
  box.y0 -= margin;
  box.x1 += margin;
  box.y1 += margin;
  *this = PixelMask(box);
  for (const PixelCoord p : pixels) set(p.x, p.y);
}

std::vector<PixelCoord> PixelMask::pixels() const {
  std::vector<PixelCoord> out;
  for (std::int32_t y = window_.y0; y < window_.y1; ++y) {
    for (std::int32_t x = window_.x0; x < window_.x1; ++x) {
      if (bits_[offset(x, y)] != 0) out.push_back({x, y});
    }
  }
  return out;
}

std::vector<PixelCoord> boundary_pixels(std::span<const PixelCoord> pixels, GridExtent extent) {
  if (pixels.empty()) {
    throw Error(ErrorCode::EmptyInput, "boundary_pixels needs a non-empty pixel set");
  }
  for (const PixelCoord p : pixels) {
    if (!extent.contains(p)) {
      throw Error(ErrorCode::InvalidArgument, "pixel outside the grid extent");
    }
  }
  // Neighbours beyond the grid are never members, so the padded mask alone
  // decides exterior adjacency.
  const PixelMask mask(pixels, 1);
  std::vector<PixelCoord> out;
  for (const PixelCoord p : mask.pixels()) {
    for (const PixelCoord d : kFourNeighbours) {
      if (!mask.contains(p.x + d.x, p.y + d.y)) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

Moments moments(std::span<const PixelCoord> pixels) {
  if (pixels.empty()) {
    throw Error(ErrorCode::EmptyInput, "moments need a non-empty pixel set");
  }
  std::int64_t sx = 0, sy = 0, sxx = 0, syy = 0;
  for (const PixelCoord p : pixels) {
    sx += p.x;
    sy += p.y;
    sxx += static_cast<std::int64_t>(p.x) * p.x;
    syy += static_cast<std::int64_t>(p.y) * p.y;
  }
  const auto n = static_cast<std::int64_t>(pixels.size());
  Moments m;
  m.barycenter = {static_cast<double>(sx) / static_cast<double>(n),
                  static_cast<double>(sy) / static_cast<double>(n)};
  m.sigma_x = population_sigma(n, sx, sxx);
  m.sigma_y = population_sigma(n, sy, syy);
  return m;
}

Shape shape_from_pixels(std::uint32_t label, std::vector<PixelCoord> pixels) {
  if (pixels.empty()) {
    throw Error(ErrorCode::EmptyInput, "a shape needs at least one pixel");
  }
  std::sort(pixels.begin(), pixels.end());
  pixels.erase(std::unique(pixels.begin(), pixels.end()), pixels.end());

  const PixelBox box = bounding_box(pixels);
  if (box.x0 < 0 || box.y0 < 0) {
    throw Error(ErrorCode::InvalidArgument, "pixel coordinates must be non-negative");
  }

  Shape shape;
  shape.label = label;
  shape.boundary = boundary_pixels(pixels, GridExtent{box.x1, box.y1});
  const Moments m = moments(pixels);
  shape.area = pixels.size();
  shape.barycenter = m.barycenter;
  shape.sigma_x = m.sigma_x;
  shape.sigma_y = m.sigma_y;
  shape.pixels = std::move(pixels);
  return shape;
}

bool is_four_connected(std::span<const PixelCoord> pixels) {
  if (pixels.empty()) return false;
  PixelMask remaining(pixels, 1);
  std::vector<PixelCoord> stack{pixels.front()};
  remaining.set(pixels.front().x, pixels.front().y, false);
  std::size_t reached = 1;
  while (!stack.empty()) {
    const PixelCoord p = stack.back();
    stack.pop_back();
    for (const PixelCoord d : kFourNeighbours) {
      const PixelCoord q{p.x + d.x, p.y + d.y};
      if (remaining.contains(q.x, q.y)) {
        remaining.set(q.x, q.y, false);
        stack.push_back(q);
        ++reached;
      }
    }
  }
  // Duplicates in the input would inflate pixels.size(); count distinct ones.
  std::vector<PixelCoord> distinct(pixels.begin(), pixels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  return reached == distinct.size();
}

Decomposition extract_superpixels(const LabelMap& map, ConnectivityPolicy policy) {
  if (map.empty()) {
    throw Error(ErrorCode::EmptyMap, "label map has no pixels");
  }
  const std::int32_t w = map.width();
  const std::int32_t h = map.height();
  constexpr auto kUnassigned = std::numeric_limits<std::uint32_t>::max();

  Decomposition decomp;
  decomp.source = map;
  decomp.image_area = map.size();
  decomp.shape_index.assign(map.size(), kUnassigned);

  std::unordered_map<std::uint32_t, std::size_t> seen_labels;
  std::uint64_t next_fresh = static_cast<std::uint64_t>(map.max_label()) + 1;

  std::vector<PixelCoord> stack;
  for (std::int32_t y = 0; y < h; ++y) {
    for (std::int32_t x = 0; x < w; ++x) {
      const std::size_t seed_idx =
          static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
      if (decomp.shape_index[seed_idx] != kUnassigned) continue;

      const std::uint32_t label = map.at(x, y);
      const auto shape_id = static_cast<std::uint32_t>(decomp.shapes.size());
      std::vector<PixelCoord> component;
      stack.assign(1, PixelCoord{x, y});
      decomp.shape_index[seed_idx] = shape_id;
      while (!stack.empty()) {
        const PixelCoord p = stack.back();
        stack.pop_back();
        component.push_back(p);
        for (const PixelCoord d : kFourNeighbours) {
          const PixelCoord q{p.x + d.x, p.y + d.y};
          if (q.x < 0 || q.y < 0 || q.x >= w || q.y >= h) continue;
          const std::size_t qi =
              static_cast<std::size_t>(q.y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(q.x);
          if (decomp.shape_index[qi] != kUnassigned || map.at(q) != label) continue;
          decomp.shape_index[qi] = shape_id;
          stack.push_back(q);
        }
      }

      std::uint32_t shape_label = label;
      if (auto [it, inserted] = seen_labels.emplace(label, shape_id); !inserted) {
        if (policy == ConnectivityPolicy::Strict) {
          throw Error(ErrorCode::DisconnectedLabel,
                      "label " + std::to_string(label) + " has more than one 4-connected component (second one at " +
                          std::to_string(x) + "," + std::to_string(y) + ")");
        }
        if (next_fresh > std::numeric_limits<std::uint32_t>::max()) {
          throw Error(ErrorCode::Overflow, "ran out of fresh labels while splitting components");
        }
        shape_label = static_cast<std::uint32_t>(next_fresh++);
      }
      decomp.shapes.push_back(shape_from_pixels(shape_label, std::move(component)));
    }
  }
  return decomp;
}

}  // namespace spreg
