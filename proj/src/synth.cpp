#include "spreg/synth.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "spreg/error.hpp"

namespace spreg {

namespace {

constexpr std::array<ShapeKind, 9> kAllKinds{ShapeKind::Square,  ShapeKind::Circle, ShapeKind::Hexagon,
                                             ShapeKind::Ellipse, ShapeKind::Cross,  ShapeKind::Bean,
                                             ShapeKind::W,       ShapeKind::Split,  ShapeKind::U};

constexpr std::array<PixelCoord, 4> kFour{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
constexpr std::array<PixelCoord, 8> kEight{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

const double kSqrt3 = std::sqrt(3.0);

// splitmix64 finaliser.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform draw in [0, 1) addressed by (seed, round, x, y, stream).
double counter_uniform(std::uint64_t seed, int round, std::int32_t x, std::int32_t y, int stream) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(round)));
  h = mix(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32 |
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(y))));
  h = mix(h ^ static_cast<std::uint64_t>(stream));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Connected components of a mask (4-connectivity), largest first; ties go to
// the component met first in row-major order.
std::vector<PixelCoord> largest_component(const PixelMask& mask) {
  PixelMask unvisited = mask;
  std::vector<PixelCoord> best;
  std::vector<PixelCoord> stack;
  for (const PixelCoord seed : mask.pixels()) {
    if (!unvisited.contains(seed.x, seed.y)) continue;
    std::vector<PixelCoord> comp;
    unvisited.set(seed.x, seed.y, false);
    stack.assign(1, seed);
    while (!stack.empty()) {
      const PixelCoord p = stack.back();
      stack.pop_back();
      comp.push_back(p);
      for (const PixelCoord d : kFour) {
        if (unvisited.contains(p.x + d.x, p.y + d.y)) {
          unvisited.set(p.x + d.x, p.y + d.y, false);
          stack.push_back({p.x + d.x, p.y + d.y});
        }
      }
    }
    if (comp.size() > best.size()) best = std::move(comp);
  }
  return best;
}

// Pixels of the window that are not reachable from the window frame through
// 8-connected background get filled.
void fill_holes(PixelMask& mask) {
  const PixelBox w = mask.window();
  PixelMask outside(w);
  std::vector<PixelCoord> stack;
  auto seed = [&](std::int32_t x, std::int32_t y) {
    if (!mask.contains(x, y) && !outside.contains(x, y)) {
      outside.set(x, y);
      stack.push_back({x, y});
    }
  };
  for (std::int32_t x = w.x0; x < w.x1; ++x) {
    seed(x, w.y0);
    seed(x, w.y1 - 1);
  }
  for (std::int32_t y = w.y0; y < w.y1; ++y) {
    seed(w.x0, y);
    seed(w.x1 - 1, y);
  }
  while (!stack.empty()) {
    const PixelCoord p = stack.back();
    stack.pop_back();
    for (const PixelCoord d : kEight) {
      const std::int32_t x = p.x + d.x;
      const std::int32_t y = p.y + d.y;
      if (x < w.x0 || y < w.y0 || x >= w.x1 || y >= w.y1) continue;
      seed(x, y);
    }
  }
  for (std::int32_t y = w.y0; y < w.y1; ++y) {
    for (std::int32_t x = w.x0; x < w.x1; ++x) {
      if (!outside.contains(x, y)) mask.set(x, y);
    }
  }
}

using CenterPredicate = std::function<bool(double u, double v)>;

// Rasterizes `inside` over a canvas_w x canvas_h grid of pixel centers given
// as offsets from the canvas center.
Shape rasterize(int canvas_w, int canvas_h, const CenterPredicate& inside) {
  PixelMask mask(PixelBox{0, 0, canvas_w, canvas_h});
  const double cx = canvas_w / 2.0;
  const double cy = canvas_h / 2.0;
  for (int y = 0; y < canvas_h; ++y) {
    for (int x = 0; x < canvas_w; ++x) {
      if (inside(x + 0.5 - cx, y + 0.5 - cy)) mask.set(x, y);
    }
  }
  std::vector<PixelCoord> pixels = largest_component(mask);
  if (pixels.empty()) {
    throw Error(ErrorCode::InvariantViolation, "shape rasterized to nothing");
  }
  const PixelBox box = bounding_box(pixels);
  for (PixelCoord& p : pixels) {
    p.x -= box.x0;
    p.y -= box.y0;
  }
  return shape_from_pixels(1, std::move(pixels));
}

}  // namespace

std::span<const ShapeKind> all_shape_kinds() { return kAllKinds; }

ShapeGroup group_of(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Square:
    case ShapeKind::Circle:
    case ShapeKind::Hexagon:
      return ShapeGroup::Regular;
    case ShapeKind::Ellipse:
    case ShapeKind::Cross:
    case ShapeKind::Bean:
      return ShapeGroup::Standard;
    case ShapeKind::W:
    case ShapeKind::Split:
    case ShapeKind::U:
      return ShapeGroup::Irregular;
  }
  return ShapeGroup::Irregular;
}

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Square: return "Square";
    case ShapeKind::Circle: return "Circle";
    case ShapeKind::Hexagon: return "Hexagon";
    case ShapeKind::Ellipse: return "Ellipse";
    case ShapeKind::Cross: return "Cross";
    case ShapeKind::Bean: return "Bean";
    case ShapeKind::W: return "W";
    case ShapeKind::Split: return "Split";
    case ShapeKind::U: return "U";
  }
  return "?";
}

std::string_view to_string(ShapeGroup group) {
  switch (group) {
    case ShapeGroup::Regular: return "regular";
    case ShapeGroup::Standard: return "standard";
    case ShapeGroup::Irregular: return "irregular";
  }
  return "?";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view name) {
  for (const ShapeKind k : kAllKinds) {
    const std::string_view s = to_string(k);
    if (s.size() == name.size() &&
        std::equal(s.begin(), s.end(), name.begin(), [](char a, char b) {
          return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
        })) {
      return k;
    }
  }
  return std::nullopt;
}

Shape make_shape(ShapeKind kind, int size) {
  if (size < kMinShapeSize) {
    throw Error(ErrorCode::SizeTooSmall,
                "shape size " + std::to_string(size) + " is below " + std::to_string(kMinShapeSize));
  }
  const double p = size;
  const double r = p / 2.0;
  switch (kind) {
    case ShapeKind::Square:
      return rasterize(size, size, [](double, double) { return true; });
    case ShapeKind::Circle:
      return rasterize(size, size, [r](double u, double v) { return u * u + v * v <= r * r; });
    case ShapeKind::Hexagon:
      return rasterize(size, size, [r](double u, double v) {
        return std::abs(v) <= r * kSqrt3 / 2.0 && kSqrt3 * std::abs(u) + std::abs(v) <= kSqrt3 * r;
      });
    case ShapeKind::Ellipse: {
      const double a = p / std::sqrt(2.0);
      const double b = a / 2.0;
      const int w = static_cast<int>(std::ceil(2.0 * a)) + 2;
      const int h = static_cast<int>(std::ceil(2.0 * b)) + 2;
      return rasterize(w, h, [a, b](double u, double v) { return (u / a) * (u / a) + (v / b) * (v / b) <= 1.0; });
    }
    case ShapeKind::Cross: {
      const double half_arm = p / 6.0;
      return rasterize(size, size, [half_arm](double u, double v) {
        return std::abs(u) <= half_arm || std::abs(v) <= half_arm;
      });
    }
    case ShapeKind::Bean: {
      constexpr double kSquash = 0.85;
      return rasterize(size, size, [r](double u, double v) {
        const double vs = v / kSquash;
        const double bite_v = vs + 0.8 * r;
        return u * u + vs * vs <= r * r && u * u + bite_v * bite_v > 0.36 * r * r;
      });
    }
    case ShapeKind::W: {
      // Wedge notches: two cut down from the top edge, one up from the bottom.
      const double half_w = 0.07 * p;
      const double depth = 0.85 * p;
      return rasterize(size, size, [=](double u, double v) {
        const double x = u + r;
        const double from_top = v + r;
        const double from_bottom = p - from_top;
        auto notched = [&](double center, double d) {
          return d < depth && std::abs(x - center) < half_w * (1.0 - d / depth);
        };
        return !notched(p / 4.0, from_top) && !notched(3.0 * p / 4.0, from_top) && !notched(p / 2.0, from_bottom);
      });
    }
    case ShapeKind::Split: {
      const double ax = 0.18 * p;
      const double ay = 0.5 * p;
      const double offset = r - ax;
      // The bridge is the pixel row straddling the center line.
      const int bridge_row = size / 2;
      const double bridge_v = bridge_row + 0.5 - r;
      return rasterize(size, size, [=](double u, double v) {
        const double ul = (u + offset) / ax;
        const double ur = (u - offset) / ax;
        const double vv = v / ay;
        if (ul * ul + vv * vv <= 1.0 || ur * ur + vv * vv <= 1.0) return true;
        return v == bridge_v && std::abs(u) <= offset;
      });
    }
    case ShapeKind::U: {
      const double inner = r - 0.12 * p;
      const double gap = 0.2 * p;
      return rasterize(size, size, [=](double u, double v) {
        const double d2 = u * u + v * v;
        if (d2 > r * r || d2 <= inner * inner) return false;
        return !(v < 0.0 && std::abs(u) < gap);
      });
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown shape kind");
}

Shape perturb_boundary(const Shape& shape, const NoiseSpec& spec) {
  if (spec.amplitude < 0.0 || spec.amplitude > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "noise amplitude must lie in [0, 1]");
  }
  if (spec.rounds < 1) {
    throw Error(ErrorCode::InvalidArgument, "noise needs at least one round");
  }
  if (shape.pixels.empty()) {
    throw Error(ErrorCode::EmptyInput, "cannot perturb an empty shape");
  }
  if (spec.amplitude == 0.0) return shape;

  const std::int32_t grow = spec.rounds + 1;
  PixelBox window = bounding_box(shape.pixels);
  window.x0 -= grow;
  window.y0 -= grow;
  window.x1 += grow;
  window.y1 += grow;
  PixelMask mask(window);
  for (const PixelCoord p : shape.pixels) mask.set(p.x, p.y);

  std::vector<PixelCoord> flips;
  for (int round = 0; round < spec.rounds; ++round) {
    flips.clear();
    for (std::int32_t y = window.y0 + 1; y < window.y1 - 1; ++y) {
      for (std::int32_t x = window.x0 + 1; x < window.x1 - 1; ++x) {
        const bool in = mask.contains(x, y);
        bool touches_other_side = false;
        for (const PixelCoord d : kFour) {
          if (mask.contains(x + d.x, y + d.y) != in) {
            touches_other_side = true;
            break;
          }
        }
        if (!touches_other_side) continue;
        // stream 0 decides removals, stream 1 additions
        if (counter_uniform(spec.seed, round, x, y, in ? 0 : 1) < spec.amplitude) flips.push_back({x, y});
      }
    }
    for (const PixelCoord p : flips) mask.set(p.x, p.y, !mask.contains(p.x, p.y));
  }

  std::vector<PixelCoord> kept = largest_component(mask);
  if (kept.empty()) {
    throw Error(ErrorCode::ShapeVanished, "boundary noise removed every pixel");
  }
  PixelMask result(window);
  for (const PixelCoord p : kept) result.set(p.x, p.y);
  fill_holes(result);

  std::vector<PixelCoord> pixels = result.pixels();
  for (PixelCoord& p : pixels) {
    p.x += spec.rounds;
    p.y += spec.rounds;
  }
  return shape_from_pixels(shape.label, std::move(pixels));
}

LabelMap shape_mask(const Shape& shape, int margin) {
  if (margin < 0) throw Error(ErrorCode::InvalidArgument, "negative margin");
  const PixelBox box = bounding_box(shape.pixels);
  LabelMap map(box.width() + 2 * margin, box.height() + 2 * margin, 0);
  for (const PixelCoord p : shape.pixels) {
    map.at(p.x - box.x0 + margin, p.y - box.y0 + margin) = 1;
  }
  return map;
}

LabelMap square_grid(int width, int height, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "square grid needs K >= 1");
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidArgument, "empty image");
  const double side = std::sqrt(static_cast<double>(width) * height / k);
  const int nx = std::clamp(static_cast<int>(std::lround(width / side)), 1, width);
  const int ny = std::clamp(static_cast<int>(std::lround(height / side)), 1, height);

  // Column/row index of each pixel: block i covers [floor(i*W/n), floor((i+1)*W/n)).
  auto cell_of = [](int n, int extent) {
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(extent));
    for (int i = 0; i < n; ++i) {
      const auto lo = static_cast<int>(static_cast<std::int64_t>(i) * extent / n);
      const auto hi = static_cast<int>(static_cast<std::int64_t>(i + 1) * extent / n);
      for (int v = lo; v < hi; ++v) idx[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(i);
    }
    return idx;
  };
  const auto col = cell_of(nx, width);
  const auto row = cell_of(ny, height);

  LabelMap map(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      map.at(x, y) = row[static_cast<std::size_t>(y)] * static_cast<std::uint32_t>(nx) + col[static_cast<std::size_t>(x)];
    }
  }
  return map;
}

LabelMap hex_grid(int width, int height, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "hex grid needs K >= 1");
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidArgument, "empty image");
  const double cell_area = static_cast<double>(width) * height / k;
  const double radius = std::sqrt(2.0 * cell_area / (3.0 * kSqrt3));
  const double step_x = kSqrt3 * radius;
  const double step_y = 1.5 * radius;
  const double ox = width / 2.0;
  const double oy = height / 2.0;

  auto center = [&](long i, long j) {
    const double shift = (j & 1) != 0 ? 0.5 * step_x : 0.0;
    return Point2{ox + static_cast<double>(i) * step_x + shift, oy + static_cast<double>(j) * step_y};
  };

  std::map<std::pair<long, long>, std::uint32_t> label_of;
  LabelMap map(width, height);
  for (int y = 0; y < height; ++y) {
    const double py = y + 0.5;
    const long j0 = std::lround((py - oy) / step_y);
    for (int x = 0; x < width; ++x) {
      const double px = x + 0.5;
      double best = std::numeric_limits<double>::infinity();
      std::pair<long, long> best_cell{0, 0};
      for (long j = j0 - 1; j <= j0 + 1; ++j) {
        const double shift = (j & 1) != 0 ? 0.5 * step_x : 0.0;
        const long i0 = std::lround((px - ox - shift) / step_x);
        for (long i = i0 - 1; i <= i0 + 1; ++i) {
          const Point2 c = center(i, j);
          const double d = (px - c.x) * (px - c.x) + (py - c.y) * (py - c.y);
          // strict improvement, or exact tie broken towards the smaller (j, i)
          if (d < best || (d == best && std::pair{j, i} < std::pair{best_cell.second, best_cell.first})) {
            best = d;
            best_cell = {i, j};
          }
        }
      }
      auto [it, inserted] = label_of.try_emplace(best_cell, static_cast<std::uint32_t>(label_of.size()));
      map.at(x, y) = it->second;
    }
  }
  return map;
}

LabelMap quadtree(const GrayImage& image, double variance_threshold, int min_block, int max_block) {
  if (image.width != image.height) {
    throw Error(ErrorCode::NonSquareImage, "quadtree needs a square image, got " + std::to_string(image.width) +
                                               "x" + std::to_string(image.height));
  }
  const int side = image.width;
  if (side < 1 || (side & (side - 1)) != 0) {
    throw Error(ErrorCode::NonPowerOfTwoSide, "quadtree side " + std::to_string(side) + " is not a power of two");
  }
  if (image.values.size() != static_cast<std::size_t>(side) * static_cast<std::size_t>(side)) {
    throw Error(ErrorCode::DimensionMismatch, "image buffer does not match its dimensions");
  }
  if (min_block < 1) throw Error(ErrorCode::InvalidArgument, "min_block must be >= 1");
  if (max_block <= 0) max_block = side;
  if (max_block < min_block) throw Error(ErrorCode::InvalidArgument, "max_block must be >= min_block");

  // Integral images of values and squared values.
  const std::size_t stride = static_cast<std::size_t>(side) + 1;
  std::vector<std::uint64_t> s1(stride * stride, 0), s2(stride * stride, 0);
  for (int y = 0; y < side; ++y) {
    std::uint64_t r1 = 0, r2 = 0;
    for (int x = 0; x < side; ++x) {
      const std::uint64_t v = image.at(x, y);
      r1 += v;
      r2 += v * v;
      const std::size_t i = (static_cast<std::size_t>(y) + 1) * stride + static_cast<std::size_t>(x) + 1;
      s1[i] = s1[i - stride] + r1;
      s2[i] = s2[i - stride] + r2;
    }
  }
  auto block_sum = [&](const std::vector<std::uint64_t>& t, int x, int y, int s) {
    const auto at = [&](int xx, int yy) { return t[static_cast<std::size_t>(yy) * stride + static_cast<std::size_t>(xx)]; };
    return at(x + s, y + s) - at(x, y + s) - at(x + s, y) + at(x, y);
  };
  auto block_variance = [&](int x, int y, int s) {
    const auto n = static_cast<unsigned __int128>(static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(s));
    const auto sum = static_cast<unsigned __int128>(block_sum(s1, x, y, s));
    const auto sum_sq = static_cast<unsigned __int128>(block_sum(s2, x, y, s));
    const unsigned __int128 num = n * sum_sq - sum * sum;
    const double nd = static_cast<double>(n);
    return static_cast<double>(num) / (nd * nd);
  };

  LabelMap map(side, side);
  std::uint32_t next_label = 0;
  std::function<void(int, int, int)> visit = [&](int x, int y, int s) {
    const bool split = s > max_block || (s > min_block && block_variance(x, y, s) > variance_threshold);
    if (split && s > 1) {
      const int h = s / 2;
      visit(x, y, h);
      visit(x + h, y, h);
      visit(x, y + h, h);
      visit(x + h, y + h, h);
      return;
    }
    const std::uint32_t label = next_label++;
    for (int yy = y; yy < y + s; ++yy) {
      for (int xx = x; xx < x + s; ++xx) map.at(xx, yy) = label;
    }
  };
  visit(0, 0, side);
  return map;
}

}  // namespace spreg
