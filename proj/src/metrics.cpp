#include "spreg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "spreg/error.hpp"

namespace spreg {

namespace {

// Neumaier compensated sum, accumulated in a fixed order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      compensation_ += (sum_ - t) + v;
    } else {
      compensation_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

void require_same_extent(const Decomposition& decomp, const LabelMap& gt) {
  if (gt.width() != decomp.source.width() || gt.height() != decomp.source.height()) {
    throw Error(ErrorCode::DimensionMismatch,
                "ground truth is " + std::to_string(gt.width()) + "x" + std::to_string(gt.height()) +
                    ", decomposition is " + std::to_string(decomp.source.width()) + "x" +
                    std::to_string(decomp.source.height()));
  }
}

LabelMap shape_index_map(const Decomposition& decomp) {
  return LabelMap(decomp.source.width(), decomp.source.height(),
                  std::vector<std::uint32_t>(decomp.shape_index));
}

}  // namespace

double isoperimetric_ratio(const Shape& shape) {
  const auto perimeter = static_cast<double>(shape.boundary.size());
  return 4.0 * std::numbers::pi * static_cast<double>(shape.area) / (perimeter * perimeter);
}

double circularity(const Shape& shape) { return std::min(1.0, isoperimetric_ratio(shape)); }

double solidity(const Shape& shape, const HullStats& hull) {
  return static_cast<double>(shape.area) / static_cast<double>(hull.hull_area_px);
}

double vxy(const Shape& shape) {
  const double lo = std::min(shape.sigma_x, shape.sigma_y);
  const double hi = std::max(shape.sigma_x, shape.sigma_y);
  if (hi == 0.0) return 1.0;  // single pixel: no preferred direction
  return std::sqrt(lo / hi);
}

double contour_smoothness(const Shape& shape, const HullStats& hull) {
  return std::min(1.0, static_cast<double>(hull.hull_perimeter_px) /
                           static_cast<double>(shape.boundary.size()));
}

ShapeMetrics shape_metrics(const Shape& shape) {
  const HullStats hull = hull_stats(shape);
  ShapeMetrics m;
  m.isoperimetric_ratio = isoperimetric_ratio(shape);
  m.circularity = std::min(1.0, m.isoperimetric_ratio);
  m.solidity = solidity(shape, hull);
  m.vxy = vxy(shape);
  m.contour_smoothness = contour_smoothness(shape, hull);
  m.src_term = m.solidity * m.vxy * m.contour_smoothness;
  return m;
}

std::vector<ShapeMetrics> shape_metrics(const Decomposition& decomp) {
  std::vector<ShapeMetrics> out;
  out.reserve(decomp.shapes.size());
  for (const Shape& s : decomp.shapes) out.push_back(shape_metrics(s));
  return out;
}

DecompositionMetrics evaluate(const Decomposition& decomp, std::span<const ShapeMetrics> per_shape) {
  if (per_shape.size() != decomp.shapes.size()) {
    throw Error(ErrorCode::InvalidArgument, "per-shape metrics do not match the decomposition");
  }
  CompensatedSum src, c, so, v, co;
  for (std::size_t k = 0; k < per_shape.size(); ++k) {
    const auto area = static_cast<double>(decomp.shapes[k].area);
    src.add(area * per_shape[k].src_term);
    c.add(area * per_shape[k].circularity);
    so.add(area * per_shape[k].solidity);
    v.add(area * per_shape[k].vxy);
    co.add(area * per_shape[k].contour_smoothness);
  }
  const auto total = static_cast<double>(decomp.image_area);
  DecompositionMetrics m;
  m.src = src.value() / total;
  m.circularity_mean = c.value() / total;
  m.solidity_mean = so.value() / total;
  m.vxy_mean = v.value() / total;
  m.contour_smoothness_mean = co.value() / total;
  m.n_superpixels = decomp.shapes.size();
  return m;
}

DecompositionMetrics evaluate(const Decomposition& decomp) {
  const std::vector<ShapeMetrics> per_shape = shape_metrics(decomp);
  return evaluate(decomp, per_shape);
}

double src(const Decomposition& decomp) { return evaluate(decomp).src; }

double undersegmentation_error(const Decomposition& decomp, const LabelMap& ground_truth) {
  require_same_extent(decomp, ground_truth);
  // overlap[gt label][shape index] = |S ∩ G|
  std::unordered_map<std::uint32_t, std::unordered_map<std::uint32_t, std::size_t>> overlap;
  const auto gt = ground_truth.labels();
  for (std::size_t i = 0; i < gt.size(); ++i) {
    ++overlap[gt[i]][decomp.shape_index[i]];
  }
  std::size_t charged = 0;
  for (const auto& [gt_label, per_shape] : overlap) {
    for (const auto& [shape_id, inside] : per_shape) {
      const std::size_t outside = decomp.shapes[shape_id].area - inside;
      charged += std::min(inside, outside);
    }
  }
  return static_cast<double>(charged) / static_cast<double>(decomp.image_area);
}

std::vector<std::uint8_t> label_boundary_mask(const LabelMap& map) {
  const std::int32_t w = map.width();
  const std::int32_t h = map.height();
  std::vector<std::uint8_t> mask(map.size(), 0);
  for (std::int32_t y = 0; y < h; ++y) {
    for (std::int32_t x = 0; x < w; ++x) {
      const std::uint32_t l = map.at(x, y);
      const bool left = x > 0 && map.at(x - 1, y) != l;
      const bool top = y > 0 && map.at(x, y - 1) != l;
      if (left || top) mask[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] = 1;
    }
  }
  return mask;
}

double boundary_recall(const Decomposition& decomp, const LabelMap& ground_truth, int eps) {
  require_same_extent(decomp, ground_truth);
  if (eps < 0) {
    throw Error(ErrorCode::InvalidArgument, "boundary tolerance must be non-negative");
  }
  const std::int32_t w = decomp.source.width();
  const std::int32_t h = decomp.source.height();
  const std::vector<std::uint8_t> gt_mask = label_boundary_mask(ground_truth);
  const std::vector<std::uint8_t> sp_mask = label_boundary_mask(shape_index_map(decomp));

  // Summed-area table of the superpixel boundary mask answers "any boundary
  // pixel in this window" in O(1).
  const std::size_t stride = static_cast<std::size_t>(w) + 1;
  std::vector<std::uint32_t> table(stride * (static_cast<std::size_t>(h) + 1), 0);
  for (std::int32_t y = 0; y < h; ++y) {
    std::uint32_t row = 0;
    for (std::int32_t x = 0; x < w; ++x) {
      row += sp_mask[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)];
      table[(static_cast<std::size_t>(y) + 1) * stride + static_cast<std::size_t>(x) + 1] =
          table[static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x) + 1] + row;
    }
  }
  auto window_sum = [&](std::int32_t x0, std::int32_t y0, std::int32_t x1, std::int32_t y1) {
    // inclusive-exclusive [x0, x1) x [y0, y1)
    const auto at = [&](std::int32_t x, std::int32_t y) {
      return static_cast<std::int64_t>(table[static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x)]);
    };
    return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
  };

  std::size_t total = 0;
  std::size_t hit = 0;
  for (std::int32_t y = 0; y < h; ++y) {
    for (std::int32_t x = 0; x < w; ++x) {
      if (gt_mask[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] == 0) continue;
      ++total;
      const std::int32_t x0 = std::max(0, x - eps);
      const std::int32_t y0 = std::max(0, y - eps);
      const std::int32_t x1 = std::min(w, x + eps + 1);
      const std::int32_t y1 = std::min(h, y + eps + 1);
      if (window_sum(x0, y0, x1, y1) > 0) ++hit;
    }
  }
  if (total == 0) return 1.0;
  return static_cast<double>(hit) / static_cast<double>(total);
}

void add_ground_truth_scores(DecompositionMetrics& metrics, const Decomposition& decomp,
                             std::span<const LabelMap> ground_truths, int eps) {
  if (ground_truths.empty()) {
    metrics.ue.reset();
    metrics.br.reset();
    return;
  }
  CompensatedSum ue, br;
  for (const LabelMap& gt : ground_truths) {
    ue.add(undersegmentation_error(decomp, gt));
    br.add(boundary_recall(decomp, gt, eps));
  }
  const auto n = static_cast<double>(ground_truths.size());
  metrics.ue = ue.value() / n;
  metrics.br = br.value() / n;
}

}  // namespace spreg
