#pragma once

// Shape regularity measures.
//
//   C(S)    = 4*pi*|S| / |P(S)|^2, thresholded at 1
//   SO(S)   = |S| / |CH(S)|
//   Vxy(S)  = sqrt(min(sx, sy) / max(sx, sy))
//   CO(S)   = |P(CH(S))| / |P(S)|, thresholded at 1
//   SRC     = sum_k |S_k|/|I| * SO(S_k) * Vxy(S_k) * CO(S_k)
//
// |P(.)| is the count of inner 4-boundary pixels (see core.hpp) and CH the
// rasterized corner hull (see geometry.hpp).
//
// Undersegmentation error, min(in, out) variant:
//
//   UE = 1/|I| * sum_{G in GT} sum_{S : S∩G != {}} min(|S ∩ G|, |S \ G|)
//
// Every superpixel straddling several ground-truth regions is charged once
// per region it touches. Other UE definitions in the literature (leakage
// relative to the best-overlap region, the thresholded "corrected" UE)
// produce different numbers on the same input.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spreg/core.hpp"
#include "spreg/geometry.hpp"

namespace spreg {

struct ShapeMetrics {
  double isoperimetric_ratio = 0.0;  // unthresholded 4*pi*|S|/|P(S)|^2, may exceed 1
  double circularity = 0.0;
  double solidity = 0.0;
  double vxy = 0.0;
  double contour_smoothness = 0.0;
  double src_term = 0.0;
};

struct DecompositionMetrics {
  double src = 0.0;
  double circularity_mean = 0.0;  // area-weighted
  double solidity_mean = 0.0;     // area-weighted
  double vxy_mean = 0.0;          // area-weighted
  double contour_smoothness_mean = 0.0;  // area-weighted
  std::optional<double> ue;
  std::optional<double> br;
  std::size_t n_superpixels = 0;
};

double isoperimetric_ratio(const Shape& shape);
double circularity(const Shape& shape);
double solidity(const Shape& shape, const HullStats& hull);
double vxy(const Shape& shape);
double contour_smoothness(const Shape& shape, const HullStats& hull);

ShapeMetrics shape_metrics(const Shape& shape);

/// Per-shape metrics for every shape, in decomposition order.
std::vector<ShapeMetrics> shape_metrics(const Decomposition& decomp);

/// Area-weighted SRC and component means. UE/BR are left empty.
DecompositionMetrics evaluate(const Decomposition& decomp);
DecompositionMetrics evaluate(const Decomposition& decomp, std::span<const ShapeMetrics> per_shape);

double src(const Decomposition& decomp);

double undersegmentation_error(const Decomposition& decomp, const LabelMap& ground_truth);

inline constexpr int kDefaultBoundaryTolerance = 2;

/// Label-map boundary: pixel (x, y) is marked when its left or top neighbour
/// carries a different label, giving a one-pixel-thin contour.
std::vector<std::uint8_t> label_boundary_mask(const LabelMap& map);

/// Fraction of ground-truth boundary pixels with a decomposition boundary
/// pixel within Chebyshev distance `eps`. Returns 1 when the ground truth has
/// no internal boundary.
double boundary_recall(const Decomposition& decomp, const LabelMap& ground_truth,
                       int eps = kDefaultBoundaryTolerance);

/// Averages UE and BR over several annotators and stores them in `metrics`.
void add_ground_truth_scores(DecompositionMetrics& metrics, const Decomposition& decomp,
                             std::span<const LabelMap> ground_truths,
                             int eps = kDefaultBoundaryTolerance);

}  // namespace spreg
