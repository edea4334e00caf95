#pragma once

// Experiment drivers shared by the command-line tool and the test suites:
// reference-shape tables, size sweeps, seeded noise sweeps and single-image
// evaluation reports.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spreg/core.hpp"
#include "spreg/io.hpp"
#include "spreg/metrics.hpp"
#include "spreg/plot.hpp"
#include "spreg/synth.hpp"

namespace spreg {

/// Metrics of one reference shape at one size and noise level, averaged over
/// seeds (noise 0 is evaluated once).
struct ShapeStudyRow {
  ShapeKind kind = ShapeKind::Square;
  int size = 0;
  double noise = 0.0;
  int rounds = 0;
  int seeds = 0;
  double circularity = 0.0;
  double isoperimetric_ratio = 0.0;
  double src = 0.0;
  double solidity = 0.0;
  double vxy = 0.0;
  double contour_smoothness = 0.0;
  double circularity_stddev = 0.0;
  double src_stddev = 0.0;
};

struct ShapeStudyConfig {
  std::vector<ShapeKind> kinds;  // empty: all nine
  std::vector<int> sizes = {100};
  std::vector<double> noise = {0.0};
  int seeds = 20;
  int rounds = 3;
  std::uint64_t base_seed = 0;
};

/// Seeds base_seed, base_seed + 1, ... are shared across amplitudes.
ShapeStudyRow study_shape(ShapeKind kind, int size, double noise, int seeds, int rounds,
                          std::uint64_t base_seed = 0);

/// Rows ordered by kind, then size, then noise.
std::vector<ShapeStudyRow> run_shape_study(const ShapeStudyConfig& config);

std::string study_csv(std::span<const ShapeStudyRow> rows);

/// For each shape, C and SRC against size (noise-free rows only).
std::vector<Series> size_sweep_series(std::span<const ShapeStudyRow> rows);
/// For each shape, C and SRC against noise amplitude.
std::vector<Series> noise_sweep_series(std::span<const ShapeStudyRow> rows);

/// Full evaluation of one label map. Checks that areas partition the image
/// and that every averaged metric lies in [0, 1], throwing
/// InvariantViolation otherwise.
ReportRecord evaluate_label_map(const std::string& input_id, const LabelMap& labels,
                                std::span<const LabelMap> ground_truths, int eps = kDefaultBoundaryTolerance);

}  // namespace spreg
