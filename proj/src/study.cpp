#include "spreg/study.hpp"

#include <cmath>

#include <fmt/format.h>

#include "spreg/error.hpp"

namespace spreg {

namespace {

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  int n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return n > 0 ? sum / n : 0.0; }
  double stddev() const {
    if (n == 0) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / n - m * m));
  }
};

void check_unit(double v, const char* name, const std::string& id) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::InvariantViolation, fmt::format("{}: {} = {} outside [0, 1]", id, name, v));
  }
}

}  // namespace

ShapeStudyRow study_shape(ShapeKind kind, int size, double noise, int seeds, int rounds, std::uint64_t base_seed) {
  if (seeds < 1) throw Error(ErrorCode::InvalidArgument, "at least one seed is required");
  const Shape clean = make_shape(kind, size);
  const int runs = noise == 0.0 ? 1 : seeds;
  Accumulator c, raw, src, so, v, co;
  for (int i = 0; i < runs; ++i) {
    const Shape s =
        noise == 0.0 ? clean : perturb_boundary(clean, {noise, rounds, base_seed + static_cast<std::uint64_t>(i)});
    const ShapeMetrics m = shape_metrics(s);
    c.add(m.circularity);
    raw.add(m.isoperimetric_ratio);
    src.add(m.src_term);
    so.add(m.solidity);
    v.add(m.vxy);
    co.add(m.contour_smoothness);
  }
  ShapeStudyRow row;
  row.kind = kind;
  row.size = size;
  row.noise = noise;
  row.rounds = noise == 0.0 ? 0 : rounds;
  row.seeds = runs;
  row.circularity = c.mean();
  row.isoperimetric_ratio = raw.mean();
  row.src = src.mean();
  row.solidity = so.mean();
  row.vxy = v.mean();
  row.contour_smoothness = co.mean();
  row.circularity_stddev = c.stddev();
  row.src_stddev = src.stddev();
  return row;
}

std::vector<ShapeStudyRow> run_shape_study(const ShapeStudyConfig& config) {
  std::vector<ShapeKind> kinds = config.kinds;
  if (kinds.empty()) kinds.assign(all_shape_kinds().begin(), all_shape_kinds().end());
  std::vector<ShapeStudyRow> rows;
  for (ShapeKind kind : kinds) {
    for (int size : config.sizes) {
      for (double noise : config.noise) {
        rows.push_back(study_shape(kind, size, noise, config.seeds, config.rounds, config.base_seed));
      }
    }
  }
  return rows;
}

std::string study_csv(std::span<const ShapeStudyRow> rows) {
  std::string out =
      "shape,group,size,noise,rounds,seeds,C,C_raw,SRC,SO,Vxy,CO,C_stddev,SRC_stddev\n";
  for (const ShapeStudyRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.kind), to_string(group_of(r.kind)),
                       r.size, format_number(r.noise), r.rounds, r.seeds, format_number(r.circularity),
                       format_number(r.isoperimetric_ratio), format_number(r.src), format_number(r.solidity),
                       format_number(r.vxy), format_number(r.contour_smoothness),
                       format_number(r.circularity_stddev), format_number(r.src_stddev));
  }
  return out;
}

namespace {

std::vector<Series> sweep(std::span<const ShapeStudyRow> rows, bool by_size) {
  std::vector<Series> out;
  for (ShapeKind kind : all_shape_kinds()) {
    Series c{fmt::format("{} C", to_string(kind)), {}};
    Series s{fmt::format("{} SRC", to_string(kind)), {}};
    for (const ShapeStudyRow& r : rows) {
      if (r.kind != kind) continue;
      if (by_size && r.noise != 0.0) continue;
      const double x = by_size ? static_cast<double>(r.size) : r.noise;
      c.points.push_back({x, r.circularity});
      s.points.push_back({x, r.src});
    }
    if (c.points.empty()) continue;
    out.push_back(std::move(c));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<Series> size_sweep_series(std::span<const ShapeStudyRow> rows) { return sweep(rows, true); }

std::vector<Series> noise_sweep_series(std::span<const ShapeStudyRow> rows) { return sweep(rows, false); }

ReportRecord evaluate_label_map(const std::string& input_id, const LabelMap& labels,
                                std::span<const LabelMap> ground_truths, int eps) {
  const Decomposition decomp = extract_superpixels(labels);
  std::size_t covered = 0;
  for (const Shape& s : decomp.shapes) covered += s.area;
  if (covered != decomp.image_area) {
    throw Error(ErrorCode::InvariantViolation,
                fmt::format("{}: shapes cover {} of {} pixels", input_id, covered, decomp.image_area));
  }
  DecompositionMetrics m = evaluate(decomp);
  add_ground_truth_scores(m, decomp, ground_truths, eps);

  check_unit(m.src, "SRC", input_id);
  check_unit(m.circularity_mean, "C", input_id);
  check_unit(m.solidity_mean, "SO", input_id);
  check_unit(m.vxy_mean, "Vxy", input_id);
  check_unit(m.contour_smoothness_mean, "CO", input_id);
  if (m.br) check_unit(*m.br, "BR", input_id);
  if (m.ue && !(*m.ue >= 0.0)) {
    throw Error(ErrorCode::InvariantViolation, fmt::format("{}: negative UE", input_id));
  }

  ReportRecord r;
  r.input_id = input_id;
  r.n_superpixels = m.n_superpixels;
  r.circularity_mean = m.circularity_mean;
  r.src = m.src;
  r.solidity_mean = m.solidity_mean;
  r.vxy_mean = m.vxy_mean;
  r.contour_smoothness_mean = m.contour_smoothness_mean;
  r.ue = m.ue;
  r.br = m.br;
  r.eps = eps;
  r.n_ground_truths = ground_truths.size();
  return r;
}

}  // namespace spreg
