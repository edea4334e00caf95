// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status if
// any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "spreg/core.hpp"
#include "spreg/geometry.hpp"
#include "spreg/graph.hpp"
#include "spreg/metrics.hpp"
#include "spreg/plot.hpp"
#include "spreg/study.hpp"
#include "spreg/synth.hpp"
#include "support/blobs.hpp"

using namespace spreg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

struct PaperRow {
  ShapeKind kind;
  double src, so, vxy, co;
  bool pinned;
};

// Smooth-shape reference values at size 100.
const std::vector<PaperRow> kPaperSmooth = {
    {ShapeKind::Square, 1.000, 1.000, 1.000, 1.000, true},
    {ShapeKind::Circle, 0.989, 0.989, 1.000, 1.000, true},
    {ShapeKind::Hexagon, 0.987, 0.989, 0.997, 1.000, true},
    {ShapeKind::Ellipse, 0.712, 0.988, 0.718, 0.997, true},
    {ShapeKind::Cross, 0.650, 0.781, 1.000, 0.833, false},
    {ShapeKind::Bean, 0.564, 0.800, 0.811, 0.868, false},
    {ShapeKind::W, 0.387, 0.841, 0.990, 0.465, false},
    {ShapeKind::Split, 0.369, 0.530, 0.888, 0.783, false},
    {ShapeKind::U, 0.233, 0.357, 0.942, 0.694, false},
};

struct GroupExtremes {
  double min_regular = 1e300, max_standard = -1e300, max_irregular = -1e300;
  double min_standard = 1e300, max_regular = -1e300;
};

GroupExtremes extremes(const std::vector<ShapeStudyRow>& rows, double ShapeStudyRow::*field) {
  GroupExtremes g;
  for (const ShapeStudyRow& r : rows) {
    const double v = r.*field;
    switch (group_of(r.kind)) {
      case ShapeGroup::Regular:
        g.min_regular = std::min(g.min_regular, v);
        g.max_regular = std::max(g.max_regular, v);
        break;
      case ShapeGroup::Standard:
        g.max_standard = std::max(g.max_standard, v);
        g.min_standard = std::min(g.min_standard, v);
        break;
      case ShapeGroup::Irregular:
        g.max_irregular = std::max(g.max_irregular, v);
        break;
    }
  }
  return g;
}

std::vector<ShapeStudyRow> table(double noise) {
  ShapeStudyConfig cfg;
  cfg.sizes = {100};
  cfg.noise = {noise};
  cfg.seeds = 20;
  cfg.rounds = 3;
  return run_shape_study(cfg);
}

Outcome square_perfection() {
  Outcome o;
  double worst = 0.0;
  for (int p : {1, 2, 3, 8, 17, 36, 100, 257}) {
    std::vector<PixelCoord> px;
    for (int y = 0; y < p; ++y) {
      for (int x = 0; x < p; ++x) px.push_back({x + 5, y + 3});
    }
    worst = std::max(worst, std::abs(shape_metrics(shape_from_pixels(1, px)).src_term - 1.0));
  }
  struct Grid {
    int w, h, k;
  };
  for (const Grid g : {Grid{320, 320, 400}, Grid{96, 64, 6}, Grid{100, 100, 25}, Grid{64, 48, 12}}) {
    worst = std::max(worst, std::abs(src(extract_superpixels(square_grid(g.w, g.h, g.k))) - 1.0));
  }
  o.require(worst <= 1e-12, "square SRC deviates from 1");
  o.note(fmt::format("max |SRC-1| = {:.3g}", worst));
  return o;
}

Outcome smooth_table() {
  Outcome o;
  const auto rows = table(0.0);
  for (const PaperRow& ref : kPaperSmooth) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const ShapeStudyRow& r) { return r.kind == ref.kind; });
    const std::string name(to_string(ref.kind));
    o.require(std::abs(it->src - ref.src) <= 0.05, name + " SRC");
    if (ref.pinned) {
      o.require(std::abs(it->solidity - ref.so) <= 0.05, name + " SO");
      o.require(std::abs(it->vxy - ref.vxy) <= 0.05, name + " Vxy");
      o.require(std::abs(it->contour_smoothness - ref.co) <= 0.05, name + " CO");
    }
    o.note(fmt::format("{} SRC {:.3f} (ref {:.3f})", name, it->src, ref.src));
  }
  const GroupExtremes g = extremes(rows, &ShapeStudyRow::src);
  o.require(g.min_regular > g.max_standard, "min(regular) > max(standard)");
  o.require(g.max_standard > g.max_irregular, "max(standard) > max(irregular)");
  o.note(fmt::format("groups {:.3f} > {:.3f} > {:.3f}", g.min_regular, g.max_standard, g.max_irregular));
  return o;
}

Outcome circularity_behaviour() {
  Outcome o;
  auto raw = [](ShapeKind k) { return shape_metrics(make_shape(k, 100)).isoperimetric_ratio; };
  const double circle = raw(ShapeKind::Circle), hex = raw(ShapeKind::Hexagon), ell = raw(ShapeKind::Ellipse);
  const double square = circularity(make_shape(ShapeKind::Square, 100));
  o.require(circle > hex && hex > ell && ell > raw(ShapeKind::Square), "C ordering Circle > Hexagon > Ellipse > Square");
  o.require(square >= 0.78 && square <= 0.88, "C(Square) in [0.78, 0.88]");
  o.note(fmt::format("unclamped C: Circle {:.3f} Hexagon {:.3f} Ellipse {:.3f} Square {:.3f}", circle, hex, ell,
                     square));
  return o;
}

Outcome scale_robustness() {
  Outcome o;
  std::vector<double> sq, disk_src, disk_c;
  for (int p : {16, 32, 64, 128, 256}) {
    sq.push_back(shape_metrics(make_shape(ShapeKind::Square, p)).src_term);
    const ShapeMetrics d = shape_metrics(make_shape(ShapeKind::Circle, p));
    disk_src.push_back(d.src_term);
    disk_c.push_back(d.isoperimetric_ratio);
  }
  o.require(stddev(sq) == 0.0, "stddev(SRC) of squares is 0");
  o.require(stddev(disk_src) < stddev(disk_c), "disk stddev(SRC) < stddev(C)");
  o.note(fmt::format("disk stddev SRC {:.4f} vs C {:.4f}", stddev(disk_src), stddev(disk_c)));
  const ShapeMetrics small = shape_metrics(make_shape(ShapeKind::Circle, 8));
  o.require(small.isoperimetric_ratio > 1.0 && small.circularity == 1.0, "clamping at p = 8");
  o.note(fmt::format("p=8 disk unclamped C {:.3f} -> {:.3f}", small.isoperimetric_ratio, small.circularity));
  return o;
}

Outcome noise_robustness() {
  Outcome o;
  const auto clean = table(0.0);
  const auto noisy = table(0.3);
  auto find = [](const std::vector<ShapeStudyRow>& rows, ShapeKind k) {
    return *std::find_if(rows.begin(), rows.end(), [&](const ShapeStudyRow& r) { return r.kind == k; });
  };
  const ShapeStudyRow s0 = find(clean, ShapeKind::Square), s1 = find(noisy, ShapeKind::Square);
  const double c_drop = (s0.circularity - s1.circularity) / s0.circularity;
  const double src_drop = (s0.src - s1.src) / s0.src;
  o.require(c_drop >= 1.3 * src_drop, "C drop >= 1.3 x SRC drop");
  o.note(fmt::format("Square C {:.3f}->{:.3f} ({:.0f}%), SRC {:.3f}->{:.3f} ({:.0f}%), ratio {:.2f}", s0.circularity,
                     s1.circularity, 100 * c_drop, s0.src, s1.src, 100 * src_drop, c_drop / src_drop));
  const GroupExtremes g = extremes(noisy, &ShapeStudyRow::src);
  o.require(g.min_regular > g.max_standard && g.max_standard > g.max_irregular, "noisy SRC group ordering");
  o.note(fmt::format("noisy SRC groups {:.3f} > {:.3f} > {:.3f}", g.min_regular, g.max_standard, g.max_irregular));
  const GroupExtremes c = extremes(noisy, &ShapeStudyRow::circularity);
  o.require(c.min_regular <= c.max_standard && c.min_standard <= c.max_regular, "noisy C ranges overlap");
  o.note(fmt::format("noisy C regular [{:.3f}, {:.3f}] standard [{:.3f}, {:.3f}]", c.min_regular, c.max_regular,
                     c.min_standard, c.max_standard));
  return o;
}

Outcome noise_monotonicity() {
  Outcome o;
  for (ShapeKind k : all_shape_kinds()) {
    if (group_of(k) != ShapeGroup::Regular) continue;
    std::string curve;
    double prev = 2.0;
    bool decreasing = true;
    for (double a : {0.0, 0.1, 0.2, 0.3, 0.4}) {
      const double v = study_shape(k, 100, a, 20, 3).src;
      decreasing = decreasing && v < prev;
      prev = v;
      curve += fmt::format(" {:.3f}", v);
    }
    o.require(decreasing, std::string(to_string(k)) + " strictly decreasing");
    o.note(fmt::format("{}:{}", to_string(k), curve));
  }
  return o;
}

GrayImage half_image(int side, int edge_x) {
  GrayImage img{side, side, std::vector<std::uint16_t>(static_cast<std::size_t>(side) * side, 0)};
  for (int y = 0; y < side; ++y) {
    for (int x = edge_x; x < side; ++x) img.values[static_cast<std::size_t>(y * side + x)] = 65535 / 2;
  }
  return img;
}

Outcome quadtree_criterion() {
  Outcome o;
  std::mt19937_64 rng(71);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int side = 1 << (3 + static_cast<int>(rng() % 5));
    GrayImage img{side, side, {}};
    for (int k = 0; k < side * side; ++k) img.values.push_back(static_cast<std::uint16_t>(rng() % 256));
    const double threshold = static_cast<double>(rng() % 6000);
    const Decomposition d = extract_superpixels(quadtree(img, threshold, 1 << (rng() % 3)));
    worst = std::max(worst, std::abs(src(d) - 1.0));
  }
  const Decomposition half = extract_superpixels(quadtree(half_image(256, 101), 0.0, 1));
  worst = std::max(worst, std::abs(src(half) - 1.0));
  o.require(worst <= 1e-12, "quadtree SRC == 1");

  const double cv_tree = edge_stats(adjacency_graph(half)).coefficient_of_variation;
  const auto k = static_cast<int>(half.shapes.size());
  const double cv_grid = edge_stats(adjacency_graph(extract_superpixels(square_grid(256, 256, k))))
                             .coefficient_of_variation;
  o.require(cv_tree > cv_grid, "quadtree edge CV > grid edge CV");
  o.note(fmt::format("max |SRC-1| {:.3g}; {} leaves, CV quadtree {:.3f} vs grid {:.3f}", worst, k, cv_tree, cv_grid));
  return o;
}

Outcome hexagon_parity() {
  Outcome o;
  const Decomposition h = extract_superpixels(hex_grid(960, 960, 36));
  const Decomposition s = extract_superpixels(square_grid(960, 960, 36));
  const Shape& hex = h.shapes[h.shape_at(480, 480)];
  const Shape& sq = s.shapes[s.shape_at(480, 480)];
  const ShapeMetrics hm = shape_metrics(hex), sm = shape_metrics(sq);
  const double diff = std::abs(sm.src_term - hm.src_term);
  o.require(std::abs(hm.src_term - 1.0) < 0.02 && std::abs(sm.src_term - 1.0) < 0.02, "|SRC - 1| < 0.02");
  o.require(diff < 0.02, "|SRC(square) - SRC(hexagon)| < 0.02");
  o.require(hm.circularity - sm.circularity > 0.08, "C(hexagon) - C(square) > 0.08");
  o.note(fmt::format("areas {} / {}; SRC hex {:.4f} square {:.4f} diff {:.4f}; C hex {:.3f} square {:.3f}", hex.area,
                     sq.area, hm.src_term, sm.src_term, diff, hm.circularity, sm.circularity));
  return o;
}

Outcome oracle_suites() {
  Outcome o;
  std::mt19937_64 rng(91);
  int hull_mismatch = 0;
  for (int i = 0; i < 200; ++i) {
    const auto blob = testing::random_blob(rng);
    const auto ref = testing::oracle_hull(blob);
    const HullStats st = hull_stats(shape_from_pixels(1, blob));
    if (st.hull_area_px != ref.area || st.hull_perimeter_px != ref.perimeter) ++hull_mismatch;
  }
  o.require(hull_mismatch == 0, "hull_stats vs half-plane oracle");

  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto blob = testing::random_blob(rng, 64, 64, 800);
    const Moments m = moments(blob);
    const auto ref = testing::naive_moments(blob);
    worst = std::max({worst, std::abs(m.barycenter.x - ref.mx), std::abs(m.barycenter.y - ref.my),
                      std::abs(m.sigma_x - ref.sx), std::abs(m.sigma_y - ref.sy)});
  }
  o.require(worst <= 1e-12, "moments vs two-pass oracle");

  int identity_failures = 0;
  for (int i = 0; i < 50; ++i) {
    const LabelMap m = testing::random_partition(rng, 20 + static_cast<int>(rng() % 40),
                                                 20 + static_cast<int>(rng() % 40), 1 + static_cast<int>(rng() % 20));
    const Decomposition d = extract_superpixels(m);
    if (undersegmentation_error(d, m) != 0.0 || boundary_recall(d, m) != 1.0) ++identity_failures;
  }
  o.require(identity_failures == 0, "UE(d,d) = 0 and BR(d,d) = 1");
  o.note(fmt::format("hull mismatches {}, moment error {:.3g}, identity failures {}", hull_mismatch, worst,
                     identity_failures));
  return o;
}

bool same_metrics(const ShapeMetrics& a, const ShapeMetrics& b) {
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12; };
  return close(a.circularity, b.circularity) && close(a.solidity, b.solidity) && close(a.vxy, b.vxy) &&
         close(a.contour_smoothness, b.contour_smoothness) && close(a.src_term, b.src_term);
}

bool partitions(const LabelMap& m) {
  const Decomposition d = extract_superpixels(m);
  std::size_t total = 0;
  for (const Shape& s : d.shapes) total += s.area;
  return total == m.size() &&
         std::none_of(d.shape_index.begin(), d.shape_index.end(),
                      [&](std::uint32_t i) { return i >= d.shapes.size(); });
}

Outcome property_suite() {
  Outcome o;
  std::mt19937_64 rng(101);
  int out_of_range = 0, translation = 0, rotation = 0;
  for (int i = 0; i < 100; ++i) {
    const auto blob = testing::random_blob(rng);
    const ShapeMetrics m = shape_metrics(shape_from_pixels(1, blob));
    for (double v : {m.circularity, m.solidity, m.vxy, m.contour_smoothness, m.src_term}) {
      if (!(v >= 0.0 && v <= 1.0)) ++out_of_range;
    }
    const int dx = static_cast<int>(rng() % 50), dy = static_cast<int>(rng() % 50);
    if (!same_metrics(m, shape_metrics(shape_from_pixels(1, testing::translated(blob, dx, dy))))) ++translation;
    if (!same_metrics(m, shape_metrics(shape_from_pixels(1, testing::rotated90(blob, 12))))) ++rotation;
  }
  o.require(out_of_range == 0, "metrics in [0,1]");
  o.require(translation == 0, "translation invariance");
  o.require(rotation == 0, "90-degree rotation invariance");

  bool all_partition = true;
  for (int k : {1, 7, 50, 400}) {
    all_partition = all_partition && partitions(square_grid(321, 481, k)) && partitions(hex_grid(321, 481, k));
  }
  GrayImage img{64, 64, {}};
  for (int i = 0; i < 64 * 64; ++i) img.values.push_back(static_cast<std::uint16_t>(rng() % 1000));
  all_partition = all_partition && partitions(quadtree(img, 50000.0, 2));
  for (ShapeKind kind : all_shape_kinds()) {
    all_partition = all_partition && partitions(shape_mask(make_shape(kind, 40)));
  }
  o.require(all_partition, "generator partition property");

  bool deterministic = true;
  for (ShapeKind kind : all_shape_kinds()) {
    const Shape s = make_shape(kind, 60);
    deterministic = deterministic && perturb_boundary(s, {0.3, 3, 17}).pixels == perturb_boundary(s, {0.3, 3, 17}).pixels;
  }
  const Decomposition d = extract_superpixels(hex_grid(200, 150, 30));
  deterministic = deterministic && graph_svg(d, adjacency_graph(d)) == graph_svg(d, adjacency_graph(d));
  const auto rows = run_shape_study({{ShapeKind::Circle}, {16, 32, 64}, {0.0}, 1, 3, 0});
  const auto series = size_sweep_series(rows);
  const Axes axes{"sweep", "size", "value"};
  deterministic = deterministic && render_plot_svg(series, axes) == render_plot_svg(series, axes);
  o.require(deterministic, "seeded noise and SVG determinism");
  o.note(fmt::format("range {} / translation {} / rotation {} failures", out_of_range, translation, rotation));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "square perfection", square_perfection},
      {2, "smooth-shape table at size 100", smooth_table},
      {3, "circularity ordering", circularity_behaviour},
      {4, "scale robustness", scale_robustness},
      {5, "noise robustness", noise_robustness},
      {6, "noise monotonicity", noise_monotonicity},
      {7, "quadtree SRC and edge dispersion", quadtree_criterion},
      {8, "hexagon parity", hexagon_parity},
      {9, "oracle suites", oracle_suites},
      {10, "property suite", property_suite},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
