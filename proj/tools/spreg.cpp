// spreg: command-line front end for the shape-regularity library.
//
//   spreg eval   --labels a.pgm [--gt g1.pgm ...] [--eps 2] --out report.csv
//   spreg synth  shape|grid|quadtree ...
//   spreg study  shapes|noise ...
//   spreg graph  --labels a.pgm --out overlay.svg [--stats stats.csv]
//
// Exit status: 0 success, 2 bad input, 3 internal invariant violation.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "spreg/error.hpp"
#include "spreg/graph.hpp"
#include "spreg/io.hpp"
#include "spreg/plot.hpp"
#include "spreg/study.hpp"
#include "spreg/synth.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

spreg::ShapeKind kind_or_throw(const std::string& name) {
  const auto kind = spreg::parse_shape_kind(name);
  if (!kind) throw spreg::Error(spreg::ErrorCode::InvalidArgument, "unknown shape kind '" + name + "'");
  return *kind;
}

std::string shape_kind_names() {
  std::string out;
  for (spreg::ShapeKind k : spreg::all_shape_kinds()) {
    if (!out.empty()) out += ", ";
    out += spreg::to_string(k);
  }
  return out;
}

struct EvalArgs {
  std::vector<std::string> labels;
  std::vector<std::string> gts;
  int eps = spreg::kDefaultBoundaryTolerance;
  std::string out;
};

void run_eval(const EvalArgs& a) {
  std::vector<spreg::LabelMap> gts;
  gts.reserve(a.gts.size());
  for (const std::string& p : a.gts) gts.push_back(spreg::load_label_map(p));
  std::vector<spreg::ReportRecord> records;
  for (const std::string& p : a.labels) {
    records.push_back(spreg::evaluate_label_map(p, spreg::load_label_map(p), gts, a.eps));
  }
  spreg::write_report(records, a.out);
}

struct SynthShapeArgs {
  std::string kind;
  int size = 100;
  double noise = 0.0;
  int rounds = 3;
  std::uint64_t seed = 0;
  int margin = 2;
  std::string out;
};

void run_synth_shape(const SynthShapeArgs& a) {
  spreg::Shape s = spreg::make_shape(kind_or_throw(a.kind), a.size);
  if (a.noise > 0.0) s = spreg::perturb_boundary(s, {a.noise, a.rounds, a.seed});
  spreg::save_label_map(spreg::shape_mask(s, a.margin), a.out);
}

struct SynthGridArgs {
  std::string type = "square";
  int width = 0;
  int height = 0;
  int k = 0;
  std::string out;
};

void run_synth_grid(const SynthGridArgs& a) {
  const spreg::LabelMap m = a.type == "hex" ? spreg::hex_grid(a.width, a.height, a.k)
                                            : spreg::square_grid(a.width, a.height, a.k);
  spreg::save_label_map(m, a.out);
}

struct SynthQuadtreeArgs {
  std::string image;
  double threshold = 0.0;
  int min_block = 1;
  int max_block = 0;
  std::string out;
};

void run_synth_quadtree(const SynthQuadtreeArgs& a) {
  const spreg::GrayImage img = spreg::load_gray_image(a.image);
  spreg::save_label_map(spreg::quadtree(img, a.threshold, a.min_block, a.max_block), a.out);
}

struct StudyArgs {
  std::vector<std::string> kinds;
  std::string kind = "Square";
  int size = 100;
  std::vector<int> sizes = {100};
  std::vector<double> noise = {0.0};
  std::vector<double> amplitudes = {0.0, 0.1, 0.2, 0.3, 0.4};
  int seeds = 20;
  int rounds = 3;
  std::uint64_t seed = 0;
  std::string out;
  std::string plot;
};

void run_study_shapes(const StudyArgs& a) {
  spreg::ShapeStudyConfig cfg;
  for (const std::string& k : a.kinds) cfg.kinds.push_back(kind_or_throw(k));
  cfg.sizes = a.sizes;
  cfg.noise = a.noise;
  cfg.seeds = a.seeds;
  cfg.rounds = a.rounds;
  cfg.base_seed = a.seed;
  const auto rows = spreg::run_shape_study(cfg);
  spreg::write_text_file(a.out, spreg::study_csv(rows));
  if (!a.plot.empty()) {
    const auto series = spreg::size_sweep_series(rows);
    spreg::emit_plot(series, {"C and SRC against shape size", "size (px)", "value"}, a.plot);
  }
}

void run_study_noise(const StudyArgs& a) {
  spreg::ShapeStudyConfig cfg;
  cfg.kinds = {kind_or_throw(a.kind)};
  cfg.sizes = {a.size};
  cfg.noise = a.amplitudes;
  cfg.seeds = a.seeds;
  cfg.rounds = a.rounds;
  cfg.base_seed = a.seed;
  const auto rows = spreg::run_shape_study(cfg);
  spreg::write_text_file(a.out, spreg::study_csv(rows));
  if (!a.plot.empty()) {
    const auto series = spreg::noise_sweep_series(rows);
    spreg::emit_plot(series, {"C and SRC against boundary noise", "noise amplitude", "value"}, a.plot);
  }
}

struct GraphArgs {
  std::string labels;
  std::string out;
  std::string stats;
  std::string edges;
};

void run_graph(const GraphArgs& a) {
  const spreg::Decomposition d = spreg::extract_superpixels(spreg::load_label_map(a.labels));
  const spreg::AdjacencyGraph g = spreg::adjacency_graph(d);
  spreg::write_text_file(a.out, spreg::graph_svg(d, g));
  if (!a.edges.empty()) spreg::write_text_file(a.edges, spreg::edge_list_text(g));
  if (!a.stats.empty()) {
    const spreg::EdgeStats st = spreg::edge_stats(g);
    spreg::write_text_file(
        a.stats, fmt::format("n_nodes,n_edges,mean_length,stddev_length,coefficient_of_variation,min_length,"
                             "max_length\n{},{},{},{},{},{},{}\n",
                             g.nodes.size(), st.n_edges, spreg::format_number(st.mean_length),
                             spreg::format_number(st.stddev_length),
                             spreg::format_number(st.coefficient_of_variation), spreg::format_number(st.min_length),
                             spreg::format_number(st.max_length)));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape regularity metrics for superpixel decompositions"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate label maps and write a report");
  eval_cmd->add_option("--labels", eval.labels, "Label map(s): .pgm, .png or .csv")->required();
  eval_cmd->add_option("--gt", eval.gts, "Ground-truth segmentation(s); UE/BR are averaged over them");
  eval_cmd->add_option("--eps", eval.eps, "Boundary recall tolerance in pixels")->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--out", eval.out, "Report path (.csv or .json)")->required();

  auto* synth_cmd = app.add_subcommand("synth", "Generate shapes and decompositions");
  synth_cmd->require_subcommand(1);

  SynthShapeArgs shape;
  auto* shape_cmd = synth_cmd->add_subcommand("shape", "Binary mask of a reference shape");
  shape_cmd->add_option("--kind", shape.kind, "One of: " + shape_kind_names())->required();
  shape_cmd->add_option("--size", shape.size, "Shape size p in pixels");
  shape_cmd->add_option("--noise", shape.noise, "Boundary flip probability")->check(CLI::Range(0.0, 1.0));
  shape_cmd->add_option("--rounds", shape.rounds, "Noise rounds");
  shape_cmd->add_option("--seed", shape.seed, "Noise seed");
  shape_cmd->add_option("--margin", shape.margin, "Background margin in pixels");
  shape_cmd->add_option("--out", shape.out, "Output label map")->required();

  SynthGridArgs grid;
  auto* grid_cmd = synth_cmd->add_subcommand("grid", "Square or hexagonal tiling");
  grid_cmd->add_option("--type", grid.type)->check(CLI::IsMember({"square", "hex"}));
  grid_cmd->add_option("--width", grid.width)->required();
  grid_cmd->add_option("--height", grid.height)->required();
  grid_cmd->add_option("--k", grid.k, "Target number of cells")->required();
  grid_cmd->add_option("--out", grid.out)->required();

  SynthQuadtreeArgs qt;
  auto* qt_cmd = synth_cmd->add_subcommand("quadtree", "Variance-driven quadtree of a square image");
  qt_cmd->add_option("--image", qt.image, "Square, power-of-two grayscale PGM or PNG")->required();
  qt_cmd->add_option("--threshold", qt.threshold, "Split when block variance exceeds this")->required();
  qt_cmd->add_option("--min-block", qt.min_block, "Smallest block side")->required();
  qt_cmd->add_option("--max-block", qt.max_block, "Largest block side (0: unbounded)");
  qt_cmd->add_option("--out", qt.out)->required();

  auto* study_cmd = app.add_subcommand("study", "Reference-shape experiments");
  study_cmd->require_subcommand(1);

  StudyArgs study;
  auto* shapes_cmd = study_cmd->add_subcommand("shapes", "Metric table over shapes, sizes and noise levels");
  shapes_cmd->add_option("--kinds", study.kinds, "Subset of shapes (default: all)")->delimiter(',');
  shapes_cmd->add_option("--sizes", study.sizes, "Comma-separated sizes")->delimiter(',');
  shapes_cmd->add_option("--noise", study.noise, "Comma-separated noise amplitudes")->delimiter(',');
  shapes_cmd->add_option("--seeds", study.seeds, "Seeds per noisy configuration")->check(CLI::PositiveNumber);
  shapes_cmd->add_option("--rounds", study.rounds);
  shapes_cmd->add_option("--seed", study.seed, "First seed");
  shapes_cmd->add_option("--out", study.out, "CSV table")->required();
  shapes_cmd->add_option("--plot", study.plot, "Optional SVG of C and SRC against size");

  auto* noise_cmd = study_cmd->add_subcommand("noise", "Robustness curve of one shape");
  noise_cmd->add_option("--kind", study.kind)->required();
  noise_cmd->add_option("--size", study.size);
  noise_cmd->add_option("--amplitudes", study.amplitudes)->delimiter(',');
  noise_cmd->add_option("--seeds", study.seeds)->check(CLI::PositiveNumber);
  noise_cmd->add_option("--rounds", study.rounds);
  noise_cmd->add_option("--seed", study.seed, "First seed");
  noise_cmd->add_option("--out", study.out, "CSV table")->required();
  noise_cmd->add_option("--plot", study.plot, "Optional SVG of C and SRC against amplitude");

  GraphArgs graph;
  auto* graph_cmd = app.add_subcommand("graph", "Adjacency graph overlay and edge statistics");
  graph_cmd->add_option("--labels", graph.labels)->required();
  graph_cmd->add_option("--out", graph.out, "SVG overlay")->required();
  graph_cmd->add_option("--stats", graph.stats, "Edge-length statistics CSV");
  graph_cmd->add_option("--edges", graph.edges, "Edge list: label_a label_b length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*eval_cmd) {
      run_eval(eval);
    } else if (*shape_cmd) {
      run_synth_shape(shape);
    } else if (*grid_cmd) {
      run_synth_grid(grid);
    } else if (*qt_cmd) {
      run_synth_quadtree(qt);
    } else if (*shapes_cmd) {
      run_study_shapes(study);
    } else if (*noise_cmd) {
      run_study_noise(study);
    } else if (*graph_cmd) {
      run_graph(graph);
    }
  } catch (const spreg::Error& e) {
    std::fprintf(stderr, "spreg: %s\n", e.what());
    return e.code() == spreg::ErrorCode::InvariantViolation ? kExitInvariant : kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "spreg: internal error: %s\n", e.what());
    return kExitInvariant;
  }
  return 0;
}
