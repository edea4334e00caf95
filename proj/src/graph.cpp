#include "spreg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "spreg/error.hpp"

namespace spreg {

AdjacencyGraph adjacency_graph(const Decomposition& decomp) {
  AdjacencyGraph graph;
  graph.nodes.reserve(decomp.shapes.size());
  for (const Shape& s : decomp.shapes) {
    graph.nodes.push_back({s.label, s.barycenter, s.area});
  }

  const std::int32_t w = decomp.source.width();
  const std::int32_t h = decomp.source.height();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  auto note = [&](std::uint32_t a, std::uint32_t b) {
    if (a != b) pairs.emplace_back(std::min(a, b), std::max(a, b));
  };
  for (std::int32_t y = 0; y < h; ++y) {
    for (std::int32_t x = 0; x < w; ++x) {
      const std::uint32_t s = decomp.shape_at(x, y);
      if (x + 1 < w) note(s, decomp.shape_at(x + 1, y));
      if (y + 1 < h) note(s, decomp.shape_at(x, y + 1));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  graph.edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    const Point2 pa = graph.nodes[a].position;
    const Point2 pb = graph.nodes[b].position;
    GraphEdge e;
    e.a = a;
    e.b = b;
    e.length = std::hypot(pa.x - pb.x, pa.y - pb.y);
    e.zero_length = e.length == 0.0;
    graph.edges.push_back(e);
  }
  return graph;
}

EdgeStats edge_stats(const AdjacencyGraph& graph) {
  if (graph.edges.empty()) {
    throw Error(ErrorCode::NoEdges, "edge statistics need at least one edge");
  }
  EdgeStats st;
  st.n_edges = graph.edges.size();
  st.min_length = graph.edges.front().length;
  st.max_length = graph.edges.front().length;
  double sum = 0.0;
  for (const GraphEdge& e : graph.edges) {
    sum += e.length;
    st.min_length = std::min(st.min_length, e.length);
    st.max_length = std::max(st.max_length, e.length);
  }
  const auto n = static_cast<double>(st.n_edges);
  st.mean_length = sum / n;
  double sq = 0.0;
  for (const GraphEdge& e : graph.edges) {
    const double d = e.length - st.mean_length;
    sq += d * d;
  }
  st.stddev_length = std::sqrt(sq / n);
  st.coefficient_of_variation = st.mean_length > 0.0 ? st.stddev_length / st.mean_length : 0.0;
  return st;
}

std::string edge_list_text(const AdjacencyGraph& graph) {
  std::string out;
  for (const GraphEdge& e : graph.edges) {
    out += fmt::format("{} {} {}\n", graph.nodes[e.a].label, graph.nodes[e.b].label, e.length);
  }
  return out;
}

std::string graph_svg(const Decomposition& decomp, const AdjacencyGraph& graph) {
  const std::int32_t w = decomp.source.width();
  const std::int32_t h = decomp.source.height();
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
      w, h);

  // Contours: merged vertical runs between horizontally differing pixels,
  // then merged horizontal runs between vertically differing pixels.
  std::string path;
  for (std::int32_t x = 1; x < w; ++x) {
    std::int32_t y = 0;
    while (y < h) {
      if (decomp.shape_at(x - 1, y) == decomp.shape_at(x, y)) {
        ++y;
        continue;
      }
      const std::int32_t start = y;
      while (y < h && decomp.shape_at(x - 1, y) != decomp.shape_at(x, y)) ++y;
      path += fmt::format("M{} {}V{}", x, start, y);
    }
  }
  for (std::int32_t y = 1; y < h; ++y) {
    std::int32_t x = 0;
    while (x < w) {
      if (decomp.shape_at(x, y - 1) == decomp.shape_at(x, y)) {
        ++x;
        continue;
      }
      const std::int32_t start = x;
      while (x < w && decomp.shape_at(x, y - 1) != decomp.shape_at(x, y)) ++x;
      path += fmt::format("M{} {}H{}", start, y, x);
    }
  }
  if (!path.empty()) {
    out += fmt::format("<path d=\"{}\" stroke=\"black\" stroke-width=\"0.5\" fill=\"none\"/>\n", path);
  }

  // Barycenters are pixel-center coordinates; +0.5 maps them onto the canvas.
  out += "<g stroke=\"red\" stroke-width=\"1\">\n";
  for (const GraphEdge& e : graph.edges) {
    const Point2 a = graph.nodes[e.a].position;
    const Point2 b = graph.nodes[e.b].position;
    out += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", a.x + 0.5, a.y + 0.5,
                       b.x + 0.5, b.y + 0.5);
  }
  out += "</g>\n<g fill=\"blue\">\n";
  for (const GraphNode& n : graph.nodes) {
    out += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"1.5\"/>\n", n.position.x + 0.5, n.position.y + 0.5);
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace spreg
