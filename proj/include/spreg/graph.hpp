#pragma once

// Region adjacency graph of a decomposition, drawn over superpixel
// barycenters. This is the graph the figures of superpixel papers usually
// call a "Delaunay graph": an edge joins two superpixels exactly when some of
// their pixels are 4-adjacent. No triangulation of the barycenters is built.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "spreg/core.hpp"

namespace spreg {

struct GraphNode {
  std::uint32_t label = 0;
  Point2 position;  // barycenter, in pixel-center coordinates
  std::size_t area = 0;
};

struct GraphEdge {
  std::uint32_t a = 0;  // node index, a < b
  std::uint32_t b = 0;
  double length = 0.0;
  /// Both barycenters coincide; only possible with degenerate shapes.
  bool zero_length = false;
};

struct AdjacencyGraph {
  std::vector<GraphNode> nodes;  // one per shape, same order
  std::vector<GraphEdge> edges;  // sorted by (a, b)
};

struct EdgeStats {
  std::size_t n_edges = 0;
  double mean_length = 0.0;
  double stddev_length = 0.0;  // population
  double coefficient_of_variation = 0.0;
  double min_length = 0.0;
  double max_length = 0.0;
};

AdjacencyGraph adjacency_graph(const Decomposition& decomp);

/// Throws NoEdges for a graph without edges.
EdgeStats edge_stats(const AdjacencyGraph& graph);

/// One line per edge: "label_a label_b length".
std::string edge_list_text(const AdjacencyGraph& graph);

/// Standalone SVG: superpixel contours in black, edges in red, barycenters
/// as blue dots. Output is a pure function of its inputs.
std::string graph_svg(const Decomposition& decomp, const AdjacencyGraph& graph);

}  // namespace spreg
