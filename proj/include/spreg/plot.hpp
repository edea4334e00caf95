#pragma once

// Minimal static line plots as standalone SVG.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spreg/core.hpp"

namespace spreg {

struct Series {
  std::string name;
  std::vector<Point2> points;  // drawn in the given order
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// One polyline and one circle marker (class "marker") per point for each
/// series, plus axes with ticks and a legend. Byte-identical for equal input.
/// Throws EmptySeries when `series` is empty.
std::string render_plot_svg(std::span<const Series> series, const Axes& axes);

void emit_plot(std::span<const Series> series, const Axes& axes, const std::filesystem::path& out);

}  // namespace spreg
