#include "spreg/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "spreg/error.hpp"
#include "spreg/io.hpp"

namespace spreg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 180.0;  // room for the legend
constexpr double kTop = 44.0;
constexpr double kBottom = 56.0;

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  if (f < 1.5) return mag;
  if (f < 3.5) return 2.0 * mag;
  if (f < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_plot_svg(std::span<const Series> series, const Axes& axes) {
  if (series.empty()) throw Error(ErrorCode::EmptySeries, "nothing to plot");

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Series& s : series) {
    for (const Point2& p : s.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw Error(ErrorCode::InvalidArgument, "series '" + s.name + "' has a non-finite point");
      }
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  if (xmin > xmax) {  // only empty series
    xmin = ymin = 0.0;
    xmax = ymax = 1.0;
  }
  const Range xr = padded(xmin, xmax);
  const Range yr = padded(ymin, ymax);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
      kWidth, kHeight);
  if (!axes.title.empty()) {
    out += fmt::format("<text x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                       kLeft + pw / 2.0, escape(axes.title));
  }

  out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
                     kLeft, kTop, pw, ph);
  const double xstep = nice_step(xr.hi - xr.lo);
  for (double k = std::ceil(xr.lo / xstep); k * xstep <= xr.hi; k += 1.0) {
    const double v = k == 0.0 ? 0.0 : k * xstep;
    out += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>"
        "<text x=\"{0:.2f}\" y=\"{3:.2f}\" text-anchor=\"middle\">{4:g}</text>\n",
        sx(v), kTop + ph, kTop + ph + 5, kTop + ph + 19, v);
  }
  const double ystep = nice_step(yr.hi - yr.lo);
  for (double k = std::ceil(yr.lo / ystep); k * ystep <= yr.hi; k += 1.0) {
    const double v = k == 0.0 ? 0.0 : k * ystep;
    out += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>"
        "<text x=\"{3:.2f}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:g}</text>\n",
        kLeft - 5, sy(v), kLeft, kLeft - 8, sy(v) + 4, v);
  }
  out += fmt::format("<text class=\"x-label\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + pw / 2.0, kHeight - 14, escape(axes.x_label));
  out += fmt::format(
      "<text class=\"y-label\" x=\"18\" y=\"{0:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0:.2f})\">{1}</text>\n",
      kTop + ph / 2.0, escape(axes.y_label));

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* color = kPalette[i % kPalette.size()];
    out += fmt::format("<g class=\"series\" stroke=\"{0}\" fill=\"{0}\">\n", color);
    if (s.points.size() > 1) {
      std::string pts;
      for (const Point2& p : s.points) {
        if (!pts.empty()) pts += ' ';
        pts += fmt::format("{:.2f},{:.2f}", sx(p.x), sy(p.y));
      }
      out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke-width=\"1.5\"/>\n", pts);
    }
    for (const Point2& p : s.points) {
      out += fmt::format("<circle class=\"marker\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\"/>\n", sx(p.x), sy(p.y));
    }
    out += "</g>\n";

    const double ly = kTop + 12.0 + 18.0 * static_cast<double>(i);
    const double lx = kWidth - kRight + 16.0;
    out += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" stroke-width=\"2\"/>"
        "<text class=\"legend\" x=\"{4:.2f}\" y=\"{5:.2f}\">{6}</text>\n",
        lx, ly, lx + 20.0, color, lx + 26.0, ly + 4.0, escape(s.name));
  }
  out += "</svg>\n";
  return out;
}

void emit_plot(std::span<const Series> series, const Axes& axes, const std::filesystem::path& out) {
  write_text_file(out, render_plot_svg(series, axes));
}

}  // namespace spreg
