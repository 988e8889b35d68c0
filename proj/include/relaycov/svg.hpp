// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "relaycov/analytic_bounds.hpp"
#include "relaycov/coverage.hpp"
#include "relaycov/error.hpp"
#include "relaycov/geometry.hpp"
#include "relaycov/io_format.hpp"

namespace relaycov {

struct PlotStyle {
  std::string stroke = "black";
  std::string dash;  ///< SVG stroke-dasharray, empty for solid
  double width = 1.5;
};

enum class LayerKind { Region, Bound, Markers };

struct PlotLayer {
  LayerKind kind = LayerKind::Region;
  std::vector<Point> points;  ///< closed outline, or node positions for markers
  PlotStyle style;
  std::string label;
  bool empty = false;  ///< region with no coverage; drawn only as a legend entry
};

struct PlotSpec {
  int width = 640;
  int height = 640;
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;
  std::string title;
  std::vector<PlotLayer> layers;
};

inline void validate(const PlotSpec& spec) {
  detail::require(!spec.layers.empty(), "plot needs at least one layer");
  detail::require(spec.width >= 100 && spec.height >= 100, "plot must be at least 100x100 px");
  detail::require(std::isfinite(spec.x_min) && std::isfinite(spec.x_max) && std::isfinite(spec.y_min) &&
                      std::isfinite(spec.y_max),
                  "axis ranges must be finite");
  detail::require(spec.x_max > spec.x_min && spec.y_max > spec.y_min, "axis ranges must be non-empty");
}

inline const char* palette_color(std::size_t i) {
  static const char* colors[] = {"black", "blue", "red", "green", "purple", "orange", "brown", "teal"};
  return colors[i % (sizeof colors / sizeof colors[0])];
}

inline PlotLayer region_layer(const CoverageRegion& reg, PlotStyle style, std::string label) {
  PlotLayer l;
  l.kind = LayerKind::Region;
  l.style = std::move(style);
  l.label = std::move(label);
  l.empty = reg.empty;
  if (!reg.empty) l.points = boundary_points(reg);
  return l;
}

inline PlotLayer bound_layer(const BoundShape& shape, PlotStyle style, std::string label, std::size_t n = 256) {
  PlotLayer l;
  l.kind = LayerKind::Bound;
  l.style = std::move(style);
  l.label = std::move(label);
  l.points = bound_boundary_points(shape, n);
  return l;
}

/// Source at the origin and relay at (d, 0).
inline PlotLayer node_layer(double d) {
  PlotLayer l;
  l.kind = LayerKind::Markers;
  l.points = {{0.0, 0.0}, {d, 0.0}};
  l.label = "source / relay";
  return l;
}

/// Square axis box around every layer point plus a margin.
inline void fit_axes(PlotSpec& spec, double margin = 0.08) {
  double lo_x = std::numeric_limits<double>::infinity();
  double hi_x = -lo_x;
  double lo_y = lo_x;
  double hi_y = -lo_x;
  for (const PlotLayer& l : spec.layers) {
    for (const Point& p : l.points) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  }
  if (!std::isfinite(lo_x)) {
    lo_x = lo_y = -1.0;
    hi_x = hi_y = 1.0;
  }
  const double cx = 0.5 * (lo_x + hi_x);
  const double cy = 0.5 * (lo_y + hi_y);
  const double half = std::max({0.5 * (hi_x - lo_x), 0.5 * (hi_y - lo_y), 0.5}) * (1.0 + margin);
  spec.x_min = cx - half;
  spec.x_max = cx + half;
  spec.y_min = cy - half;
  spec.y_max = cy + half;
}

namespace detail {

inline double nice_step(double range) {
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

inline std::string xml_escape(const std::string& s) {
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

inline std::string px(double v) { return format_number(std::round(v * 100.0) / 100.0, 10); }

}  // namespace detail

/// Standalone SVG document; identical specs give identical bytes.
inline std::string render_svg(const PlotSpec& spec) {
  validate(spec);
  const double left = 60.0;
  const double right = 20.0;
  const double top = spec.title.empty() ? 20.0 : 40.0;
  const double bottom = 50.0;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;
  auto sx = [&](double x) { return left + (x - spec.x_min) / (spec.x_max - spec.x_min) * pw; };
  auto sy = [&](double y) { return top + (spec.y_max - y) / (spec.y_max - spec.y_min) * ph; };
  using detail::px;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
     << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height << "\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    os << "<text x=\"" << px(spec.width / 2.0) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"14\">" << detail::xml_escape(spec.title) << "</text>\n";
  }
  os << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(pw) << "\" height=\"" << px(ph)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"11\" stroke=\"none\" fill=\"black\">\n";
  const double xs = detail::nice_step(spec.x_max - spec.x_min);
  for (double t = std::ceil(spec.x_min / xs) * xs; t <= spec.x_max + 1e-12 * xs; t += xs) {
    const double v = std::abs(t) < 1e-9 * xs ? 0.0 : t;
    os << "<line x1=\"" << px(sx(v)) << "\" y1=\"" << px(top + ph) << "\" x2=\"" << px(sx(v)) << "\" y2=\""
       << px(top + ph + 5) << "\" stroke=\"black\"/>"
       << "<text x=\"" << px(sx(v)) << "\" y=\"" << px(top + ph + 18) << "\" text-anchor=\"middle\">"
       << format_number(v, 6) << "</text>\n";
  }
  const double ys = detail::nice_step(spec.y_max - spec.y_min);
  for (double t = std::ceil(spec.y_min / ys) * ys; t <= spec.y_max + 1e-12 * ys; t += ys) {
    const double v = std::abs(t) < 1e-9 * ys ? 0.0 : t;
    os << "<line x1=\"" << px(left - 5) << "\" y1=\"" << px(sy(v)) << "\" x2=\"" << px(left) << "\" y2=\""
       << px(sy(v)) << "\" stroke=\"black\"/>"
       << "<text x=\"" << px(left - 8) << "\" y=\"" << px(sy(v) + 4) << "\" text-anchor=\"end\">"
       << format_number(v, 6) << "</text>\n";
  }
  os << "<text x=\"" << px(left + pw / 2) << "\" y=\"" << px(spec.height - 10.0)
     << "\" text-anchor=\"middle\">x</text>\n"
     << "<text x=\"14\" y=\"" << px(top + ph / 2) << "\" text-anchor=\"middle\">y</text>\n"
     << "</g>\n";

  os << "<defs><clipPath id=\"plot\"><rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(pw)
     << "\" height=\"" << px(ph) << "\"/></clipPath></defs>\n";
  os << "<g clip-path=\"url(#plot)\">\n";
  for (const PlotLayer& l : spec.layers) {
    if (l.kind == LayerKind::Markers) {
      for (std::size_t i = 0; i < l.points.size(); ++i) {
        const Point& p = l.points[i];
        os << "<circle cx=\"" << px(sx(p.x)) << "\" cy=\"" << px(sy(p.y)) << "\" r=\"4\" fill=\""
           << (i == 0 ? "black" : "white") << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
      }
      continue;
    }
    if (l.empty || l.points.empty()) continue;
    os << "<polygon fill=\"none\" stroke=\"" << detail::xml_escape(l.style.stroke) << "\" stroke-width=\""
       << px(l.style.width) << '"';
    if (!l.style.dash.empty()) os << " stroke-dasharray=\"" << detail::xml_escape(l.style.dash) << '"';
    os << " points=\"";
    for (std::size_t i = 0; i < l.points.size(); ++i) {
      os << (i ? " " : "") << px(sx(l.points[i].x)) << ',' << px(sy(l.points[i].y));
    }
    os << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = top + 16.0;
  const double lx = left + pw - 150.0;
  for (const PlotLayer& l : spec.layers) {
    if (l.label.empty()) continue;
    if (l.kind == LayerKind::Markers) {
      os << "<circle cx=\"" << px(lx + 5) << "\" cy=\"" << px(ly - 4) << "\" r=\"3\" fill=\"black\"/>"
         << "<circle cx=\"" << px(lx + 17) << "\" cy=\"" << px(ly - 4)
         << "\" r=\"3\" fill=\"white\" stroke=\"black\"/>\n";
    } else if (!l.empty) {
      os << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly - 4) << "\" x2=\"" << px(lx + 22) << "\" y2=\""
         << px(ly - 4) << "\" stroke=\"" << detail::xml_escape(l.style.stroke) << "\" stroke-width=\""
         << px(l.style.width) << '"';
      if (!l.style.dash.empty()) os << " stroke-dasharray=\"" << detail::xml_escape(l.style.dash) << '"';
      os << "/>\n";
    }
    std::string text = detail::xml_escape(l.label);
    if (l.empty) text += ": \xE2\x88\x85";
    os << "<text x=\"" << px(lx + 28) << "\" y=\"" << px(ly) << "\">" << text << "</text>\n";
    ly += 16.0;
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace relaycov
