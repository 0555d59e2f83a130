#pragma once

// SVG drawing of a two-dimensional slice of a coloring document.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chromatile/document.hpp"
#include "chromatile/error.hpp"

namespace chromatile {

inline constexpr const char* kSvgPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
                                              "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#393b79", "#637939"};

// `slices` fixes coordinate values (0-based axis -> value); exactly two axes
// must remain free. The first free axis runs left to right, the second bottom
// to top.
inline std::string render_svg(const ColoringDocument& doc, const std::map<std::size_t, std::int64_t>& slices = {}) {
  std::vector<std::size_t> free_axes;
  for (std::size_t a = 0; a < doc.n; ++a) {
    if (!slices.count(a)) free_axes.push_back(a);
  }
  for (const auto& [axis, value] : slices) {
    if (axis >= doc.n) throw InvalidInput("slice axis out of range");
  }
  if (free_axes.size() != 2) {
    throw InvalidInput("render needs exactly two free axes after slicing, have " + std::to_string(free_axes.size()));
  }
  const std::size_t ax = free_axes[0], ay = free_axes[1];

  struct Segment {
    std::int64_t x0, y0, x1, y1;
    std::size_t color;
  };
  std::vector<Segment> segments;
  std::set<std::pair<std::int64_t, std::int64_t>> vertices;
  for (const auto& r : doc.records) {
    const LatticePoint& dir = doc.directions[r.direction];
    bool keep = true;
    for (const auto& [axis, value] : slices) keep = keep && r.base[axis] == value && dir[axis] == 0;
    if (!keep) continue;
    Segment s{r.base[ax], r.base[ay], r.base[ax] + dir[ax], r.base[ay] + dir[ay], r.color};
    segments.push_back(s);
    vertices.emplace(s.x0, s.y0);
    vertices.emplace(s.x1, s.y1);
  }
  if (segments.empty()) throw InvalidInput("nothing to draw in this slice");

  std::int64_t min_x = segments[0].x0, max_x = min_x, min_y = segments[0].y0, max_y = min_y;
  for (const auto& [x, y] : vertices) {
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  }
  const int unit = 40, margin = 30, legend_width = 90;
  const std::int64_t width = (max_x - min_x) * unit + 2 * margin + legend_width;
  const std::int64_t height = std::max<std::int64_t>((max_y - min_y) * unit + 2 * margin,
                                                     static_cast<std::int64_t>(doc.legend.size()) * 20 + 2 * margin);
  auto px = [&](std::int64_t x) { return (x - min_x) * unit + margin; };
  auto py = [&](std::int64_t y) { return (max_y - y) * unit + margin; };
  auto color = [](std::size_t c) { return kSvgPalette[c % std::size(kSvgPalette)]; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& s : segments) {
    out << "<line x1=\"" << px(s.x0) << "\" y1=\"" << py(s.y0) << "\" x2=\"" << px(s.x1) << "\" y2=\"" << py(s.y1)
        << "\" stroke=\"" << color(s.color) << "\" stroke-width=\"4\"><title>" << doc.legend[s.color]
        << "</title></line>\n";
  }
  for (const auto& [x, y] : vertices) {
    out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"black\"/>\n";
  }
  const std::int64_t lx = (max_x - min_x) * unit + 2 * margin;
  for (std::size_t i = 0; i < doc.legend.size(); ++i) {
    const std::int64_t y = margin + static_cast<std::int64_t>(i) * 20;
    out << "<line x1=\"" << lx << "\" y1=\"" << y << "\" x2=\"" << lx + 24 << "\" y2=\"" << y << "\" stroke=\""
        << color(i) << "\" stroke-width=\"4\"/>\n";
    out << "<text x=\"" << lx + 30 << "\" y=\"" << y + 4 << "\">" << doc.legend[i] << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace chromatile
