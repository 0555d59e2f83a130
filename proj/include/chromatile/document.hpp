#pragma once

// Line-oriented text format for colorings and tilings.
//
// Coloring document:
//   chromatile-coloring
//   n=2
//   mode=rect | torus
//   origin=0,0          (rect)  sizes=2,2 (rect) | moduli=15,15 (torus)
//   d=6
//   directions=1,0;0,1
//   legend=c1,c2,1,2,3
//   <key>=<value>       any number of extra metadata lines
//   edges=<count>
//   <base coords>;<direction, 1-based>;<color name>
//   marks=<label>;<count>   optional, followed by <count> coordinate lines

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chromatile/coloring.hpp"
#include "chromatile/error.hpp"
#include "chromatile/grid.hpp"
#include "chromatile/lattice.hpp"
#include "chromatile/tiling.hpp"

namespace chromatile {

struct ColoringDocument {
  struct Record {
    LatticePoint base;
    std::size_t direction = 0;
    std::size_t color = 0;  // index into legend
    friend bool operator==(const Record&, const Record&) = default;
  };
  struct MarkSet {
    std::string label;
    std::vector<LatticePoint> points;
    friend bool operator==(const MarkSet&, const MarkSet&) = default;
  };

  std::size_t n = 0;
  std::string mode;  // "rect" or "torus"
  LatticePoint origin;
  std::vector<std::int64_t> sizes;
  std::vector<std::int64_t> moduli;
  std::int64_t d = 0;
  std::vector<LatticePoint> directions;
  std::vector<std::string> legend;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Record> records;
  std::vector<MarkSet> marks;

  std::string meta_value(std::string_view key, std::string fallback = {}) const {
    for (const auto& [k, v] : meta) {
      if (k == key) return v;
    }
    return fallback;
  }

  friend bool operator==(const ColoringDocument&, const ColoringDocument&) = default;
};

namespace detail {

inline std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

inline std::vector<std::int64_t> parse_ints(std::string_view text) {
  const LatticePoint p = parse_point(text);
  return {p.begin(), p.end()};
}

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::pair<std::string, std::string> split_key(const std::string& line) {
  const std::size_t eq = line.find('=');
  if (eq == std::string::npos) throw InvalidInput("expected key=value, got '" + line + "'");
  return {line.substr(0, eq), line.substr(eq + 1)};
}

}  // namespace detail

inline void write_document(std::ostream& out, const ColoringDocument& doc) {
  out << "chromatile-coloring\n";
  out << "n=" << doc.n << "\n";
  out << "mode=" << doc.mode << "\n";
  if (doc.mode == "rect") {
    out << "origin=" << to_string(doc.origin) << "\n";
    out << "sizes=" << detail::join_ints(doc.sizes) << "\n";
  } else {
    out << "moduli=" << detail::join_ints(doc.moduli) << "\n";
  }
  out << "d=" << doc.d << "\n";
  out << "directions=";
  for (std::size_t i = 0; i < doc.directions.size(); ++i) out << (i ? ";" : "") << to_string(doc.directions[i]);
  out << "\nlegend=";
  for (std::size_t i = 0; i < doc.legend.size(); ++i) out << (i ? "," : "") << doc.legend[i];
  out << "\n";
  for (const auto& [k, v] : doc.meta) out << k << "=" << v << "\n";
  out << "edges=" << doc.records.size() << "\n";
  for (const auto& r : doc.records) {
    out << to_string(r.base) << ";" << r.direction + 1 << ";" << doc.legend.at(r.color) << "\n";
  }
  for (const auto& m : doc.marks) {
    out << "marks=" << m.label << ";" << m.points.size() << "\n";
    for (const auto& p : m.points) out << to_string(p) << "\n";
  }
}

inline std::string to_text(const ColoringDocument& doc) {
  std::ostringstream out;
  write_document(out, doc);
  return out.str();
}

// Parses and validates: known legend names, directions in range, points of
// the declared dimension, and no edge listed twice.
inline ColoringDocument read_document(std::istream& in) {
  ColoringDocument doc;
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) { throw InvalidInput("line " + std::to_string(line_no) + ": " + msg); };

  if (!next() || line != "chromatile-coloring") fail("missing 'chromatile-coloring' header");
  bool have_n = false;
  std::size_t edge_count = 0;
  while (true) {
    if (!next()) fail("missing edges=<count>");
    auto [key, value] = detail::split_key(line);
    try {
      if (key == "n") {
        doc.n = static_cast<std::size_t>(std::stoul(value));
        have_n = true;
      } else if (key == "mode") {
        if (value != "rect" && value != "torus") fail("mode must be rect or torus");
        doc.mode = value;
      } else if (key == "origin") {
        doc.origin = parse_point(value);
      } else if (key == "sizes") {
        doc.sizes = detail::parse_ints(value);
      } else if (key == "moduli") {
        doc.moduli = detail::parse_ints(value);
      } else if (key == "d") {
        doc.d = std::stoll(value);
      } else if (key == "directions") {
        for (const auto& p : detail::split(value, ';')) doc.directions.push_back(parse_point(p));
      } else if (key == "legend") {
        doc.legend = detail::split(value, ',');
      } else if (key == "edges") {
        edge_count = static_cast<std::size_t>(std::stoull(value));
        break;
      } else {
        doc.meta.emplace_back(key, value);
      }
    } catch (const std::logic_error&) {
      fail("bad value for '" + key + "'");
    }
  }
  if (!have_n || doc.n == 0) fail("missing n");
  if (doc.mode.empty()) fail("missing mode");
  if (doc.mode == "rect" && (doc.origin.dim() != doc.n || doc.sizes.size() != doc.n)) fail("rect needs origin and sizes");
  if (doc.mode == "torus" && doc.moduli.size() != doc.n) fail("torus needs moduli");
  if (doc.directions.empty()) fail("missing directions");
  for (const auto& dir : doc.directions) {
    if (dir.dim() != doc.n) fail("direction of the wrong dimension");
  }
  std::map<std::string, std::size_t> color_index;
  for (std::size_t i = 0; i < doc.legend.size(); ++i) {
    if (!color_index.emplace(doc.legend[i], i).second) fail("duplicate legend entry " + doc.legend[i]);
  }

  std::set<std::pair<LatticePoint, std::size_t>> seen;
  for (std::size_t e = 0; e < edge_count; ++e) {
    if (!next()) fail("expected " + std::to_string(edge_count) + " edge records");
    const auto parts = detail::split(line, ';');
    if (parts.size() != 3) fail("edge record must be coords;direction;color");
    ColoringDocument::Record r;
    try {
      r.base = parse_point(parts[0]);
      r.direction = static_cast<std::size_t>(std::stoul(parts[1])) - 1;
    } catch (const std::logic_error&) {
      fail("bad edge record");
    }
    if (r.base.dim() != doc.n) fail("edge base of the wrong dimension");
    if (r.direction >= doc.directions.size()) fail("direction out of range");
    auto it = color_index.find(parts[2]);
    if (it == color_index.end()) fail("color '" + parts[2] + "' is not in the legend");
    r.color = it->second;
    if (!seen.emplace(r.base, r.direction).second) fail("edge listed twice");
    doc.records.push_back(std::move(r));
  }
  while (next()) {
    auto [key, value] = detail::split_key(line);
    if (key != "marks") fail("unexpected '" + key + "' after the edge records");
    const auto parts = detail::split(value, ';');
    if (parts.size() != 2) fail("marks=<label>;<count>");
    ColoringDocument::MarkSet m{parts[0], {}};
    const std::size_t count = static_cast<std::size_t>(std::stoull(parts[1]));
    for (std::size_t i = 0; i < count; ++i) {
      if (!next()) fail("truncated marks section");
      m.points.push_back(parse_point(line));
    }
    doc.marks.push_back(std::move(m));
  }
  return doc;
}

inline ColoringDocument document_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_document(in);
}

// ---------------------------------------------------------------------------
// Conversions

inline ColoringDocument rect_document(const EdgeColoring& coloring, const Box& box) {
  ColoringDocument doc;
  doc.n = box.dim();
  doc.mode = "rect";
  doc.origin = box.origin();
  doc.sizes = box.sizes();
  doc.directions = unit_directions(doc.n);
  doc.legend = rectangle_legend(doc.n);
  for (const auto& [e, c] : coloring) doc.records.push_back({e.base, e.axis, c.palette_index(doc.n)});
  return doc;
}

inline Box document_box(const ColoringDocument& doc) {
  if (doc.mode != "rect") throw InvalidInput("document is not a rectangle coloring");
  return Box(doc.origin, doc.sizes);
}

inline EdgeColoring rect_coloring(const ColoringDocument& doc) {
  if (doc.mode != "rect") throw InvalidInput("document is not a rectangle coloring");
  if (doc.legend != rectangle_legend(doc.n) || doc.directions != unit_directions(doc.n)) {
    throw InvalidInput("rectangle documents use the standard directions and palette");
  }
  EdgeColoring out;
  for (const auto& r : doc.records) out.assign({r.base, r.direction}, Color::from_palette_index(r.color, doc.n));
  return out;
}

inline ColoringDocument torus_document(const TorusEdgeColoring& coloring, std::int64_t d) {
  ColoringDocument doc;
  const Torus& torus = coloring.torus();
  doc.n = torus.dim();
  doc.mode = "torus";
  doc.moduli = torus.moduli();
  doc.d = d;
  doc.directions = coloring.directions();
  doc.legend = coloring.legend();
  for (std::uint64_t v = 0; v < torus.vertex_count(); ++v) {
    for (std::size_t dir = 0; dir < doc.directions.size(); ++dir) {
      if (auto c = coloring.at(v, dir)) doc.records.push_back({torus.point(v), dir, *c});
    }
  }
  return doc;
}

inline TorusEdgeColoring torus_coloring(const ColoringDocument& doc) {
  if (doc.mode != "torus") throw InvalidInput("document is not a torus coloring");
  const Torus torus(doc.moduli);
  TorusEdgeColoring out(torus, doc.directions, doc.legend);
  for (const auto& r : doc.records) {
    if (torus.reduce(r.base) != r.base) throw InvalidInput("torus edge base outside [0, q)");
    out.assign(torus.index(r.base), r.direction, static_cast<TorusEdgeColoring::code_type>(r.color));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tilings
//
//   chromatile-tiling
//   moduli=15,15
//   d=6
//   regions=<count>
//   <origin>;<sizes>

inline void write_tiling(std::ostream& out, const Tiling& t) {
  out << "chromatile-tiling\n";
  out << "moduli=" << detail::join_ints(t.torus.moduli()) << "\n";
  out << "d=" << t.d << "\n";
  out << "regions=" << t.regions.size() << "\n";
  for (const auto& r : t.regions) out << to_string(r.origin()) << ";" << detail::join_ints(r.sizes()) << "\n";
}

inline Tiling read_tiling(std::istream& in) {
  std::string line;
  auto next = [&]() {
    if (!std::getline(in, line)) throw InvalidInput("truncated tiling");
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };
  next();
  if (line != "chromatile-tiling") throw InvalidInput("missing 'chromatile-tiling' header");
  next();
  auto [k1, moduli] = detail::split_key(line);
  next();
  auto [k2, d] = detail::split_key(line);
  next();
  auto [k3, count] = detail::split_key(line);
  if (k1 != "moduli" || k2 != "d" || k3 != "regions") throw InvalidInput("tiling header must be moduli, d, regions");
  Tiling t{Torus(detail::parse_ints(moduli)), std::stoll(d), {}};
  const std::size_t n = static_cast<std::size_t>(std::stoull(count));
  for (std::size_t i = 0; i < n; ++i) {
    next();
    const auto parts = detail::split(line, ';');
    if (parts.size() != 2) throw InvalidInput("region record must be origin;sizes");
    t.regions.emplace_back(parse_point(parts[0]), detail::parse_ints(parts[1]));
  }
  return t;
}

}  // namespace chromatile
