#pragma once

// Edge colorings: the rectangle palette, sparse colorings of grid edges in
// Z^n, and dense colorings of torus Schreier graphs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chromatile/error.hpp"
#include "chromatile/grid.hpp"
#include "chromatile/lattice.hpp"

namespace chromatile {

// One of the 2n+1 rectangle colors: the direction colors c_1..c_n and the
// plain colors 1..n+1. Indices are 0-based; names are 1-based.
class Color {
 public:
  enum class Kind : std::uint8_t { boundary, plain };

  constexpr Color() = default;
  static constexpr Color boundary(std::size_t axis) { return Color(Kind::boundary, axis); }
  static constexpr Color plain(std::size_t j) { return Color(Kind::plain, j); }

  constexpr Kind kind() const { return kind_; }
  constexpr std::size_t index() const { return index_; }
  constexpr bool is_boundary() const { return kind_ == Kind::boundary; }
  constexpr bool is_plain() const { return kind_ == Kind::plain; }

  // c_i -> i, plain j -> n + j. Palette of size 2n + 1.
  constexpr std::size_t palette_index(std::size_t n) const { return is_boundary() ? index_ : n + index_; }
  static constexpr Color from_palette_index(std::size_t idx, std::size_t n) {
    return idx < n ? boundary(idx) : plain(idx - n);
  }

  friend constexpr bool operator==(Color, Color) = default;
  friend constexpr auto operator<=>(Color, Color) = default;

 private:
  constexpr Color(Kind kind, std::size_t index) : kind_(kind), index_(static_cast<std::uint16_t>(index)) {}

  Kind kind_ = Kind::plain;
  std::uint16_t index_ = 0;
};

inline std::string to_string(Color c) {
  return c.is_boundary() ? "c" + std::to_string(c.index() + 1) : std::to_string(c.index() + 1);
}

inline std::optional<Color> parse_color(std::string_view name) {
  const bool boundary = !name.empty() && name.front() == 'c';
  if (boundary) name.remove_prefix(1);
  if (name.empty() || name.size() > 6) return std::nullopt;
  std::size_t value = 0;
  for (char ch : name) {
    if (ch < '0' || ch > '9') return std::nullopt;
    value = value * 10 + static_cast<std::size_t>(ch - '0');
  }
  if (value == 0) return std::nullopt;
  return boundary ? Color::boundary(value - 1) : Color::plain(value - 1);
}

// Names of the full rectangle palette in palette order.
inline std::vector<std::string> rectangle_legend(std::size_t n) {
  std::vector<std::string> legend;
  for (std::size_t i = 0; i <= 2 * n; ++i) legend.push_back(to_string(Color::from_palette_index(i, n)));
  return legend;
}

// Partial map from grid edges of Z^n to colors. Re-writing an edge with a
// different color throws WriteConflict.
class EdgeColoring {
 public:
  using map_type = std::map<GridEdge, Color>;

  void assign(const GridEdge& e, Color c) {
    auto [it, inserted] = colors_.emplace(e, c);
    if (!inserted && it->second != c) {
      throw WriteConflict("edge " + to_string(e.base) + " axis " + std::to_string(e.axis + 1) + ": " +
                          to_string(it->second) + " vs " + to_string(c));
    }
  }

  // Overwrites without conflict detection (fixtures and mutation tests).
  void set(const GridEdge& e, Color c) { colors_[e] = c; }

  std::optional<Color> find(const GridEdge& e) const {
    auto it = colors_.find(e);
    if (it == colors_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const GridEdge& e) const { return colors_.count(e) != 0; }
  std::size_t size() const { return colors_.size(); }
  bool empty() const { return colors_.empty(); }
  auto begin() const { return colors_.begin(); }
  auto end() const { return colors_.end(); }

  // Assigns every edge of `other`, translated by t.
  void merge(const EdgeColoring& other, const LatticePoint& t) {
    for (const auto& [e, c] : other) assign(e.translated(t), c);
  }

  EdgeColoring translated(const LatticePoint& t) const {
    EdgeColoring out;
    for (const auto& [e, c] : colors_) out.colors_.emplace(e.translated(t), c);
    return out;
  }

  std::set<Color> colors_used() const {
    std::set<Color> used;
    for (const auto& [e, c] : colors_) used.insert(c);
    return used;
  }

  friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;

 private:
  map_type colors_;
};

// Dense partial coloring of the Schreier graph of a torus with respect to a
// list of canonical directions. Edge (x, d) is {x, x + directions[d]}.
// Colors are indices into `legend`.
class TorusEdgeColoring {
 public:
  using code_type = std::uint16_t;
  static constexpr code_type kUncolored = 0xFFFF;

  TorusEdgeColoring() = default;
  TorusEdgeColoring(Torus torus, std::vector<LatticePoint> directions, std::vector<std::string> legend)
      : torus_(std::move(torus)), directions_(std::move(directions)), legend_(std::move(legend)) {
    if (legend_.size() >= kUncolored) throw InvalidInput("palette too large");
    codes_.assign(torus_.vertex_count() * directions_.size(), kUncolored);
  }

  const Torus& torus() const { return torus_; }
  const std::vector<LatticePoint>& directions() const { return directions_; }
  const std::vector<std::string>& legend() const { return legend_; }
  std::uint64_t edge_count() const { return codes_.size(); }

  void assign(std::uint64_t vertex, std::size_t dir, code_type code) {
    code_type& slot = codes_[vertex * directions_.size() + dir];
    if (slot != kUncolored && slot != code) {
      throw WriteConflict("torus edge " + to_string(torus_.point(vertex)) + " direction " +
                          std::to_string(dir + 1) + ": " + legend_.at(slot) + " vs " + legend_.at(code));
    }
    slot = code;
  }

  void set(std::uint64_t vertex, std::size_t dir, code_type code) { codes_[vertex * directions_.size() + dir] = code; }
  void clear(std::uint64_t vertex, std::size_t dir) { set(vertex, dir, kUncolored); }

  code_type code(std::uint64_t vertex, std::size_t dir) const { return codes_[vertex * directions_.size() + dir]; }

  std::optional<code_type> at(std::uint64_t vertex, std::size_t dir) const {
    const code_type c = code(vertex, dir);
    if (c == kUncolored) return std::nullopt;
    return c;
  }

  std::uint64_t colored_count() const {
    return static_cast<std::uint64_t>(std::count_if(codes_.begin(), codes_.end(), [](code_type c) { return c != kUncolored; }));
  }

  std::set<code_type> colors_used() const {
    std::set<code_type> used;
    for (code_type c : codes_) {
      if (c != kUncolored) used.insert(c);
    }
    return used;
  }

  friend bool operator==(const TorusEdgeColoring&, const TorusEdgeColoring&) = default;

 private:
  Torus torus_;
  std::vector<LatticePoint> directions_;
  std::vector<std::string> legend_;
  std::vector<code_type> codes_;
};

struct TorusColoringCheck {
  bool total = false;
  bool proper = false;
  std::uint64_t uncolored = 0;
  std::uint64_t conflicting_vertices = 0;
  std::optional<std::uint64_t> first_conflict;
  std::size_t colors_used = 0;
};

// Totality plus the vertex-local properness check: at every vertex the
// 2 * |directions| incident edges carry pairwise distinct colors.
inline TorusColoringCheck check_torus_coloring(const TorusEdgeColoring& coloring) {
  TorusColoringCheck out;
  const auto& torus = coloring.torus();
  const auto& dirs = coloring.directions();
  std::vector<TorusEdgeColoring::code_type> incident;
  for (std::uint64_t x = 0; x < torus.vertex_count(); ++x) {
    incident.clear();
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      const auto out_code = coloring.code(x, d);
      const auto in_code = coloring.code(torus.translate(x, dirs[d], -1), d);
      if (out_code == TorusEdgeColoring::kUncolored) ++out.uncolored;
      else incident.push_back(out_code);
      if (in_code != TorusEdgeColoring::kUncolored) incident.push_back(in_code);
    }
    std::sort(incident.begin(), incident.end());
    if (std::adjacent_find(incident.begin(), incident.end()) != incident.end()) {
      ++out.conflicting_vertices;
      if (!out.first_conflict) out.first_conflict = x;
    }
  }
  out.total = out.uncolored == 0;
  out.proper = out.conflicting_vertices == 0;
  out.colors_used = coloring.colors_used().size();
  return out;
}

}  // namespace chromatile
