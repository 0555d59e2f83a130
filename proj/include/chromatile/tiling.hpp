#pragma once

// Finite stand-ins for marker sets and marker regions: greedy separated sets
// on Schreier graphs, brick tilings of tori by boxes of side d or d+1, and the
// global coloring of a tiled torus.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chromatile/coloring.hpp"
#include "chromatile/error.hpp"
#include "chromatile/grid.hpp"
#include "chromatile/parallel.hpp"
#include "chromatile/rectcolor.hpp"

namespace chromatile {

struct MarkerSet {
  std::vector<std::size_t> points;
  std::size_t d = 0;
};

// Greedy maximal d-separated set, scanning vertices in index order. Maximality
// makes it d-covering.
inline MarkerSet greedy_marker_set(const SchreierGraph& g, std::size_t d) {
  MarkerSet out;
  out.d = d;
  std::vector<bool> blocked(g.vertex_count(), false);
  std::vector<std::size_t> dist(g.vertex_count(), kUnreachable);
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (blocked[v]) continue;
    out.points.push_back(v);
    // Block the d-ball around v.
    queue.assign(1, v);
    dist[v] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t x = queue[head];
      blocked[x] = true;
      if (dist[x] == d) continue;
      for (std::size_t y : g.neighbors(x)) {
        if (dist[y] == kUnreachable) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (std::size_t x : queue) dist[x] = kUnreachable;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tilings

struct Tiling {
  Torus torus;
  std::int64_t d = 0;
  std::vector<Box> regions;
};

// Side lengths of a cyclic segmentation of `modulus` vertices into boxes of
// side d or d+1 (d+1 or d+2 vertices), using as few d+1 sides as possible.
inline std::vector<std::int64_t> segment_lengths(std::int64_t modulus, std::int64_t d) {
  if (d < 2) throw InvalidInput("tilings need d >= 2");
  const std::int64_t wide = modulus % (d + 1);
  const std::int64_t narrow = (modulus - wide * (d + 2)) / (d + 1);
  if (modulus < wide * (d + 2)) {
    throw Infeasible("modulus " + std::to_string(modulus) + " is not a sum of " + std::to_string(d + 1) +
                     "- and " + std::to_string(d + 2) + "-vertex segments (d=" + std::to_string(d) + ")");
  }
  std::vector<std::int64_t> out(static_cast<std::size_t>(narrow), d);
  out.insert(out.end(), static_cast<std::size_t>(wide), d + 1);
  return out;
}

inline bool representable(std::int64_t modulus, std::int64_t d) {
  return d >= 2 && modulus >= (modulus % (d + 1)) * (d + 2);
}

namespace detail {

// Slabs along the last axis, then recursively within each slab. Every
// segmentation (the top one included) is rotated by the next offset.
template <class NextOffset, class Arrange>
void brick_recurse(const Torus& torus, std::int64_t d, std::size_t axis, LatticePoint& origin,
                   std::vector<std::int64_t>& sizes, NextOffset& next_offset, Arrange& arrange,
                   std::vector<Box>& out) {
  const std::int64_t m = torus.modulus(axis);
  auto lengths = segment_lengths(m, d);
  arrange(lengths);
  std::int64_t pos = floor_mod(next_offset(m), m);
  for (std::int64_t len : lengths) {
    origin[axis] = floor_mod(pos, m);
    sizes[axis] = len;
    if (axis == 0) out.emplace_back(origin, sizes);
    else brick_recurse(torus, d, axis - 1, origin, sizes, next_offset, arrange, out);
    pos += len + 1;
  }
}

}  // namespace detail

// Offsets are consumed in traversal order (top axis first) and cycled.
inline Tiling brick_tiling(const Torus& torus, std::int64_t d, std::span<const std::int64_t> offsets = {}) {
  Tiling t{torus, d, {}};
  std::size_t cursor = 0;
  auto next_offset = [&](std::int64_t) -> std::int64_t {
    if (offsets.empty()) return 0;
    return offsets[cursor++ % offsets.size()];
  };
  auto keep = [](std::vector<std::int64_t>&) {};
  LatticePoint origin(torus.dim());
  std::vector<std::int64_t> sizes(torus.dim());
  detail::brick_recurse(torus, d, torus.dim() - 1, origin, sizes, next_offset, keep, t.regions);
  return t;
}

// Offsets and the order of the d / d+1 segments drawn from a seeded
// generator. Reductions use plain modulo so the result does not depend on the
// standard library's distribution implementations.
inline Tiling brick_tiling_seeded(const Torus& torus, std::int64_t d, std::uint64_t seed) {
  Tiling t{torus, d, {}};
  std::mt19937_64 rng(seed);
  auto next_offset = [&](std::int64_t m) { return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m)); };
  auto shuffle = [&](std::vector<std::int64_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
  };
  LatticePoint origin(torus.dim());
  std::vector<std::int64_t> sizes(torus.dim());
  detail::brick_recurse(torus, d, torus.dim() - 1, origin, sizes, next_offset, shuffle, t.regions);
  return t;
}

struct TilingReport {
  std::vector<std::string> problems;
  bool valid() const { return problems.empty(); }
  explicit operator bool() const { return valid(); }
};

// Region index per torus vertex, or nullopt-like kNoRegion where uncovered.
inline constexpr std::uint32_t kNoRegion = 0xFFFFFFFF;

inline TilingReport validate_tiling(const Tiling& t) {
  TilingReport report;
  auto problem = [&](std::string msg) {
    if (report.problems.size() < 20) report.problems.push_back(std::move(msg));
  };
  const std::size_t n = t.torus.dim();
  if (t.d < 1) problem("d must be positive");
  for (std::size_t a = 0; a < n; ++a) {
    if (t.torus.modulus(a) < 3) problem("modulus " + std::to_string(a + 1) + " below 3 folds edges together");
  }
  std::vector<std::uint8_t> cover(t.torus.vertex_count(), 0);
  for (std::size_t r = 0; r < t.regions.size(); ++r) {
    const Box& box = t.regions[r];
    const std::string name = "region " + std::to_string(r);
    if (box.dim() != n) {
      problem(name + " has the wrong dimension");
      continue;
    }
    bool shape_ok = true;
    for (std::size_t a = 0; a < n; ++a) {
      if (box.size(a) != t.d && box.size(a) != t.d + 1) {
        problem(name + " side " + std::to_string(box.size(a)) + " is neither d nor d+1");
      }
      if (box.size(a) < 1) shape_ok = false;
      if (box.size(a) + 1 > t.torus.modulus(a)) {
        problem(name + " wraps onto itself along axis " + std::to_string(a + 1));
        shape_ok = false;
      }
    }
    if (!shape_ok) continue;
    box.for_each_vertex([&](const LatticePoint& x) {
      auto& c = cover[t.torus.index(x)];
      if (c < 2) ++c;
    });
  }
  std::uint64_t missing = 0, doubled = 0;
  for (std::uint64_t v = 0; v < cover.size(); ++v) {
    if (cover[v] == 0 && missing++ == 0) problem("vertex " + to_string(t.torus.point(v)) + " is uncovered");
    if (cover[v] > 1 && doubled++ == 0) problem("vertex " + to_string(t.torus.point(v)) + " lies in two regions");
  }
  if (missing > 1) problem(std::to_string(missing) + " uncovered vertices in total");
  if (doubled > 1) problem(std::to_string(doubled) + " multiply covered vertices in total");
  return report;
}

inline std::vector<std::uint32_t> region_map(const Tiling& t) {
  std::vector<std::uint32_t> owner(t.torus.vertex_count(), kNoRegion);
  for (std::size_t r = 0; r < t.regions.size(); ++r) {
    t.regions[r].for_each_vertex([&](const LatticePoint& x) {
      auto& o = owner[t.torus.index(x)];
      if (o != kNoRegion) throw InvalidInput("tiling regions overlap");
      o = static_cast<std::uint32_t>(r);
    });
  }
  return owner;
}

// ---------------------------------------------------------------------------
// Coloring a tiled torus

enum class CoreMode { plain, core, shifted };

// Coloring of one region, relative to its origin. Regions with a d+1 side get
// the 2n-coloring; the rest get bc1 (plain) or a (shifted) core coloring.
inline EdgeColoring region_coloring(const std::vector<std::int64_t>& sizes, std::int64_t d, CoreMode mode,
                                    const LatticePoint& shift) {
  const Box box(LatticePoint(sizes.size()), sizes);
  if (mode == CoreMode::plain) return color_bc1(box);
  if (d % 4 != 2) throw Infeasible("core colorings need d = 2 mod 4, got d=" + std::to_string(d));
  for (std::size_t a = 0; a < sizes.size(); ++a) {
    if (sizes[a] == d + 1) return color_bc2(box, a);
  }
  return color_shifted_core(box, shift);
}

inline bool has_core(const Box& region, std::int64_t d, CoreMode mode) {
  if (mode == CoreMode::plain) return false;
  for (std::int64_t s : region.sizes()) {
    if (s != d) return false;
  }
  return true;
}

struct TilingColoring {
  TorusEdgeColoring coloring;
  // Shifted core of every all-d region in core modes, in unreduced torus
  // coordinates.
  std::vector<std::optional<Box>> cores;
};

inline std::vector<LatticePoint> unit_directions(std::size_t n) {
  std::vector<LatticePoint> dirs;
  for (std::size_t a = 0; a < n; ++a) dirs.push_back(LatticePoint::unit(n, a));
  return dirs;
}

// Colors every edge of the torus with the standard generators. Region
// colorings are computed once per (shape, shift) in parallel, then written in
// region order; crossing edges are written by both neighbours and must agree.
inline TilingColoring color_tiling(const Tiling& t, CoreMode mode, std::span<const LatticePoint> shifts = {}) {
  const std::size_t n = t.torus.dim();
  if (auto report = validate_tiling(t); !report) throw InvalidInput("invalid tiling: " + report.problems.front());
  if (mode == CoreMode::shifted && shifts.size() != t.regions.size()) {
    throw InvalidInput("shifted mode needs one shift per region");
  }

  using Key = std::pair<std::vector<std::int64_t>, LatticePoint>;
  std::map<Key, std::size_t> slot_of;
  std::vector<Key> keys;
  std::vector<std::size_t> region_slot(t.regions.size());
  for (std::size_t r = 0; r < t.regions.size(); ++r) {
    LatticePoint shift(n);
    if (mode == CoreMode::shifted && has_core(t.regions[r], t.d, mode)) shift = shifts[r];
    Key key{t.regions[r].sizes(), shift};
    auto [it, inserted] = slot_of.emplace(key, keys.size());
    if (inserted) keys.push_back(std::move(key));
    region_slot[r] = it->second;
  }
  std::vector<EdgeColoring> local(keys.size());
  parallel_for(keys.size(), [&](std::size_t i) { local[i] = region_coloring(keys[i].first, t.d, mode, keys[i].second); });

  TilingColoring out{TorusEdgeColoring(t.torus, unit_directions(n), rectangle_legend(n)), {}};
  for (std::size_t r = 0; r < t.regions.size(); ++r) {
    const Box& region = t.regions[r];
    for (const auto& [e, c] : local[region_slot[r]]) {
      out.coloring.assign(t.torus.index(region.origin() + e.base), e.axis,
                          static_cast<TorusEdgeColoring::code_type>(c.palette_index(n)));
    }
    if (has_core(region, t.d, mode)) {
      out.cores.emplace_back(shifted_core(region, keys[region_slot[r]].second));
    } else {
      out.cores.emplace_back(std::nullopt);
    }
  }
  return out;
}

// Number of edges joining two regions whose color is not c_axis.
inline std::uint64_t crossing_edge_violations(const TorusEdgeColoring& coloring, const Tiling& t) {
  const auto owner = region_map(t);
  const std::size_t n = t.torus.dim();
  std::uint64_t bad = 0;
  for (std::uint64_t v = 0; v < t.torus.vertex_count(); ++v) {
    for (std::size_t a = 0; a < n; ++a) {
      const std::uint64_t w = t.torus.translate(v, LatticePoint::unit(n, a));
      if (owner[v] != owner[w] && coloring.code(v, a) != Color::boundary(a).palette_index(n)) ++bad;
    }
  }
  return bad;
}

// Number of edges with color `code` that are not edges of any of the boxes.
inline std::uint64_t confinement_violations(const TorusEdgeColoring& coloring, TorusEdgeColoring::code_type code,
                                            std::span<const std::optional<Box>> boxes) {
  const auto& torus = coloring.torus();
  const std::size_t dirs = coloring.directions().size();
  std::vector<bool> allowed(torus.vertex_count() * dirs, false);
  for (const auto& box : boxes) {
    if (!box) continue;
    for (const auto& e : edges_in(*box)) allowed[torus.index(e.base) * dirs + e.axis] = true;
  }
  std::uint64_t bad = 0;
  for (std::uint64_t v = 0; v < torus.vertex_count(); ++v) {
    for (std::size_t a = 0; a < dirs; ++a) {
      if (coloring.code(v, a) == code && !allowed[v * dirs + a]) ++bad;
    }
  }
  return bad;
}

}  // namespace chromatile
