#pragma once

// Proper edge colorings of rectangles in Z^n satisfying the boundary
// condition, and the core / shifted-core refinements, with their verifiers.
//
// Conventions: for a box R every adjacent edge parallel to e_i is colored
// c_i. The palette is c_1..c_n followed by the plain colors 1..n+1; a
// coloring "uses color n+1" when Color::plain(n) appears.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "chromatile/coloring.hpp"
#include "chromatile/error.hpp"
#include "chromatile/grid.hpp"

namespace chromatile {

namespace detail {

// Points whose coordinates along `axes` range over [0, sizes[a]] and are zero
// elsewhere.
template <class Fn>
void for_each_in_span(const std::vector<std::int64_t>& sizes, std::span<const std::size_t> axes, Fn&& fn) {
  LatticePoint lo(sizes.size()), hi(sizes.size());
  for (std::size_t a : axes) hi[a] = sizes[a];
  for_each_point(lo, hi, std::forward<Fn>(fn));
}

inline LatticePoint offset(std::size_t dim, std::size_t axis, std::int64_t amount) {
  LatticePoint p(dim);
  p[axis] = amount;
  return p;
}

// First candidate not incident to x in `layer`.
inline Color pick_free_color(const EdgeColoring& layer, const LatticePoint& x, std::span<const std::size_t> layer_axes,
                             std::span<const Color> candidates) {
  std::vector<Color> incident;
  for (std::size_t a : layer_axes) {
    if (auto c = layer.find({x, a})) incident.push_back(*c);
    LatticePoint below = x;
    --below[a];
    if (auto c = layer.find({below, a})) incident.push_back(*c);
  }
  for (Color c : candidates) {
    if (std::find(incident.begin(), incident.end(), c) == incident.end()) return c;
  }
  throw std::logic_error("no free color for a column path");
}

// c_a for the layer axes in increasing axis order, then plain 1..r.
inline std::vector<Color> column_candidates(std::span<const std::size_t> layer_axes, std::size_t r) {
  std::vector<std::size_t> sorted(layer_axes.begin(), layer_axes.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Color> out;
  for (std::size_t a : sorted) out.push_back(Color::boundary(a));
  for (std::size_t j = 0; j < r; ++j) out.push_back(Color::plain(j));
  return out;
}

// Colors the stack of identical layers along `slice_axis` and the column
// paths through them. `path_color(c_star, h)` gives the color of the h-th
// edge of the column whose free color is c_star.
template <class PathColor>
EdgeColoring stack_layers(const std::vector<std::int64_t>& sizes, std::span<const std::size_t> layer_axes,
                          std::size_t slice_axis, const EdgeColoring& layer, std::span<const Color> candidates,
                          PathColor&& path_color) {
  const std::size_t n = sizes.size();
  const std::int64_t height = sizes[slice_axis];
  EdgeColoring out;
  for (std::int64_t h = 0; h <= height; ++h) out.merge(layer, offset(n, slice_axis, h));
  for_each_in_span(sizes, layer_axes, [&](const LatticePoint& x) {
    const Color c_star = pick_free_color(layer, x, layer_axes, candidates);
    out.assign({x + offset(n, slice_axis, -1), slice_axis}, Color::boundary(slice_axis));
    out.assign({x + offset(n, slice_axis, height), slice_axis}, Color::boundary(slice_axis));
    for (std::int64_t h = 0; h < height; ++h) {
      out.assign({x + offset(n, slice_axis, h), slice_axis}, path_color(c_star, h));
    }
  });
  return out;
}

// (2r+1)-coloring with the boundary condition for the sub-box spanned by
// `axes`; the last axis is sliced first.
inline EdgeColoring bc1(const std::vector<std::int64_t>& sizes, std::span<const std::size_t> axes) {
  const std::size_t n = sizes.size();
  const std::size_t r = axes.size();
  if (r == 1) {
    const std::size_t a = axes[0];
    EdgeColoring out;
    out.assign({offset(n, a, -1), a}, Color::boundary(a));
    out.assign({offset(n, a, sizes[a]), a}, Color::boundary(a));
    for (std::int64_t h = 0; h < sizes[a]; ++h) {
      out.assign({offset(n, a, h), a}, h % 2 == 0 ? Color::plain(0) : Color::plain(1));
    }
    return out;
  }
  const std::size_t slice = axes.back();
  const auto rest = axes.first(r - 1);
  const EdgeColoring layer = bc1(sizes, rest);
  const auto candidates = column_candidates(rest, r);
  return stack_layers(sizes, rest, slice, layer, candidates,
                      [r](Color c_star, std::int64_t h) { return h % 2 == 0 ? c_star : Color::plain(r); });
}

// 2r-coloring with the boundary condition; sizes[odd_axis] must be odd.
inline EdgeColoring bc2(const std::vector<std::int64_t>& sizes, std::span<const std::size_t> axes,
                        std::size_t odd_axis) {
  const std::size_t n = sizes.size();
  const std::size_t r = axes.size();
  if (r == 1) {
    EdgeColoring out;
    out.assign({offset(n, odd_axis, -1), odd_axis}, Color::boundary(odd_axis));
    out.assign({offset(n, odd_axis, sizes[odd_axis]), odd_axis}, Color::boundary(odd_axis));
    for (std::int64_t h = 0; h < sizes[odd_axis]; ++h) {
      out.assign({offset(n, odd_axis, h), odd_axis}, h % 2 == 0 ? Color::plain(0) : Color::boundary(odd_axis));
    }
    return out;
  }
  std::vector<std::size_t> rest;
  for (std::size_t a : axes) {
    if (a != odd_axis) rest.push_back(a);
  }
  const EdgeColoring layer = bc1(sizes, rest);
  const auto candidates = column_candidates(rest, r);
  return stack_layers(sizes, rest, odd_axis, layer, candidates, [odd_axis](Color c_star, std::int64_t h) {
    return h % 2 == 0 ? c_star : Color::boundary(odd_axis);
  });
}

inline std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

}  // namespace detail

// Proper (2n+1)-coloring of R and its adjacent edges with the boundary
// condition. `axis_order` is a permutation of the axes; its last entry is
// the slicing axis of the outermost induction step.
inline EdgeColoring color_bc1(const Box& box, std::vector<std::size_t> axis_order = {}) {
  const std::size_t n = box.dim();
  if (axis_order.empty()) axis_order = detail::identity_order(n);
  std::vector<std::size_t> check = axis_order;
  std::sort(check.begin(), check.end());
  if (check != detail::identity_order(n)) throw InvalidInput("axis_order is not a permutation");
  return detail::bc1(box.sizes(), axis_order).translated(box.origin());
}

// Proper 2n-coloring with the boundary condition, never using color n+1.
// Defaults to the first odd axis.
inline EdgeColoring color_bc2(const Box& box, std::optional<std::size_t> odd_axis = std::nullopt) {
  const std::size_t n = box.dim();
  if (!odd_axis) {
    for (std::size_t i = 0; i < n && !odd_axis; ++i) {
      if (box.size(i) % 2 != 0) odd_axis = i;
    }
    if (!odd_axis) throw InvalidInput("color_bc2 needs a box with an odd side");
  }
  if (*odd_axis >= n || box.size(*odd_axis) % 2 == 0) {
    throw InvalidInput("color_bc2: side along the chosen axis is not odd");
  }
  return detail::bc2(box.sizes(), detail::identity_order(n), *odd_axis).translated(box.origin());
}

// Shifts for which the construction below works on a d-cube, d = 4k + 2:
// even coordinates in [-2k, 2k], i.e. every even shift keeping the shifted
// core inside the cube. At |t_i| = 2k one of the two odd parts is empty.
inline bool admissible_core_shift(std::int64_t d, const LatticePoint& t) {
  const std::int64_t k = (d - 2) / 4;
  for (std::int64_t ti : t) {
    if (ti % 2 != 0 || ti < -2 * k || ti > 2 * k) return false;
  }
  return true;
}

// The narrower range [-2k+2, 2k-2] (only 0 when k = 0) that leaves both odd
// parts nonempty.
inline bool interior_core_shift(std::int64_t d, const LatticePoint& t) {
  const std::int64_t k = (d - 2) / 4;
  for (std::int64_t ti : t) {
    if (ti % 2 != 0) return false;
    if (k == 0 ? ti != 0 : (ti < -2 * k + 2 || ti > 2 * k - 2)) return false;
  }
  return true;
}

// Boundary condition plus the t-shifted core condition on a cube of side
// d = 4k + 2. Stage i cuts the current slab along axis i into an odd part of
// extent 2k-1+t_i, the two-wide middle, and an odd part of extent 2k-1-t_i;
// the odd parts get 2n-colorings, the final 2-cube gets the (2n+1)-coloring.
inline EdgeColoring color_shifted_core(const Box& box, const LatticePoint& t) {
  const std::size_t n = box.dim();
  const std::int64_t d = box.size(0);
  if (!box.is_cube() || d % 4 != 2) {
    throw Infeasible("core colorings need a cube whose side is 2 mod 4");
  }
  if (t.dim() != n) throw InvalidInput("shift dimension does not match the box");
  if (!admissible_core_shift(d, t)) {
    throw Infeasible("core shift " + to_string(t) + " must be even with entries in [-" + std::to_string(d / 2 - 1) +
                     ", " + std::to_string(d / 2 - 1) + "]");
  }
  const std::int64_t k = (d - 2) / 4;
  if (k == 0) return color_bc1(box);

  EdgeColoring out;
  LatticePoint lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) hi[i] = d;
  const auto axes = detail::identity_order(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto piece = [&](std::int64_t from, std::int64_t to) {
      if (to < from) return;
      LatticePoint origin = lo;
      origin[i] = from;
      std::vector<std::int64_t> sizes(n);
      for (std::size_t j = 0; j < n; ++j) sizes[j] = hi[j] - lo[j];
      sizes[i] = to - from;
      out.merge(detail::bc2(sizes, axes, i), origin);
    };
    piece(0, 2 * k - 1 + t[i]);
    piece(2 * k + 3 + t[i], d);
    lo[i] = 2 * k + t[i];
    hi[i] = 2 * k + 2 + t[i];
  }
  out.merge(detail::bc1(std::vector<std::int64_t>(n, 2), axes), lo);
  return out.translated(box.origin());
}

inline EdgeColoring color_core(const Box& box) { return color_shifted_core(box, LatticePoint(box.dim())); }

// ---------------------------------------------------------------------------
// Verifiers

// Every vertex's incident colored edges carry pairwise distinct colors.
inline bool verify_proper(const EdgeColoring& coloring) {
  std::map<LatticePoint, std::vector<Color>> incident;
  for (const auto& [e, c] : coloring) {
    incident[e.base].push_back(c);
    incident[e.head()].push_back(c);
  }
  for (auto& [x, colors] : incident) {
    std::sort(colors.begin(), colors.end());
    if (std::adjacent_find(colors.begin(), colors.end()) != colors.end()) return false;
  }
  return true;
}

namespace detail {

// Restriction of the coloring to the edges of R and its adjacent edges;
// throws if any of them is uncolored.
inline EdgeColoring restrict_total(const EdgeColoring& coloring, const Box& box) {
  EdgeColoring out;
  auto take = [&](const GridEdge& e) {
    auto c = coloring.find(e);
    if (!c) throw InvalidInput("coloring is partial: edge " + to_string(e.base) + " axis " + std::to_string(e.axis + 1));
    out.assign(e, *c);
  };
  for (const auto& e : edges_in(box)) take(e);
  for (const auto& e : adjacent_edges(box)) take(e);
  return out;
}

}  // namespace detail

inline bool verify_boundary_condition(const EdgeColoring& coloring, const Box& box) {
  const EdgeColoring local = detail::restrict_total(coloring, box);
  if (!verify_proper(local)) return false;
  for (const auto& e : adjacent_edges(box)) {
    if (*local.find(e) != Color::boundary(e.axis)) return false;
  }
  return true;
}

// Proper (2n+1)-coloring of R and its adjacent edges in which color n+1 only
// occurs on edges of the t-shifted core. Throws for odd sides.
inline bool verify_shifted_core(const EdgeColoring& coloring, const Box& box, const LatticePoint& t) {
  const std::size_t n = box.dim();
  if (!box.all_even()) throw InvalidInput("shifted-core condition needs even side lengths");
  const Box kernel = shifted_core(box, t);
  const EdgeColoring local = detail::restrict_total(coloring, box);
  if (!verify_proper(local)) return false;
  for (const auto& [e, c] : local) {
    if (c.is_boundary() ? c.index() >= n : c.index() > n) return false;
    if (c == Color::plain(n) && !edge_in_box(e, kernel)) return false;
  }
  return true;
}

inline bool verify_core_condition(const EdgeColoring& coloring, const Box& box) {
  return verify_shifted_core(coloring, box, LatticePoint(box.dim()));
}

}  // namespace chromatile
