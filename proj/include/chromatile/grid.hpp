#pragma once

// Rectangles, grid edges, tori and Schreier graphs of Z^n actions.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chromatile/checked.hpp"
#include "chromatile/error.hpp"
#include "chromatile/lattice.hpp"

namespace chromatile {

// Calls fn(point) for every integer point of [lo_1, hi_1] x ... x [lo_n, hi_n]
// in lexicographic order.
template <class Fn>
void for_each_point(const LatticePoint& lo, const LatticePoint& hi, Fn&& fn) {
  const std::size_t n = lo.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (hi[i] < lo[i]) return;
  }
  LatticePoint x = lo;
  while (true) {
    fn(static_cast<const LatticePoint&>(x));
    std::size_t axis = n;
    while (true) {
      if (axis == 0) return;
      --axis;
      if (x[axis] < hi[axis]) {
        ++x[axis];
        break;
      }
      x[axis] = lo[axis];
    }
  }
}

// The rectangle [b_1, b_1 + a_1] x ... x [b_n, b_n + a_n]; side i carries
// a_i + 1 vertices.
class Box {
 public:
  Box() = default;
  Box(LatticePoint origin, std::vector<std::int64_t> sizes)
      : origin_(std::move(origin)), sizes_(std::move(sizes)) {
    if (origin_.dim() != sizes_.size()) throw InvalidInput("box origin and sizes differ in dimension");
    if (sizes_.empty()) throw InvalidInput("box dimension must be at least 1");
    for (std::int64_t a : sizes_) {
      if (a < 1) throw InvalidInput("box side lengths must be positive");
    }
  }

  static Box cube(std::size_t dim, std::int64_t side) {
    return Box(LatticePoint(dim), std::vector<std::int64_t>(dim, side));
  }

  std::size_t dim() const { return sizes_.size(); }
  const LatticePoint& origin() const { return origin_; }
  const std::vector<std::int64_t>& sizes() const { return sizes_; }
  std::int64_t size(std::size_t axis) const { return sizes_[axis]; }
  std::int64_t lower(std::size_t axis) const { return origin_[axis]; }
  std::int64_t upper(std::size_t axis) const { return origin_[axis] + sizes_[axis]; }

  LatticePoint upper_corner() const {
    LatticePoint hi = origin_;
    for (std::size_t i = 0; i < dim(); ++i) hi[i] += sizes_[i];
    return hi;
  }

  bool contains(const LatticePoint& x) const {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] < lower(i) || x[i] > upper(i)) return false;
    }
    return true;
  }

  bool all_even() const {
    return std::all_of(sizes_.begin(), sizes_.end(), [](std::int64_t a) { return a % 2 == 0; });
  }

  bool is_cube() const {
    return std::all_of(sizes_.begin(), sizes_.end(), [&](std::int64_t a) { return a == sizes_[0]; });
  }

  std::int64_t vertex_count() const {
    std::int64_t c = 1;
    for (std::int64_t a : sizes_) c = checked_mul(c, a + 1);
    return c;
  }

  Box translated(const LatticePoint& t) const { return Box(origin_ + t, sizes_); }

  template <class Fn>
  void for_each_vertex(Fn&& fn) const {
    for_each_point(origin_, upper_corner(), std::forward<Fn>(fn));
  }

  friend bool operator==(const Box&, const Box&) = default;
  friend auto operator<=>(const Box& a, const Box& b) {
    if (auto c = a.origin_ <=> b.origin_; c != 0) return c;
    return a.sizes_ <=> b.sizes_;
  }

 private:
  LatticePoint origin_;
  std::vector<std::int64_t> sizes_;
};

// The undirected edge {base, base + e_axis}; axis is 0-based.
struct GridEdge {
  LatticePoint base;
  std::size_t axis = 0;

  LatticePoint head() const {
    LatticePoint h = base;
    ++h[axis];
    return h;
  }

  // Canonicalizes the pair {x, y}; throws unless y = x +/- e_i.
  static GridEdge between(const LatticePoint& x, const LatticePoint& y) {
    if (x.dim() != y.dim()) throw InvalidInput("edge endpoints differ in dimension");
    std::optional<std::size_t> axis;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      const std::int64_t diff = y[i] - x[i];
      if (diff == 0) continue;
      if ((diff != 1 && diff != -1) || axis) throw InvalidInput("points are not grid neighbours");
      axis = i;
    }
    if (!axis) throw InvalidInput("points are not grid neighbours");
    return y[*axis] > x[*axis] ? GridEdge{x, *axis} : GridEdge{y, *axis};
  }

  GridEdge translated(const LatticePoint& t) const { return {base + t, axis}; }

  friend bool operator==(const GridEdge&, const GridEdge&) = default;
  friend auto operator<=>(const GridEdge& a, const GridEdge& b) {
    if (auto c = a.base <=> b.base; c != 0) return c;
    return a.axis <=> b.axis;
  }
};

inline bool edge_in_box(const GridEdge& e, const Box& box) {
  return box.contains(e.base) && e.base[e.axis] < box.upper(e.axis);
}

// Edges with both endpoints in R. Sorted.
inline std::vector<GridEdge> edges_in(const Box& box) {
  std::vector<GridEdge> out;
  box.for_each_vertex([&](const LatticePoint& x) {
    for (std::size_t i = 0; i < box.dim(); ++i) {
      if (x[i] < box.upper(i)) out.push_back({x, i});
    }
  });
  return out;
}

// Edges with exactly one endpoint in R. Sorted.
inline std::vector<GridEdge> adjacent_edges(const Box& box) {
  std::vector<GridEdge> out;
  box.for_each_vertex([&](const LatticePoint& x) {
    for (std::size_t i = 0; i < box.dim(); ++i) {
      if (x[i] == box.lower(i)) {
        LatticePoint below = x;
        --below[i];
        out.push_back({std::move(below), i});
      }
      if (x[i] == box.upper(i)) out.push_back({x, i});
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Edges of R sharing a vertex with an edge outside R, i.e. edges of R with an
// endpoint on the surface of R. Sorted.
inline std::vector<GridEdge> boundary_edges(const Box& box) {
  auto on_surface = [&](const LatticePoint& x) {
    for (std::size_t i = 0; i < box.dim(); ++i) {
      if (x[i] == box.lower(i) || x[i] == box.upper(i)) return true;
    }
    return false;
  };
  std::vector<GridEdge> out;
  for (auto& e : edges_in(box)) {
    if (on_surface(e.base) || on_surface(e.head())) out.push_back(std::move(e));
  }
  return out;
}

// The t-shifted 2 x ... x 2 core of an all-even box.
inline Box shifted_core(const Box& box, const LatticePoint& t) {
  if (t.dim() != box.dim()) throw InvalidInput("shift dimension does not match the box");
  LatticePoint origin(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const std::int64_t a = box.size(i);
    if (a % 2 != 0) throw InvalidInput("core requires even side lengths");
    if (t[i] < -a / 2 + 1 || t[i] > a / 2 - 1) {
      throw InvalidInput("shift " + to_string(t) + " leaves the box");
    }
    origin[i] = box.lower(i) + a / 2 - 1 + t[i];
  }
  return Box(std::move(origin), std::vector<std::int64_t>(box.dim(), 2));
}

inline Box core(const Box& box) { return shifted_core(box, LatticePoint(box.dim())); }

// T_{q_1,...,q_n}: Z^n reduced componentwise mod q. Vertex indices follow the
// lexicographic order of reduced coordinates.
class Torus {
 public:
  Torus() = default;
  explicit Torus(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw InvalidInput("torus dimension must be at least 1");
    strides_.assign(moduli_.size(), 1);
    std::int64_t count = 1;
    for (std::size_t i = moduli_.size(); i-- > 0;) {
      if (moduli_[i] < 1) throw InvalidInput("torus moduli must be positive");
      strides_[i] = static_cast<std::uint64_t>(count);
      count = checked_mul(count, moduli_[i]);
    }
    count_ = static_cast<std::uint64_t>(count);
  }

  std::size_t dim() const { return moduli_.size(); }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::int64_t modulus(std::size_t axis) const { return moduli_[axis]; }
  std::uint64_t vertex_count() const { return count_; }

  LatticePoint reduce(const LatticePoint& x) const {
    LatticePoint r = x;
    for (std::size_t i = 0; i < dim(); ++i) r[i] = floor_mod(x[i], moduli_[i]);
    return r;
  }

  std::uint64_t index(const LatticePoint& x) const {
    if (x.dim() != dim()) throw std::invalid_argument("torus index: dimension mismatch");
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      idx += static_cast<std::uint64_t>(floor_mod(x[i], moduli_[i])) * strides_[i];
    }
    return idx;
  }

  std::int64_t coordinate(std::uint64_t idx, std::size_t axis) const {
    return static_cast<std::int64_t>((idx / strides_[axis]) % static_cast<std::uint64_t>(moduli_[axis]));
  }

  LatticePoint point(std::uint64_t idx) const {
    LatticePoint p(dim());
    for (std::size_t i = 0; i < dim(); ++i) p[i] = coordinate(idx, i);
    return p;
  }

  // Index of point(idx) + sign * u.
  std::uint64_t translate(std::uint64_t idx, const LatticePoint& u, std::int64_t sign = 1) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      const std::int64_t c = coordinate(idx, i) + sign * floor_mod(u[i], moduli_[i]);
      out += static_cast<std::uint64_t>(floor_mod(c, moduli_[i])) * strides_[i];
    }
    return out;
  }

  friend bool operator==(const Torus& a, const Torus& b) { return a.moduli_ == b.moduli_; }

 private:
  std::vector<std::int64_t> moduli_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t count_ = 0;
};

// Finite Schreier graph with explicit adjacency. Edges are {x, u.x} for u in
// the generating set; each undirected edge is stored once, labelled by the
// index of its canonical generator in `directions()`.
class SchreierGraph {
 public:
  struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    std::size_t direction = 0;
  };

  // Asserts that the action is free enough for the graph to be |S|-regular:
  // the |S| translates of a vertex must be pairwise distinct and differ from
  // it. Tiny moduli that fold generators together are rejected.
  static SchreierGraph on_torus(const Torus& torus, const GeneratorSet& gens) {
    if (gens.dimension() != torus.dim()) throw InvalidInput("generating set and torus differ in dimension");
    std::vector<std::uint64_t> images;
    for (const auto& u : gens.members()) images.push_back(torus.translate(0, u));
    std::vector<std::uint64_t> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        std::find(sorted.begin(), sorted.end(), 0) != sorted.end()) {
      throw InvalidInput("torus moduli too small: generators collide, the Schreier graph is not " +
                         std::to_string(gens.size()) + "-regular");
    }
    SchreierGraph g;
    g.directions_ = gens.representatives();
    const std::uint64_t count = torus.vertex_count();
    g.points_.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) g.points_.push_back(torus.point(i));
    g.adjacency_.assign(count, {});
    for (std::uint64_t x = 0; x < count; ++x) {
      for (std::size_t d = 0; d < g.directions_.size(); ++d) {
        const std::uint64_t y = torus.translate(x, g.directions_[d]);
        g.edges_.push_back({static_cast<std::size_t>(x), static_cast<std::size_t>(y), d});
        g.adjacency_[x].push_back(static_cast<std::size_t>(y));
        g.adjacency_[y].push_back(static_cast<std::size_t>(x));
      }
    }
    return g;
  }

  // The subgraph of the Cayley graph of (Z^n, S) induced on the box.
  static SchreierGraph on_box(const Box& box, const GeneratorSet& gens) {
    if (gens.dimension() != box.dim()) throw InvalidInput("generating set and box differ in dimension");
    SchreierGraph g;
    g.directions_ = gens.representatives();
    std::map<LatticePoint, std::size_t> index;
    box.for_each_vertex([&](const LatticePoint& x) {
      index.emplace(x, g.points_.size());
      g.points_.push_back(x);
    });
    g.adjacency_.assign(g.points_.size(), {});
    for (std::size_t x = 0; x < g.points_.size(); ++x) {
      for (std::size_t d = 0; d < g.directions_.size(); ++d) {
        auto it = index.find(g.points_[x] + g.directions_[d]);
        if (it == index.end()) continue;
        g.edges_.push_back({x, it->second, d});
        g.adjacency_[x].push_back(it->second);
        g.adjacency_[it->second].push_back(x);
      }
    }
    return g;
  }

  // Arbitrary graph on vertices 0..count-1 (used for cycles and fixtures).
  static SchreierGraph from_edges(std::size_t count, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    SchreierGraph g;
    g.adjacency_.assign(count, {});
    for (std::size_t i = 0; i < count; ++i) g.points_.push_back(LatticePoint{static_cast<std::int64_t>(i)});
    for (const auto& [u, v] : edges) {
      if (u >= count || v >= count || u == v) throw InvalidInput("bad edge in from_edges");
      g.edges_.push_back({u, v, 0});
      g.adjacency_[u].push_back(v);
      g.adjacency_[v].push_back(u);
    }
    return g;
  }

  std::size_t vertex_count() const { return points_.size(); }
  const LatticePoint& vertex(std::size_t i) const { return points_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const std::size_t> neighbors(std::size_t i) const { return adjacency_[i]; }
  std::size_t degree(std::size_t i) const { return adjacency_[i].size(); }
  const std::vector<LatticePoint>& directions() const { return directions_; }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& adj : adjacency_) d = std::max(d, adj.size());
    return d;
  }

  bool is_regular(std::size_t degree) const {
    return std::all_of(adjacency_.begin(), adjacency_.end(), [&](const auto& adj) { return adj.size() == degree; });
  }

  std::optional<std::size_t> index_of(const LatticePoint& p) const {
    auto it = std::find(points_.begin(), points_.end(), p);
    if (it == points_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
  }

 private:
  std::vector<LatticePoint> points_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<LatticePoint> directions_;
};

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// BFS distances from `source`; kUnreachable across components.
inline std::vector<std::size_t> distances_from(const SchreierGraph& g, std::size_t source) {
  std::vector<std::size_t> dist(g.vertex_count(), kUnreachable);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y : g.neighbors(x)) {
      if (dist[y] != kUnreachable) continue;
      dist[y] = dist[x] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

// Shortest-path length; nullopt stands for infinity.
inline std::optional<std::size_t> path_distance(const SchreierGraph& g, std::size_t x, std::size_t y) {
  const std::size_t d = distances_from(g, x)[y];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

}  // namespace chromatile
