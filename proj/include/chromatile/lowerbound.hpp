#pragma once

// Finite witnesses for the lower bound: the forbidden patterns describing
// perfect matchings, labelings of tori that avoid them, exact matching
// search, and exact chromatic index by backtracking.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "chromatile/error.hpp"
#include "chromatile/grid.hpp"
#include "chromatile/lattice.hpp"

namespace chromatile {

// A finite pattern p : support -> S.
struct SftPattern {
  std::vector<LatticePoint> support;
  std::vector<LatticePoint> labels;
};

// For S = {u_1, ..., u_2m} (sorted), the patterns p_{i,j}, i != j, with
// p(0) = u_i and p(u_i) = -u_j. Avoiding all of them says phi(phi(x).x) = -phi(x).
inline std::vector<SftPattern> matching_patterns(const GeneratorSet& set) {
  const auto& u = set.members();
  const LatticePoint zero(set.dimension());
  std::vector<SftPattern> out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (i == j) continue;
      out.push_back({{zero, u[i]}, {u[i], -u[j]}});
    }
  }
  return out;
}

// phi(x) is an index into set.members().
struct TorusLabeling {
  Torus torus;
  std::vector<std::size_t> phi;
};

namespace detail {

inline void require_embeddable(const Torus& torus, const GeneratorSet& set, const std::vector<SftPattern>& patterns) {
  for (const auto& p : patterns) {
    for (const auto& f : p.support) {
      for (std::size_t a = 0; a < torus.dim(); ++a) {
        if (torus.modulus(a) <= checked_abs(f[a])) throw InvalidInput("torus modulus too small for the pattern supports");
      }
    }
  }
  std::vector<std::uint64_t> images{0};
  for (const auto& u : set.members()) images.push_back(torus.translate(0, u));
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
    throw InvalidInput("generators coincide modulo the torus; pattern occurrence is ill-defined");
  }
}

}  // namespace detail

// True iff no pattern occurs in the periodic pullback of phi.
inline bool respects(const TorusLabeling& labeling, const GeneratorSet& set, const std::vector<SftPattern>& patterns) {
  const Torus& torus = labeling.torus;
  if (labeling.phi.size() != torus.vertex_count()) throw InvalidInput("labeling is not total");
  detail::require_embeddable(torus, set, patterns);
  const auto& members = set.members();
  for (const auto& p : patterns) {
    for (std::uint64_t g = 0; g < torus.vertex_count(); ++g) {
      bool occurs = true;
      for (std::size_t k = 0; k < p.support.size() && occurs; ++k) {
        occurs = members[labeling.phi[torus.translate(g, p.support[k])]] == p.labels[k];
      }
      if (occurs) return false;
    }
  }
  return true;
}

// The equivalent pointwise rule phi(phi(x).x) = -phi(x).
inline bool satisfies_matching_rule(const TorusLabeling& labeling, const GeneratorSet& set) {
  const auto& members = set.members();
  for (std::uint64_t x = 0; x < labeling.torus.vertex_count(); ++x) {
    const LatticePoint& u = members[labeling.phi[x]];
    if (members[labeling.phi[labeling.torus.translate(x, u)]] != -u) return false;
  }
  return true;
}

using VertexPair = std::pair<std::uint64_t, std::uint64_t>;

// The edges {x, phi(x).x}, each listed once with the smaller index first.
inline std::vector<VertexPair> induced_matching(const TorusLabeling& labeling, const GeneratorSet& set) {
  if (!respects(labeling, set, matching_patterns(set))) throw InvalidInput("labeling does not respect the matching patterns");
  std::vector<VertexPair> out;
  for (std::uint64_t x = 0; x < labeling.torus.vertex_count(); ++x) {
    const std::uint64_t y = labeling.torus.translate(x, set.members()[labeling.phi[x]]);
    if (x < y) out.emplace_back(x, y);
  }
  return out;
}

inline bool is_perfect_matching(std::uint64_t vertex_count, const std::vector<VertexPair>& edges) {
  std::vector<int> covered(vertex_count, 0);
  for (const auto& [x, y] : edges) {
    if (x >= vertex_count || y >= vertex_count || x == y) return false;
    ++covered[x];
    ++covered[y];
  }
  return std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; });
}

struct LabelingSearch {
  std::uint64_t candidates = 0;
  std::vector<TorusLabeling> found;
};

// Every labeling T -> S, checked against the matching patterns. Refuses
// searches above `max_candidates`.
inline LabelingSearch search_respecting_labelings(const Torus& torus, const GeneratorSet& set,
                                                  std::uint64_t max_candidates = 1u << 24) {
  const auto patterns = matching_patterns(set);
  detail::require_embeddable(torus, set, patterns);
  const std::uint64_t v = torus.vertex_count();
  const std::size_t k = set.size();
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < v; ++i) {
    if (total > max_candidates / k) throw InvalidInput("labeling search space too large");
    total *= k;
  }
  LabelingSearch out;
  TorusLabeling current{torus, std::vector<std::size_t>(v, 0)};
  for (std::uint64_t c = 0; c < total; ++c) {
    ++out.candidates;
    if (respects(current, set, patterns)) out.found.push_back(current);
    for (std::uint64_t i = 0; i < v; ++i) {
      if (++current.phi[i] < k) break;
      current.phi[i] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matchings

// Exact maximum matching by exhaustive search with memoisation on the set of
// still-available vertices. Intended for at most 20 vertices.
inline std::size_t maximum_matching_exhaustive(const SchreierGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 20) throw InvalidInput("exhaustive matching is limited to 20 vertices");
  std::vector<std::int8_t> memo(std::size_t{1} << n, -1);
  auto best = [&](auto& self, std::uint32_t avail) -> std::int8_t {
    if (avail == 0) return 0;
    if (memo[avail] >= 0) return memo[avail];
    const std::size_t v = static_cast<std::size_t>(std::countr_zero(avail));
    const std::uint32_t rest = avail & ~(std::uint32_t{1} << v);
    std::int8_t result = self(self, rest);
    for (std::size_t w : g.neighbors(v)) {
      if (w != v && (rest >> w & 1u)) {
        result = std::max<std::int8_t>(result, static_cast<std::int8_t>(1 + self(self, rest & ~(std::uint32_t{1} << w))));
      }
    }
    return memo[avail] = result;
  };
  const std::uint32_t all = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  return static_cast<std::size_t>(best(best, all));
}

// Edmonds' blossom algorithm; returns mate[v] or -1.
inline std::vector<long> maximum_matching_blossom(const SchreierGraph& g) {
  const long n = static_cast<long>(g.vertex_count());
  std::vector<long> match(n, -1), parent(n), base(n);
  std::vector<char> used(n), blossom(n), on_path(n);

  auto lca = [&](long a, long b) {
    std::fill(on_path.begin(), on_path.end(), 0);
    while (true) {
      a = base[a];
      on_path[a] = 1;
      if (match[a] == -1) break;
      a = parent[match[a]];
    }
    while (true) {
      b = base[b];
      if (on_path[b]) return b;
      b = parent[match[b]];
    }
  };
  auto mark_path = [&](long v, long b, long child) {
    while (base[v] != b) {
      blossom[base[v]] = blossom[base[match[v]]] = 1;
      parent[v] = child;
      child = match[v];
      v = parent[match[v]];
    }
  };
  auto find_path = [&](long root) -> long {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    std::iota(base.begin(), base.end(), 0L);
    used[root] = 1;
    std::queue<long> q;
    q.push(root);
    while (!q.empty()) {
      const long v = q.front();
      q.pop();
      for (std::size_t w : g.neighbors(static_cast<std::size_t>(v))) {
        const long to = static_cast<long>(w);
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] != -1 && parent[match[to]] != -1)) {
          const long cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (long i = 0; i < n; ++i) {
            if (blossom[base[i]]) {
              base[i] = cur;
              if (!used[i]) {
                used[i] = 1;
                q.push(i);
              }
            }
          }
        } else if (parent[to] == -1) {
          parent[to] = v;
          if (match[to] == -1) return to;
          used[match[to]] = 1;
          q.push(match[to]);
        }
      }
    }
    return -1;
  };

  for (long v = 0; v < n; ++v) {
    if (match[v] != -1) continue;
    long to = find_path(v);
    while (to != -1) {
      const long pv = parent[to];
      const long next = match[pv];
      match[to] = pv;
      match[pv] = to;
      to = next;
    }
  }
  return match;
}

inline std::size_t maximum_matching_size(const SchreierGraph& g) {
  const auto mate = maximum_matching_blossom(g);
  return static_cast<std::size_t>(std::count_if(mate.begin(), mate.end(), [](long m) { return m >= 0; })) / 2;
}

// Exhaustive for at most 12 vertices, blossom otherwise.
inline bool has_perfect_matching(const SchreierGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n % 2 != 0) return false;
  const std::size_t size = n <= 12 ? maximum_matching_exhaustive(g) : maximum_matching_size(g);
  return 2 * size == n;
}

// ---------------------------------------------------------------------------
// Chromatic index

namespace detail {

struct EdgeColorSearch {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::uint64_t> used;  // per vertex, bitmask of colors at it
  std::vector<int> color;
  std::size_t k = 0;
  std::uint64_t nodes = 0;

  std::uint64_t available(std::size_t e) const {
    const auto [u, v] = edges[e];
    const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
    return all & ~(used[u] | used[v]);
  }

  void paint(std::size_t e, int c) {
    color[e] = c;
    used[edges[e].first] |= std::uint64_t{1} << c;
    used[edges[e].second] |= std::uint64_t{1} << c;
  }
  void unpaint(std::size_t e) {
    const int c = color[e];
    color[e] = -1;
    used[edges[e].first] &= ~(std::uint64_t{1} << c);
    used[edges[e].second] &= ~(std::uint64_t{1} << c);
  }

  // Most constrained uncolored edge first.
  bool solve() {
    ++nodes;
    std::size_t pick = edges.size();
    int fewest = 65;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (color[e] != -1) continue;
      const int options = std::popcount(available(e));
      if (options < fewest) {
        fewest = options;
        pick = e;
        if (options == 0) return false;
      }
    }
    if (pick == edges.size()) return true;
    for (std::uint64_t avail = available(pick); avail; avail &= avail - 1) {
      paint(pick, std::countr_zero(avail));
      if (solve()) return true;
      unpaint(pick);
    }
    return false;
  }
};

}  // namespace detail

// Proper edge k-coloring (colors 0..k-1 per edge of g.edges()), if any. The
// edges at a vertex of maximum degree are fixed to 0, 1, ... up front.
inline std::optional<std::vector<int>> edge_coloring_with(const SchreierGraph& g, std::size_t k) {
  if (k > 64) throw InvalidInput("at most 64 colors supported");
  detail::EdgeColorSearch s;
  for (const auto& e : g.edges()) {
    if (e.u == e.v) return std::nullopt;
    s.edges.emplace_back(e.u, e.v);
  }
  s.used.assign(g.vertex_count(), 0);
  s.color.assign(s.edges.size(), -1);
  s.k = k;
  if (!s.edges.empty()) {
    std::size_t hub = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (g.degree(v) > g.degree(hub)) hub = v;
    }
    if (g.degree(hub) > k) return std::nullopt;
    int next = 0;
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
      if (s.edges[e].first == hub || s.edges[e].second == hub) s.paint(e, next++);
    }
  }
  if (!s.solve()) return std::nullopt;
  return s.color;
}

// Least k <= k_max with a proper edge k-coloring; nullopt means "> k_max".
inline std::optional<std::size_t> chromatic_index(const SchreierGraph& g, std::size_t k_max) {
  if (g.edges().empty()) return 0;
  for (std::size_t k = g.max_degree(); k <= k_max; ++k) {
    if (edge_coloring_with(g, k)) return k;
  }
  return std::nullopt;
}

// Color axis * 2 + (x_axis mod 2) on a torus with even moduli: a proper
// 2n-coloring of the standard Schreier graph.
inline std::vector<int> parity_edge_coloring(const SchreierGraph& g) {
  std::vector<int> out;
  for (const auto& e : g.edges()) {
    const auto& dir = g.directions()[e.direction];
    std::size_t axis = 0;
    while (axis < dir.dim() && dir[axis] == 0) ++axis;
    out.push_back(static_cast<int>(2 * axis + static_cast<std::size_t>(floor_mod(g.vertex(e.u)[axis], 2))));
  }
  return out;
}

inline bool is_proper_edge_coloring(const SchreierGraph& g, const std::vector<int>& colors) {
  std::vector<std::vector<int>> at(g.vertex_count());
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    at[g.edges()[e].u].push_back(colors[e]);
    at[g.edges()[e].v].push_back(colors[e]);
  }
  for (auto& list : at) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) return false;
  }
  return true;
}

}  // namespace chromatile
