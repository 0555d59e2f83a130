#pragma once

// The layered construction on a finite torus: for a generating set S with
// decomposition S_0, ..., S_m, color the Schreier graph of each <S_i> on its
// orbits (level m first), choosing shifted cores that avoid the cores already
// used by higher levels. Colors of level i are drawn from a fresh palette C_i
// plus one special color 0 shared by all levels.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chromatile/coloring.hpp"
#include "chromatile/error.hpp"
#include "chromatile/grid.hpp"
#include "chromatile/lattice.hpp"
#include "chromatile/rectcolor.hpp"
#include "chromatile/tiling.hpp"

namespace chromatile {

using ColorCode = TorusEdgeColoring::code_type;

inline constexpr ColorCode kSpecialColor = 0;

// Level i owns codes first_code .. first_code + size - 1.
struct LevelPalette {
  std::size_t level = 0;
  ColorCode first_code = 1;
  std::size_t size = 0;

  // Maps a rectangle color of an n_i-dimensional region (n_i = size / 2):
  // the extra plain color n_i + 1 becomes 0, the rest go to C_i.
  ColorCode code(Color c) const {
    const std::size_t ni = size / 2;
    if (c == Color::plain(ni)) return kSpecialColor;
    return static_cast<ColorCode>(first_code + c.palette_index(ni));
  }

  bool owns(ColorCode code) const { return code >= first_code && code < first_code + size; }
};

// The orbits of <S_i> on the torus. Every orbit is parametrised by the chart
// torus: z -> rep + sum_j z_j e_{i,j}.
struct CosetModel {
  std::size_t level = 0;
  std::vector<LatticePoint> generators;  // e_{i,1}, ..., e_{i,n_i}
  std::vector<std::size_t> directions;   // their indices in LayeredModel::directions
  Torus chart;
  std::vector<std::uint64_t> representatives;  // one ambient vertex per orbit

  std::size_t rank() const { return generators.size(); }
};

struct LayeredModel {
  Torus torus;
  GeneratorSet set;
  Decomposition dec;
  std::int64_t d = 0;
  std::vector<LatticePoint> directions;  // representatives of S, level by level
  std::vector<std::size_t> direction_level;
  std::vector<CosetModel> levels;
  std::vector<LevelPalette> palettes;

  // Ambient vertex of chart point z in the orbit of rep.
  std::uint64_t ambient(const CosetModel& level, std::uint64_t rep, const LatticePoint& z) const {
    LatticePoint u(torus.dim());
    for (std::size_t j = 0; j < level.rank(); ++j) u += z[j] * level.generators[j];
    return torus.translate(rep, u);
  }

  std::vector<std::string> legend() const {
    std::vector<std::string> out{"0"};
    for (const auto& p : palettes) {
      const std::size_t ni = p.size / 2;
      for (std::size_t k = 0; k < p.size; ++k) {
        out.push_back(std::to_string(p.level) + ":" + to_string(Color::from_palette_index(k, ni)));
      }
    }
    return out;
  }
};

namespace detail {

// Kernel of z -> sum z_j e_j mod q, as the Hermite form of its lattice. Rows
// of [E | I] and [diag(q) | 0] span a lattice whose vectors with zero first
// block are exactly (0, z) for z in the kernel; echelon form puts them last.
inline std::vector<LatticePoint> chart_kernel(const std::vector<LatticePoint>& gens, const Torus& torus) {
  const std::size_t n = torus.dim();
  const std::size_t r = gens.size();
  std::vector<LatticePoint> rows;
  for (std::size_t j = 0; j < r; ++j) {
    LatticePoint row(n + r);
    for (std::size_t k = 0; k < n; ++k) row[k] = gens[j][k];
    row[n + j] = 1;
    rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < n; ++k) {
    LatticePoint row(n + r);
    row[k] = torus.modulus(k);
    rows.push_back(std::move(row));
  }
  const auto hf = hermite_form(rows, n + r);
  std::vector<LatticePoint> kernel;
  for (std::size_t i = 0; i < hf.rows.size(); ++i) {
    if (hf.pivots[i] < n) continue;
    LatticePoint z(r);
    for (std::size_t j = 0; j < r; ++j) z[j] = hf.rows[i][n + j];
    kernel.push_back(std::move(z));
  }
  return kernel;
}

}  // namespace detail

// Orbit charts for every level. d defaults to the decomposition's d.
inline LayeredModel build_model(const GeneratorSet& set, const Decomposition& dec,
                                const std::vector<std::int64_t>& moduli,
                                std::optional<std::int64_t> d_override = std::nullopt) {
  if (!dec.constants_ready) throw InvalidInput("build_model: decomposition constants not computed");
  const std::size_t n = set.dimension();
  if (moduli.size() != n) throw InvalidInput("moduli dimension does not match the generating set");
  LayeredModel model{Torus(moduli), set, dec, d_override.value_or(dec.d), {}, {}, {}, {}};
  if (model.d < 2 || model.d % 4 != 2) {
    throw Infeasible("d=" + std::to_string(model.d) + " is not 2 mod 4");
  }

  std::vector<std::uint64_t> images;
  for (const auto& u : set.members()) images.push_back(model.torus.translate(0, u));
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end() || images.front() == 0) {
    throw Infeasible("torus moduli too small: generators collide modulo the torus");
  }

  ColorCode next_code = 1;
  for (std::size_t i = 0; i < dec.layers.size(); ++i) {
    CosetModel level;
    level.level = i;
    level.generators = dec.layers[i].representatives();
    const std::size_t r = level.rank();
    for (const auto& g : level.generators) {
      level.directions.push_back(model.directions.size());
      model.directions.push_back(g);
      model.direction_level.push_back(i);
    }
    model.palettes.push_back({i, next_code, 2 * r});
    next_code = static_cast<ColorCode>(next_code + 2 * r);

    const std::string where = "level " + std::to_string(i);
    const auto kernel = detail::chart_kernel(level.generators, model.torus);
    if (kernel.size() != r) throw std::logic_error(where + ": orbit kernel is not of full rank");
    std::vector<std::int64_t> circumference(r);
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < r; ++k) {
        if (k != j && kernel[j][k] != 0) {
          throw Infeasible(where + ": orbits are not products of cycles along the generators (kernel row " +
                           to_string(kernel[j]) + ")");
        }
      }
      circumference[j] = kernel[j][j];
      if (circumference[j] < 3 || !representable(circumference[j], model.d)) {
        throw Infeasible(where + ": circumference " + std::to_string(circumference[j]) + " along " +
                         to_string(level.generators[j]) + " is not a sum of " + std::to_string(model.d + 1) +
                         "- and " + std::to_string(model.d + 2) + "-vertex segments");
      }
    }
    level.chart = Torus(circumference);

    // Walk each orbit with an odometer; c_j e_j vanishes on the torus, so
    // stepping past the last chart coordinate wraps by itself.
    std::vector<bool> seen(model.torus.vertex_count(), false);
    for (std::uint64_t v = 0; v < seen.size(); ++v) {
      if (seen[v]) continue;
      level.representatives.push_back(v);
      std::vector<std::int64_t> z(r, 0);
      std::uint64_t cur = v;
      bool done = false;
      while (!done) {
        if (seen[cur]) throw std::logic_error(where + ": orbit chart is not injective");
        seen[cur] = true;
        for (std::size_t j = r;;) {
          if (j == 0) {
            done = true;
            break;
          }
          --j;
          cur = model.torus.translate(cur, level.generators[j]);
          if (++z[j] < circumference[j]) break;
          z[j] = 0;
        }
      }
    }
    model.levels.push_back(std::move(level));
  }
  return model;
}

// One brick tiling per level chart, offsets all zero.
inline std::vector<Tiling> default_tilings(const LayeredModel& model) {
  std::vector<Tiling> out;
  for (const auto& level : model.levels) out.push_back(brick_tiling(level.chart, model.d));
  return out;
}

struct RegionChoice {
  std::size_t level = 0;
  std::size_t coset = 0;
  std::size_t region = 0;
  bool has_core = false;
  std::int64_t a = 0;
  LatticePoint t;
};

struct LayeredResult {
  TorusEdgeColoring coloring;
  std::vector<std::vector<bool>> k_sets;  // per level, by ambient vertex
  std::vector<Tiling> tilings;
  std::vector<RegionChoice> choices;
  // Largest number of points x, beta s x, ..., alpha beta s x (x in a core)
  // found in a single K_j of a higher level.
  std::size_t pigeonhole_max = 0;
};

// Called after each level with the level index and the coloring so far.
using LevelCallback = std::function<void(std::size_t, const TorusEdgeColoring&)>;

inline LayeredResult run_layered(const LayeredModel& model, std::vector<Tiling> tilings,
                                 const LevelCallback& on_level = {}) {
  const auto& dec = model.dec;
  const std::size_t levels = model.levels.size();
  if (tilings.size() != levels) throw InvalidInput("run_layered: one tiling per level required");
  for (std::size_t i = 0; i < levels; ++i) {
    if (!(tilings[i].torus == model.levels[i].chart) || tilings[i].d != model.d) {
      throw InvalidInput("run_layered: tiling " + std::to_string(i) + " does not match its level chart");
    }
    if (auto report = validate_tiling(tilings[i]); !report) {
      throw InvalidInput("run_layered: tiling " + std::to_string(i) + ": " + report.problems.front());
    }
  }

  LayeredResult res;
  res.coloring = TorusEdgeColoring(model.torus, model.directions, model.legend());
  res.k_sets.assign(levels, std::vector<bool>(model.torus.vertex_count(), false));
  const LatticePoint beta_s = dec.beta * dec.s;

  for (std::size_t i = levels; i-- > 0;) {
    const CosetModel& level = model.levels[i];
    const Tiling& tiling = tilings[i];
    const LevelPalette& palette = model.palettes[i];
    const std::size_t r = level.rank();
    const LatticePoint coeffs(dec.shift_coeffs.at(i));
    std::map<std::pair<std::vector<std::int64_t>, LatticePoint>, EdgeColoring> cache;

    auto in_higher_k = [&](std::uint64_t v) {
      for (std::size_t j = i + 1; j < levels; ++j) {
        if (res.k_sets[j][v]) return true;
      }
      return false;
    };

    for (std::size_t c = 0; c < level.representatives.size(); ++c) {
      const std::uint64_t rep = level.representatives[c];
      for (std::size_t ri = 0; ri < tiling.regions.size(); ++ri) {
        const Box& region = tiling.regions[ri];
        RegionChoice choice{i, c, ri, has_core(region, model.d, CoreMode::core), 0, LatticePoint(r)};
        if (choice.has_core) {
          std::vector<std::uint64_t> core_vertices;
          core(region).for_each_vertex(
              [&](const LatticePoint& z) { core_vertices.push_back(model.ambient(level, rep, z)); });

          for (std::uint64_t x : core_vertices) {
            for (std::size_t j = i + 1; j < levels; ++j) {
              std::size_t hits = 0;
              for (std::int64_t a = 0; a <= dec.alpha; ++a) {
                if (res.k_sets[j][model.torus.translate(x, beta_s, a)]) ++hits;
              }
              res.pigeonhole_max = std::max(res.pigeonhole_max, hits);
            }
          }

          std::optional<std::int64_t> chosen;
          for (std::int64_t a = 0; a <= dec.alpha && !chosen; ++a) {
            bool clear = true;
            for (std::uint64_t x : core_vertices) {
              if (in_higher_k(model.torus.translate(x, beta_s, a))) {
                clear = false;
                break;
              }
            }
            if (clear) chosen = a;
          }
          const std::string where = "level " + std::to_string(i) + " orbit " + std::to_string(c) + " region " +
                                    std::to_string(ri) + " at " + to_string(region.origin());
          if (!chosen) {
            throw Infeasible(where + ": every shift a in [0, " + std::to_string(dec.alpha) +
                             "] meets a higher-level core; d is too small");
          }
          choice.a = *chosen;
          choice.t = choice.a * coeffs;
          if (!admissible_core_shift(model.d, choice.t)) {
            throw Infeasible(where + ": shift " + to_string(choice.t) + " (a=" + std::to_string(choice.a) +
                             ") leaves the admissible core range for d=" + std::to_string(model.d));
          }
          shifted_core(region, choice.t).for_each_vertex([&](const LatticePoint& z) {
            const std::uint64_t v = model.ambient(level, rep, z);
            for (std::size_t j = i; j < levels; ++j) {
              if (res.k_sets[j][v]) throw std::logic_error(where + ": shifted cores overlap");
            }
            res.k_sets[i][v] = true;
          });
        }

        auto key = std::make_pair(region.sizes(), choice.t);
        auto it = cache.find(key);
        if (it == cache.end()) {
          it = cache.emplace(key, region_coloring(region.sizes(), model.d, CoreMode::shifted, choice.t)).first;
        }
        for (const auto& [e, color] : it->second) {
          const std::uint64_t v = model.ambient(level, rep, region.origin() + e.base);
          res.coloring.assign(v, level.directions[e.axis], palette.code(color));
        }
        res.choices.push_back(std::move(choice));
      }
    }
    if (on_level) on_level(i, res.coloring);
  }
  res.tilings = std::move(tilings);
  return res;
}

struct LayeredReport {
  bool total = false;
  bool proper = false;
  std::size_t colors_used = 0;
  std::size_t color_bound = 0;  // |S| + 1
  std::uint64_t special_edges = 0;
  std::uint64_t special_outside_k = 0;
  std::uint64_t k_overlaps = 0;
  std::uint64_t foreign_palette_edges = 0;
  std::vector<std::uint64_t> k_sizes;
  std::size_t pigeonhole_max = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Independent certificate for a layered coloring.
inline LayeredReport verify_layered(const LayeredResult& res, const LayeredModel& model) {
  LayeredReport rep;
  const auto& coloring = res.coloring;
  const auto& torus = coloring.torus();
  const auto& dirs = coloring.directions();

  const auto check = check_torus_coloring(coloring);
  rep.total = check.total;
  rep.proper = check.proper;
  rep.colors_used = check.colors_used;
  rep.color_bound = model.set.size() + 1;
  rep.pigeonhole_max = res.pigeonhole_max;
  if (!check.total) rep.violations.push_back(std::to_string(check.uncolored) + " uncolored edges");
  if (!check.proper) {
    rep.violations.push_back("improper at " + std::to_string(check.conflicting_vertices) + " vertices, first " +
                             to_string(torus.point(*check.first_conflict)));
  }
  if (rep.colors_used > rep.color_bound) {
    rep.violations.push_back(std::to_string(rep.colors_used) + " colors exceed |S|+1 = " +
                             std::to_string(rep.color_bound));
  }
  if (dirs.size() * 2 != model.set.size()) rep.violations.push_back("directions do not cover S");

  for (const auto& k : res.k_sets) {
    rep.k_sizes.push_back(static_cast<std::uint64_t>(std::count(k.begin(), k.end(), true)));
  }
  for (std::uint64_t v = 0; v < torus.vertex_count(); ++v) {
    std::size_t owners = 0;
    for (const auto& k : res.k_sets) owners += k[v] ? 1 : 0;
    if (owners > 1) ++rep.k_overlaps;
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      const ColorCode code = coloring.code(v, d);
      if (code == TorusEdgeColoring::kUncolored) continue;
      const std::size_t lvl = model.direction_level[d];
      if (code == kSpecialColor) {
        ++rep.special_edges;
        const std::uint64_t w = torus.translate(v, dirs[d]);
        if (!(res.k_sets[lvl][v] && res.k_sets[lvl][w])) ++rep.special_outside_k;
      } else if (!model.palettes[lvl].owns(code)) {
        ++rep.foreign_palette_edges;
      }
    }
  }
  if (rep.k_overlaps) rep.violations.push_back(std::to_string(rep.k_overlaps) + " vertices in two core sets");
  if (rep.special_outside_k) {
    rep.violations.push_back(std::to_string(rep.special_outside_k) + " color-0 edges outside the core sets");
  }
  if (rep.foreign_palette_edges) {
    rep.violations.push_back(std::to_string(rep.foreign_palette_edges) + " edges colored from another level's palette");
  }
  return rep;
}

}  // namespace chromatile
