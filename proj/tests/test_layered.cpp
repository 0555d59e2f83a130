#include <gtest/gtest.h>

#include "chromatile/layered.hpp"

using namespace chromatile;

namespace {

GeneratorSet pm12() { return GeneratorSet::symmetrized(1, {LatticePoint{1}, LatticePoint{2}}); }
GeneratorSet diagonal() {
  return GeneratorSet::symmetrized(2, {LatticePoint{1, 0}, LatticePoint{0, 1}, LatticePoint{1, 1}});
}

LayeredModel model_for(const GeneratorSet& set, std::vector<std::int64_t> moduli, std::optional<std::int64_t> d) {
  return build_model(set, compute_constants(decompose(set)), moduli, d);
}

// No vertex sees the same color twice among its colored edges.
bool partially_proper(const TorusEdgeColoring& c) {
  const auto& torus = c.torus();
  const auto& dirs = c.directions();
  std::vector<std::vector<int>> at(torus.vertex_count());
  for (std::uint64_t v = 0; v < torus.vertex_count(); ++v) {
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      if (auto code = c.at(v, d)) {
        at[v].push_back(*code);
        at[torus.translate(v, dirs[d])].push_back(*code);
      }
    }
  }
  for (auto& colors : at) {
    std::sort(colors.begin(), colors.end());
    if (std::adjacent_find(colors.begin(), colors.end()) != colors.end()) return false;
  }
  return true;
}

}  // namespace

TEST(LayeredModel, CosetCharts) {
  const auto model = model_for(pm12(), {14}, 6);
  ASSERT_EQ(model.levels.size(), 2u);
  EXPECT_EQ(model.levels[0].chart.moduli(), std::vector<std::int64_t>{14});
  EXPECT_EQ(model.levels[0].representatives.size(), 1u);
  EXPECT_EQ(model.levels[1].chart.moduli(), std::vector<std::int64_t>{7});
  EXPECT_EQ(model.levels[1].representatives.size(), 2u);
  EXPECT_EQ(model.legend().size(), 5u);
  EXPECT_EQ(model.palettes[0].size, 2u);
  EXPECT_EQ(model.palettes[1].size, 2u);
}

TEST(LayeredModel, RejectsBadParameters) {
  EXPECT_THROW(model_for(pm12(), {14}, 8), Infeasible);
  EXPECT_THROW(model_for(pm12(), {13}, 6), Infeasible);
  EXPECT_THROW(model_for(GeneratorSet::standard(2), {14}, 6), InvalidInput);
}

TEST(Layered, ShiftOutOfRangeIsInfeasible) {
  const auto model = model_for(pm12(), {14}, 6);
  EXPECT_THROW(run_layered(model, default_tilings(model)), Infeasible);
}

TEST(Layered, StandardPlaneSingleLevel) {
  const auto model = model_for(GeneratorSet::standard(2), {14, 21}, 6);
  const auto res = run_layered(model, default_tilings(model));
  const auto rep = verify_layered(res, model);
  EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
  EXPECT_TRUE(rep.total);
  EXPECT_TRUE(rep.proper);
  EXPECT_LE(rep.colors_used, 5u);
}

TEST(Layered, DiagonalPlane) {
  const auto model = model_for(diagonal(), {15, 15}, 14);
  std::vector<std::size_t> seen_levels;
  const auto res = run_layered(model, default_tilings(model), [&](std::size_t level, const TorusEdgeColoring& c) {
    seen_levels.push_back(level);
    EXPECT_TRUE(partially_proper(c));
    // Every direction of this level or above is fully colored already.
    for (std::uint64_t v = 0; v < c.torus().vertex_count(); ++v) {
      for (std::size_t d = 0; d < c.directions().size(); ++d) {
        const bool done = c.at(v, d).has_value();
        EXPECT_EQ(done, model.direction_level[d] >= level);
      }
    }
  });
  EXPECT_EQ(seen_levels, (std::vector<std::size_t>{1, 0}));
  const auto rep = verify_layered(res, model);
  EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
  EXPECT_LE(rep.colors_used, 7u);
}

TEST(Layered, PaletteAndCoreSets) {
  const auto model = model_for(diagonal(), {15, 15}, 14);
  const auto res = run_layered(model, default_tilings(model));
  const auto& c = res.coloring;
  for (std::uint64_t v = 0; v < c.torus().vertex_count(); ++v) {
    for (std::size_t d = 0; d < c.directions().size(); ++d) {
      const auto code = c.code(v, d);
      const auto lvl = model.direction_level[d];
      if (code == kSpecialColor) {
        EXPECT_TRUE(res.k_sets[lvl][v]);
        EXPECT_TRUE(res.k_sets[lvl][c.torus().translate(v, c.directions()[d])]);
      } else {
        EXPECT_TRUE(model.palettes[lvl].owns(code));
      }
    }
  }
  for (std::uint64_t v = 0; v < c.torus().vertex_count(); ++v) {
    EXPECT_LE(int(res.k_sets[0][v]) + int(res.k_sets[1][v]), 1);
  }
}

TEST(Layered, CorruptionIsReported) {
  const auto model = model_for(diagonal(), {15, 15}, 14);
  auto res = run_layered(model, default_tilings(model));
  const auto v = model.torus.index(LatticePoint{4, 9});
  res.coloring.set(v, 0, res.coloring.code(v, 1));
  const auto rep = verify_layered(res, model);
  EXPECT_FALSE(rep.proper);
  EXPECT_FALSE(rep.ok());
}

TEST(Layered, MissingLevelIsReported) {
  const auto model = model_for(diagonal(), {15, 15}, 14);
  auto res = run_layered(model, default_tilings(model));
  for (std::uint64_t v = 0; v < model.torus.vertex_count(); ++v) {
    for (std::size_t d = 0; d < model.directions.size(); ++d) {
      if (model.direction_level[d] == 1) res.coloring.clear(v, d);
    }
  }
  const auto rep = verify_layered(res, model);
  EXPECT_FALSE(rep.total);
  EXPECT_FALSE(rep.ok());
}

TEST(Layered, Deterministic) {
  const auto model = model_for(diagonal(), {15, 15}, 14);
  EXPECT_EQ(run_layered(model, default_tilings(model)).coloring, run_layered(model, default_tilings(model)).coloring);
}
