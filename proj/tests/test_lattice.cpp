#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "chromatile/lattice.hpp"

using namespace chromatile;

namespace {

GeneratorSet pm12() { return GeneratorSet::symmetrized(1, {LatticePoint{1}, LatticePoint{2}}); }
GeneratorSet diagonal() {
  return GeneratorSet::symmetrized(2, {LatticePoint{1, 0}, LatticePoint{0, 1}, LatticePoint{1, 1}});
}

// Brute-force membership in the span of the generators: bounded search over
// integer combinations. Only used with tiny inputs.
bool brute_member(const std::vector<LatticePoint>& gens, const LatticePoint& v, int bound) {
  const std::size_t r = gens.size();
  std::vector<int> c(r, -bound);
  while (true) {
    LatticePoint sum(v.dim());
    for (std::size_t j = 0; j < r; ++j) sum += static_cast<std::int64_t>(c[j]) * gens[j];
    if (sum == v) return true;
    std::size_t j = 0;
    while (j < r && c[j] == bound) c[j++] = -bound;
    if (j == r) return false;
    ++c[j];
  }
}

}  // namespace

TEST(LatticePoint, ParseAndPrint) {
  EXPECT_EQ(parse_point("3, -4,0"), (LatticePoint{3, -4, 0}));
  EXPECT_EQ(to_string(LatticePoint{1, -2}), "1,-2");
  EXPECT_THROW(parse_point("1,,2"), InvalidInput);
  EXPECT_THROW(parse_point("x"), InvalidInput);
}

TEST(GeneratorSet, RejectsIdentityAndAsymmetry) {
  EXPECT_THROW(GeneratorSet(1, {LatticePoint{0}}), InvalidInput);
  EXPECT_THROW(GeneratorSet(1, {LatticePoint{1}}), InvalidInput);
  EXPECT_EQ(pm12().size(), 4u);
  EXPECT_EQ(pm12().representatives(), (std::vector<LatticePoint>{LatticePoint{1}, LatticePoint{2}}));
}

TEST(GeneratorSet, ParseFileFormat) {
  std::istringstream in("# comment\nn=1\n1\n2\n");
  EXPECT_EQ(parse_generating_set(in), pm12());
  std::istringstream asym("n=1\n1\n2\n");
  EXPECT_THROW(parse_generating_set(asym, true), InvalidInput);
  std::istringstream both("n=1\n1\n-1\n2\n-2\n");
  EXPECT_EQ(parse_generating_set(both, true), pm12());
  std::istringstream bad_dim("n=2\n1\n");
  EXPECT_THROW(parse_generating_set(bad_dim), InvalidInput);
}

TEST(Hermite, MembershipMatchesBruteForce) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<LatticePoint> gens;
    for (int j = 0; j < 2; ++j) gens.push_back(LatticePoint{coord(rng), coord(rng)});
    const auto lat = SubgroupBasis::generated_by(gens, 2);
    for (int x = -3; x <= 3; ++x) {
      for (int y = -3; y <= 3; ++y) {
        const LatticePoint v{x, y};
        // Coefficients of any solution are bounded by Cramer's rule here.
        EXPECT_EQ(lat.contains(v), brute_member(gens, v, 40)) << to_string(gens[0]) << " " << to_string(gens[1])
                                                              << " v=" << to_string(v);
      }
    }
  }
}

TEST(Hermite, Idempotent) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<LatticePoint> gens;
    for (int j = 0; j < 4; ++j) gens.push_back(LatticePoint{coord(rng), coord(rng), coord(rng)});
    const auto once = hermite_form(gens, 3);
    const auto twice = hermite_form(once.rows, 3);
    EXPECT_EQ(once.rows, twice.rows);
    for (const auto& g : gens) EXPECT_TRUE(SubgroupBasis::generated_by(once.rows, 3).contains(g));
  }
}

TEST(Hermite, SmallestMultiple) {
  const auto six = SubgroupBasis::generated_by(std::vector<LatticePoint>{LatticePoint{6, 0}}, 2);
  EXPECT_EQ(smallest_multiple_in(LatticePoint{4, 0}, six), 3);
  EXPECT_EQ(smallest_multiple_in(LatticePoint{6, 0}, six), 1);
  EXPECT_THROW(smallest_multiple_in(LatticePoint{0, 1}, six), std::logic_error);
  const auto two = SubgroupBasis::generated_by(std::vector<LatticePoint>{LatticePoint{2}}, 1);
  EXPECT_EQ(smallest_multiple_in(LatticePoint{1}, two), 2);
  const auto diag = SubgroupBasis::generated_by(std::vector<LatticePoint>{LatticePoint{1, 0}, LatticePoint{0, 1}}, 2);
  EXPECT_EQ(smallest_multiple_in(LatticePoint{1, 1}, diag), 1);
}

TEST(Hermite, SmallestMultipleAgainstScan) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LatticePoint> gens{LatticePoint{coord(rng), coord(rng)}, LatticePoint{coord(rng), coord(rng)}};
    if (rational_rank(gens, 2) < 2) continue;
    const auto lat = SubgroupBasis::generated_by(gens, 2);
    const LatticePoint v{coord(rng), coord(rng)};
    if (v.is_zero()) continue;
    std::int64_t k = 1;
    while (!lat.contains(k * v)) ++k;
    EXPECT_EQ(smallest_multiple_in(v, lat), k);
  }
}

TEST(Independence, RationalRank) {
  EXPECT_TRUE(is_linearly_independent(GeneratorSet::standard(3)));
  EXPECT_FALSE(is_linearly_independent(pm12()));
  EXPECT_FALSE(is_linearly_independent(diagonal()));
  EXPECT_TRUE(is_linearly_independent(GeneratorSet::symmetrized(2, {LatticePoint{2, 1}, LatticePoint{1, 2}})));
}

TEST(Decompose, PlusMinusOneTwo) {
  const auto dec = compute_constants(decompose(pm12()));
  ASSERT_EQ(dec.layers.size(), 2u);
  EXPECT_EQ(dec.layers[0].representatives(), std::vector<LatticePoint>{LatticePoint{1}});
  EXPECT_EQ(dec.layers[1].representatives(), std::vector<LatticePoint>{LatticePoint{2}});
  EXPECT_EQ(dec.k, std::vector<std::int64_t>{1});
  EXPECT_EQ(dec.alpha, 3);
  EXPECT_EQ(dec.beta, 6);
  EXPECT_EQ(dec.s, LatticePoint{2});
  EXPECT_EQ(dec.s_norm, 2);
  EXPECT_EQ(dec.shift_coeffs[1], std::vector<std::int64_t>{6});
  EXPECT_EQ(dec.shift_coeffs[0], std::vector<std::int64_t>{12});
  EXPECT_EQ(dec.gamma, 6);
  EXPECT_EQ(dec.d, 8 * 7 * 4 * 7 * 2 + 2);
  EXPECT_TRUE(check_invariants(dec, pm12()).empty());
}

TEST(Decompose, StandardPlane) {
  const auto set = GeneratorSet::standard(2);
  const auto dec = compute_constants(decompose(set));
  EXPECT_EQ(dec.layers.size(), 1u);
  EXPECT_TRUE(dec.k.empty());
  EXPECT_EQ(dec.alpha, 0);
  EXPECT_EQ(dec.beta, 6);
  EXPECT_EQ(dec.gamma, 0);
  EXPECT_EQ(dec.s, (LatticePoint{0, 1}));
  EXPECT_EQ(dec.d, 8 * 1 * 1 * 7 * 1 + 2);
  EXPECT_TRUE(check_invariants(dec, set).empty());
}

TEST(Decompose, Diagonal) {
  const auto set = diagonal();
  const auto dec = compute_constants(decompose(set));
  ASSERT_EQ(dec.layers.size(), 2u);
  EXPECT_EQ(dec.layers[1].representatives(), std::vector<LatticePoint>{(LatticePoint{1, 1})});
  EXPECT_EQ(dec.k, std::vector<std::int64_t>{1});
  EXPECT_EQ(dec.alpha, 9);
  EXPECT_EQ(dec.beta, 6);
  EXPECT_EQ(dec.s, (LatticePoint{1, 1}));
  EXPECT_EQ(dec.shift_coeffs[0], (std::vector<std::int64_t>{6, 6}));
  EXPECT_EQ(dec.gamma, 6);
  EXPECT_EQ(dec.d % 4, 2);
  EXPECT_EQ(dec.d, 8 * 7 * 10 * 7 * 2 + 2);
  EXPECT_TRUE(check_invariants(dec, set).empty());
}

TEST(Decompose, LayersAreMaximalAndDisjoint) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<LatticePoint> vs;
    for (int j = 0; j < 4; ++j) {
      LatticePoint v{coord(rng), coord(rng)};
      if (!v.is_zero()) vs.push_back(v);
    }
    if (vs.empty()) continue;
    const auto set = GeneratorSet::symmetrized(2, vs);
    if (!SubgroupBasis::generated_by(set.representatives(), 2).is_full_lattice()) {
      EXPECT_THROW(decompose(set), InvalidInput);
      continue;
    }
    const auto dec = compute_constants(decompose(set));
    EXPECT_TRUE(check_invariants(dec, set).empty());
    EXPECT_EQ(dec.d % 4, 2);
    for (std::size_t i = 1; i < dec.shift_coeffs.size(); ++i) {
      for (auto a : dec.shift_coeffs[i]) EXPECT_EQ(a % 2, 0);
    }
  }
}
