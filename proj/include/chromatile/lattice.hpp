#pragma once

// Integer-lattice algebra over Z^n: points, symmetric generating sets,
// Hermite normal forms, subgroup membership, and the layered decomposition of
// a generating set together with the numeric constants the layered coloring
// needs.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chromatile/checked.hpp"
#include "chromatile/error.hpp"

namespace chromatile {

class LatticePoint {
 public:
  using value_type = std::int64_t;

  LatticePoint() = default;
  explicit LatticePoint(std::size_t dim) : coords_(dim, 0) {}
  LatticePoint(std::initializer_list<value_type> coords) : coords_(coords) {}
  explicit LatticePoint(std::vector<value_type> coords) : coords_(std::move(coords)) {}

  static LatticePoint unit(std::size_t dim, std::size_t axis) {
    LatticePoint p(dim);
    p.coords_.at(axis) = 1;
    return p;
  }

  std::size_t dim() const { return coords_.size(); }
  value_type operator[](std::size_t i) const { return coords_[i]; }
  value_type& operator[](std::size_t i) { return coords_[i]; }
  std::span<const value_type> coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](value_type c) { return c == 0; });
  }

  // First nonzero coordinate positive.
  bool is_canonical() const {
    for (value_type c : coords_) {
      if (c != 0) return c > 0;
    }
    return false;
  }

  // The representative of {v, -v} whose first nonzero coordinate is positive.
  LatticePoint canonical() const { return is_canonical() || is_zero() ? *this : -*this; }

  value_type l1_norm() const {
    value_type sum = 0;
    for (value_type c : coords_) sum = checked_add(sum, checked_abs(c));
    return sum;
  }

  LatticePoint& operator+=(const LatticePoint& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = checked_add(coords_[i], o.coords_[i]);
    return *this;
  }
  LatticePoint& operator-=(const LatticePoint& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = checked_sub(coords_[i], o.coords_[i]);
    return *this;
  }
  LatticePoint& operator*=(value_type k) {
    for (auto& c : coords_) c = checked_mul(c, k);
    return *this;
  }

  friend LatticePoint operator+(LatticePoint a, const LatticePoint& b) { return a += b; }
  friend LatticePoint operator-(LatticePoint a, const LatticePoint& b) { return a -= b; }
  friend LatticePoint operator*(value_type k, LatticePoint a) { return a *= k; }
  friend LatticePoint operator*(LatticePoint a, value_type k) { return a *= k; }
  friend LatticePoint operator-(LatticePoint a) { return a *= -1; }

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint& a, const LatticePoint& b) { return a.coords_ <=> b.coords_; }

 private:
  void require_same_dim(const LatticePoint& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("lattice point dimension mismatch");
  }

  std::vector<value_type> coords_;
};

inline std::string to_string(const LatticePoint& p) {
  std::string out;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out;
}

// Parses "1,-2,3" (whitespace tolerated around entries).
inline LatticePoint parse_point(std::string_view text) {
  std::vector<std::int64_t> coords;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput("not an integer: '" + item + "'");
    }
    const auto rest = item.find_first_not_of(" \t\r", used);
    if (rest != std::string::npos) throw InvalidInput("not an integer: '" + item + "'");
    coords.push_back(value);
  }
  if (coords.empty()) throw InvalidInput("empty coordinate list");
  return LatticePoint(std::move(coords));
}

// A finite symmetric subset of Z^n not containing zero. Members are kept in
// lexicographic order.
class GeneratorSet {
 public:
  GeneratorSet() = default;

  GeneratorSet(std::size_t dim, std::vector<LatticePoint> members) : dim_(dim) {
    if (dim == 0) throw InvalidInput("dimension must be at least 1");
    for (const auto& v : members) {
      if (v.dim() != dim) throw InvalidInput("generator " + to_string(v) + " has wrong dimension");
      if (v.is_zero()) throw InvalidInput("generating set must not contain the identity");
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (const auto& v : members) {
      if (!std::binary_search(members.begin(), members.end(), -v)) {
        throw InvalidInput("generating set is not symmetric: missing " + to_string(-v));
      }
    }
    members_ = std::move(members);
  }

  // Adds -v for every listed v.
  static GeneratorSet symmetrized(std::size_t dim, const std::vector<LatticePoint>& vectors) {
    std::vector<LatticePoint> all;
    for (const auto& v : vectors) {
      if (v.dim() != dim) throw InvalidInput("generator " + to_string(v) + " has wrong dimension");
      all.push_back(v);
      all.push_back(-v);
    }
    return GeneratorSet(dim, std::move(all));
  }

  static GeneratorSet standard(std::size_t dim) {
    std::vector<LatticePoint> units;
    for (std::size_t i = 0; i < dim; ++i) units.push_back(LatticePoint::unit(dim, i));
    return symmetrized(dim, units);
  }

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<LatticePoint>& members() const { return members_; }

  bool contains(const LatticePoint& v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }

  // One canonical (lexicographically positive) element per {v, -v} pair,
  // in lexicographic order.
  std::vector<LatticePoint> representatives() const {
    std::vector<LatticePoint> reps;
    for (const auto& v : members_) {
      if (v.is_canonical()) reps.push_back(v);
    }
    return reps;
  }

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<LatticePoint> members_;
};

// Reads the line-oriented generating-set format:
//
//   n=<dim>
//   <v1>,<v2>,...      one vector per line
//
// Blank lines and '#' comments are ignored. Unless `reject_asymmetric` is
// set, only one of v, -v needs to be listed.
inline GeneratorSet parse_generating_set(std::istream& in, bool reject_asymmetric = false) {
  std::string line;
  std::optional<std::size_t> dim;
  std::vector<LatticePoint> vectors;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (!dim) {
      if (line.rfind("n=", 0) != 0) {
        throw InvalidInput("line " + std::to_string(line_no) + ": expected header 'n=<dim>'");
      }
      try {
        const long long value = std::stoll(line.substr(2));
        if (value < 1) throw InvalidInput("dimension must be at least 1");
        dim = static_cast<std::size_t>(value);
      } catch (const std::logic_error&) {
        throw InvalidInput("line " + std::to_string(line_no) + ": bad dimension");
      }
      continue;
    }
    LatticePoint v = parse_point(line);
    if (v.dim() != *dim) {
      throw InvalidInput("line " + std::to_string(line_no) + ": expected " + std::to_string(*dim) +
                         " coordinates");
    }
    vectors.push_back(std::move(v));
  }
  if (!dim) throw InvalidInput("missing header 'n=<dim>'");
  if (reject_asymmetric) return GeneratorSet(*dim, vectors);
  return GeneratorSet::symmetrized(*dim, vectors);
}

// ---------------------------------------------------------------------------
// Hermite normal form

struct HermiteForm {
  // Nonzero rows of the row-style Hermite normal form: echelon shape, positive
  // pivots, entries above each pivot reduced into [0, pivot).
  std::vector<LatticePoint> rows;
  std::vector<std::size_t> pivots;
  // Unimodular U (input rows x input rows) with U * input = [rows; 0].
  std::vector<std::vector<std::int64_t>> transform;
};

namespace detail {

inline void combine_rows(std::vector<LatticePoint>& rows, std::vector<std::vector<std::int64_t>>& u,
                         std::size_t r, std::size_t i, std::int64_t a11, std::int64_t a12,
                         std::int64_t a21, std::int64_t a22) {
  // [row_r; row_i] <- [[a11, a12], [a21, a22]] * [row_r; row_i]
  LatticePoint new_r = a11 * rows[r] + a12 * rows[i];
  LatticePoint new_i = a21 * rows[r] + a22 * rows[i];
  rows[r] = std::move(new_r);
  rows[i] = std::move(new_i);
  for (std::size_t c = 0; c < u[r].size(); ++c) {
    const std::int64_t ur = u[r][c], ui = u[i][c];
    u[r][c] = checked_add(checked_mul(a11, ur), checked_mul(a12, ui));
    u[i][c] = checked_add(checked_mul(a21, ur), checked_mul(a22, ui));
  }
}

}  // namespace detail

inline HermiteForm hermite_form(std::span<const LatticePoint> input, std::size_t dim) {
  std::vector<LatticePoint> rows(input.begin(), input.end());
  for (const auto& r : rows) {
    if (r.dim() != dim) throw std::invalid_argument("hermite_form: row dimension mismatch");
  }
  const std::size_t m = rows.size();
  std::vector<std::vector<std::int64_t>> u(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;

  HermiteForm out;
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < m; ++col) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (rows[i][col] == 0) continue;
      const std::int64_t a = rows[r][col], b = rows[i][col];
      const auto [g, x, y] = extended_gcd(a, b);
      detail::combine_rows(rows, u, r, i, x, y, -b / g, a / g);
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0) {
      rows[r] = -rows[r];
      for (auto& e : u[r]) e = checked_mul(e, -1);
    }
    const std::int64_t pivot = rows[r][col];
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t q = floor_div(rows[i][col], pivot);
      if (q == 0) continue;
      rows[i] -= q * rows[r];
      for (std::size_t c = 0; c < m; ++c) u[i][c] = checked_sub(u[i][c], checked_mul(q, u[r][c]));
    }
    out.pivots.push_back(col);
    ++r;
  }
  out.rows.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(r));
  out.transform = std::move(u);
  return out;
}

inline std::size_t rational_rank(std::span<const LatticePoint> rows, std::size_t dim) {
  return hermite_form(rows, dim).rows.size();
}

// A subgroup of Z^n stored by its Hermite basis.
class SubgroupBasis {
 public:
  SubgroupBasis() = default;

  static SubgroupBasis generated_by(std::span<const LatticePoint> generators, std::size_t dim) {
    SubgroupBasis b;
    b.dim_ = dim;
    auto hf = hermite_form(generators, dim);
    b.basis_ = std::move(hf.rows);
    b.pivots_ = std::move(hf.pivots);
    return b;
  }

  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<LatticePoint>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // True when the subgroup is all of Z^n.
  bool is_full_lattice() const {
    if (rank() != dim_) return false;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (basis_[i][pivots_[i]] != 1) return false;
    }
    return true;
  }

  bool contains(const LatticePoint& v) const {
    if (v.dim() != dim_) throw std::invalid_argument("membership: dimension mismatch");
    LatticePoint w = v;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const std::int64_t p = basis_[r][pivots_[r]];
      if (w[pivots_[r]] % p != 0) return false;
      w -= (w[pivots_[r]] / p) * basis_[r];
    }
    return w.is_zero();
  }

  // Integer coordinates of v with respect to basis(); nullopt if v is not in
  // the subgroup.
  std::optional<std::vector<std::int64_t>> coordinates(const LatticePoint& v) const {
    LatticePoint w = v;
    std::vector<std::int64_t> c(basis_.size(), 0);
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const std::int64_t p = basis_[r][pivots_[r]];
      if (w[pivots_[r]] % p != 0) return std::nullopt;
      c[r] = w[pivots_[r]] / p;
      w -= c[r] * basis_[r];
    }
    if (!w.is_zero()) return std::nullopt;
    return c;
  }

  friend bool operator==(const SubgroupBasis&, const SubgroupBasis&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<LatticePoint> basis_;
  std::vector<std::size_t> pivots_;
};

// Least k > 0 with k*v in L. Throws if v is outside the rational span of L.
inline std::int64_t smallest_multiple_in(const LatticePoint& v, const SubgroupBasis& lattice) {
  if (v.dim() != lattice.dimension()) throw std::invalid_argument("smallest_multiple_in: dimension mismatch");
  // The admissible multipliers form a subgroup kZ; refine k one pivot at a
  // time. Scaling the residue keeps the already-cleared pivots at zero.
  std::int64_t k = 1;
  LatticePoint w = v;
  const auto& basis = lattice.basis();
  const auto& pivots = lattice.pivots();
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const std::int64_t p = basis[r][pivots[r]];
    const std::int64_t entry = w[pivots[r]];
    const std::int64_t g = std::gcd(entry, p);
    const std::int64_t factor = p / g;
    if (factor != 1) {
      k = checked_mul(k, factor);
      w *= factor;
    }
    w -= (w[pivots[r]] / p) * basis[r];
  }
  if (!w.is_zero()) {
    throw std::logic_error("smallest_multiple_in: " + to_string(v) +
                           " is outside the rational span of the subgroup");
  }
  return k;
}

// Unique integer coefficients c with sum c_j * basis_j = target, for linearly
// independent basis vectors. Nullopt when no integer solution exists.
inline std::optional<std::vector<std::int64_t>> solve_in_basis(const LatticePoint& target,
                                                               std::span<const LatticePoint> basis) {
  if (basis.empty()) {
    if (target.is_zero()) return std::vector<std::int64_t>{};
    return std::nullopt;
  }
  const std::size_t dim = target.dim();
  const auto hf = hermite_form(basis, dim);
  if (hf.rows.size() != basis.size()) throw std::invalid_argument("solve_in_basis: basis is dependent");
  SubgroupBasis lattice = SubgroupBasis::generated_by(basis, dim);
  auto in_hermite = lattice.coordinates(target);
  if (!in_hermite) return std::nullopt;
  std::vector<std::int64_t> coeffs(basis.size(), 0);
  for (std::size_t r = 0; r < hf.rows.size(); ++r) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      coeffs[j] = checked_add(coeffs[j], checked_mul((*in_hermite)[r], hf.transform[r][j]));
    }
  }
  return coeffs;
}

// True iff for every s in S the cyclic group <s> meets <S \ {s, -s}> only in
// zero. Equivalently the representatives of the +/- pairs are linearly
// independent over Q: a rational relation sum c_j v_j = 0 with c_i != 0 puts
// the nonzero c_i v_i into <S \ {v_i, -v_i}>, and conversely such a common
// element is a relation.
inline bool is_linearly_independent(const GeneratorSet& set) {
  const auto reps = set.representatives();
  return rational_rank(reps, set.dimension()) == reps.size();
}

// ---------------------------------------------------------------------------
// Layered decomposition

struct Decomposition {
  std::size_t dimension = 0;
  // layers[0] = S_0, ..., layers[m] = S_m.
  std::vector<GeneratorSet> layers;
  // k[i - 1] = k_i for 1 <= i <= m.
  std::vector<std::int64_t> k;

  bool constants_ready = false;
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::int64_t gamma = 0;
  LatticePoint s;
  std::int64_t s_norm = 0;
  std::int64_t d = 0;
  // shift_coeffs[i] = coefficients of beta*s in the representatives of
  // layers[i], for every level 0 <= i <= m. gamma ranges over levels >= 1.
  std::vector<std::vector<std::int64_t>> shift_coeffs;

  std::size_t top_level() const { return layers.empty() ? 0 : layers.size() - 1; }
};

// Greedy deterministic layering: representatives are scanned in
// lexicographic order and a pair joins the current layer when the layer stays
// linearly independent. Each layer is maximal before the next one starts.
inline Decomposition decompose(const GeneratorSet& set) {
  const std::size_t n = set.dimension();
  const auto all_reps = set.representatives();
  if (!SubgroupBasis::generated_by(all_reps, n).is_full_lattice()) {
    throw InvalidInput("generating set does not generate Z^" + std::to_string(n));
  }

  Decomposition dec;
  dec.dimension = n;
  std::vector<LatticePoint> remaining = all_reps;
  while (!remaining.empty()) {
    std::vector<LatticePoint> layer;
    std::vector<LatticePoint> rest;
    for (const auto& v : remaining) {
      layer.push_back(v);
      if (rational_rank(layer, n) != layer.size()) {
        layer.pop_back();
        rest.push_back(v);
      }
    }
    dec.layers.push_back(GeneratorSet::symmetrized(n, layer));
    remaining = std::move(rest);
  }

  for (std::size_t i = 1; i < dec.layers.size(); ++i) {
    const auto prev = SubgroupBasis::generated_by(dec.layers[i - 1].representatives(), n);
    std::int64_t ki = 1;
    for (const auto& v : dec.layers[i].representatives()) {
      ki = checked_lcm(ki, smallest_multiple_in(v, prev));
    }
    dec.k.push_back(ki);
  }
  return dec;
}

// Fills alpha, beta, gamma, s, |s|, d and the shift coefficients.
//
// Every coefficient is even: beta*s = 2 * (3 * prod k_j * s), and
// prod_{j > i} k_j * s already lies in <S_i> by chaining k_j <S_j> in
// <S_{j-1}>, so the coefficients of beta*s are twice integers.
inline Decomposition compute_constants(Decomposition dec) {
  if (dec.layers.empty()) throw InvalidInput("compute_constants: empty decomposition");
  if (dec.k.size() + 1 != dec.layers.size()) throw InvalidInput("compute_constants: k not populated");
  const std::size_t n = dec.dimension;
  const auto m = static_cast<std::int64_t>(dec.layers.size() - 1);

  std::int64_t three_pow = 1;
  for (std::size_t i = 0; i < n; ++i) three_pow = checked_mul(three_pow, 3);
  dec.alpha = checked_mul(three_pow, m);
  dec.beta = 6;
  for (std::int64_t ki : dec.k) dec.beta = checked_mul(dec.beta, ki);

  const auto top_reps = dec.layers.back().representatives();
  dec.s = top_reps.front();
  dec.s_norm = dec.s.l1_norm();

  const LatticePoint target = dec.beta * dec.s;
  dec.shift_coeffs.clear();
  dec.gamma = 0;
  for (std::size_t i = 0; i < dec.layers.size(); ++i) {
    const auto reps = dec.layers[i].representatives();
    auto coeffs = solve_in_basis(target, reps);
    if (!coeffs) {
      throw std::logic_error("compute_constants: beta*s has no integer expansion in layer " +
                             std::to_string(i));
    }
    for (std::int64_t a : *coeffs) {
      if (a % 2 != 0) throw std::logic_error("compute_constants: odd shift coefficient");
      if (i >= 1) dec.gamma = std::max(dec.gamma, checked_abs(a));
    }
    dec.shift_coeffs.push_back(std::move(*coeffs));
  }

  std::int64_t d = 8;
  d = checked_mul(d, dec.gamma + 1);
  d = checked_mul(d, checked_add(dec.alpha, 1));
  d = checked_mul(d, checked_add(dec.beta, 1));
  d = checked_mul(d, dec.s_norm);
  dec.d = checked_add(d, 2);
  dec.constants_ready = true;
  return dec;
}

// Lists every violated decomposition invariant (empty when all hold).
inline std::vector<std::string> check_invariants(const Decomposition& dec, const GeneratorSet& set) {
  std::vector<std::string> problems;
  const std::size_t n = dec.dimension;
  std::set<LatticePoint> seen;
  for (std::size_t i = 0; i < dec.layers.size(); ++i) {
    const auto& layer = dec.layers[i];
    if (!is_linearly_independent(layer)) problems.push_back("layer " + std::to_string(i) + " is dependent");
    for (const auto& v : layer.members()) {
      if (!set.contains(v)) problems.push_back("layer member " + to_string(v) + " not in S");
      if (!seen.insert(v).second) problems.push_back("member " + to_string(v) + " in two layers");
    }
  }
  if (seen.size() != set.size()) problems.push_back("layers do not cover S");
  if (!dec.layers.empty() && dec.layers[0].size() != 2 * n) problems.push_back("|S_0| != 2n");

  for (std::size_t i = 1; i < dec.layers.size(); ++i) {
    const auto prev = SubgroupBasis::generated_by(dec.layers[i - 1].representatives(), n);
    const std::int64_t ki = dec.k.at(i - 1);
    const auto reps = dec.layers[i].representatives();
    for (const auto& v : reps) {
      if (!prev.contains(ki * v)) problems.push_back("k_" + std::to_string(i) + " * " + to_string(v) + " not in <S_{i-1}>");
    }
    // Minimality: for every prime p | k_i some member escapes (k_i / p) <S_i>.
    std::int64_t rem = ki;
    for (std::int64_t p = 2; rem > 1; ++p) {
      if (p * p > rem) p = rem;
      if (rem % p != 0) continue;
      while (rem % p == 0) rem /= p;
      const bool escapes = std::any_of(reps.begin(), reps.end(),
                                       [&](const LatticePoint& v) { return !prev.contains((ki / p) * v); });
      if (!escapes) problems.push_back("k_" + std::to_string(i) + " is not minimal");
    }
  }

  if (dec.constants_ready) {
    const LatticePoint target = dec.beta * dec.s;
    for (std::size_t i = 1; i < dec.layers.size(); ++i) {
      const auto lattice = SubgroupBasis::generated_by(dec.layers[i].representatives(), n);
      if (!lattice.contains(target)) problems.push_back("beta*s not in <S_" + std::to_string(i) + ">");
    }
    for (const auto& row : dec.shift_coeffs) {
      for (std::int64_t a : row) {
        if (a % 2 != 0) problems.push_back("odd shift coefficient");
      }
    }
    if (dec.d % 4 != 2) problems.push_back("d is not 2 mod 4");
    const __int128 slack = static_cast<__int128>(8) * dec.gamma * dec.alpha * dec.beta * dec.s_norm;
    if (!(static_cast<__int128>(dec.d) > slack)) problems.push_back("d does not exceed 8*gamma*alpha*beta*|s|");
  }
  return problems;
}

}  // namespace chromatile
