// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "chromatile/chromatile.hpp"
#include "fixtures.hpp"

using namespace chromatile;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<std::vector<std::int64_t>> all_sizes(std::size_t n, std::int64_t max_side) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> s(n, 1);
  while (true) {
    out.push_back(s);
    std::size_t i = 0;
    while (i < n && s[i] == max_side) s[i++] = 1;
    if (i == n) break;
    ++s[i];
  }
  return out;
}

std::vector<LatticePoint> all_shifts(std::size_t n, std::int64_t d) {
  const std::int64_t k = (d - 2) / 4;
  std::vector<LatticePoint> out;
  LatticePoint t(std::vector<std::int64_t>(n, -2 * k));
  while (true) {
    out.push_back(t);
    std::size_t i = 0;
    while (i < n && t[i] == 2 * k) t[i++] = -2 * k;
    if (i == n) break;
    t[i] += 2;
  }
  return out;
}

Outcome rectangle_sweep() {
  Outcome o;
  std::size_t bc1_count = 0, bc2_count = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& sizes : all_sizes(n, 5)) {
      const Box box(LatticePoint(n), sizes);
      const auto c1 = color_bc1(box);
      ++bc1_count;
      if (!verify_proper(c1) || !verify_boundary_condition(c1, box) || c1.colors_used().size() > 2 * n + 1) {
        o.pass = false;
        o.detail = "bc1 failed on " + detail::join_ints(sizes);
      }
      for (std::size_t a = 0; a < n; ++a) {
        if (sizes[a] % 2 == 0) continue;
        const auto c2 = color_bc2(box, a);
        ++bc2_count;
        const auto used = c2.colors_used();
        if (!verify_proper(c2) || !verify_boundary_condition(c2, box) || used.size() > 2 * n ||
            used.count(Color::plain(n))) {
          o.pass = false;
          o.detail = "bc2 failed on " + detail::join_ints(sizes) + " axis " + std::to_string(a + 1);
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(bc1_count) + " bc1 boxes, " + std::to_string(bc2_count) + " bc2 colorings";
  return o;
}

Outcome core_sweep() {
  Outcome o;
  std::size_t total = 0, interior = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::int64_t d : {2, 6, 10}) {
      const Box box = Box::cube(n, d);
      for (const auto& t : all_shifts(n, d)) {
        if (!admissible_core_shift(d, t)) {
          o.pass = false;
          o.detail = "enumerated shift rejected";
        }
        const auto c = color_shifted_core(box, t);
        ++total;
        interior += interior_core_shift(d, t);
        if (!verify_proper(c) || !verify_boundary_condition(c, box) || !verify_shifted_core(c, box, t)) {
          o.pass = false;
          o.detail = "n=" + std::to_string(n) + " d=" + std::to_string(d) + " t=" + to_string(t);
        }
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(total) + " (n, d, t) cases, " + std::to_string(interior) +
               " inside [-2k+2, 2k-2], rest at |t_i| = 2k";
  }
  return o;
}

Outcome figure_fixture() {
  Outcome o;
  const auto box = fixtures::figure_box();
  const auto c = fixtures::figure_coloring();
  if (!verify_proper(c) || !verify_boundary_condition(c, box)) return {false, "fixture rejected"};
  std::size_t mutations = 0;
  for (const auto& [e, col] : c) {
    for (const auto& [f, other] : c) {
      if (e == f) continue;
      if (!(e.base == f.base || e.base == f.head() || e.head() == f.base || e.head() == f.head())) continue;
      EdgeColoring m = c;
      m.set(e, other);
      ++mutations;
      if (verify_proper(m)) {
        o.pass = false;
        o.detail = "mutation accepted at " + to_string(e.base);
      }
    }
  }
  if (o.pass) o.detail = "fixture verified, " + std::to_string(mutations) + " mutations all improper";
  return o;
}

Outcome tiling_theorem() {
  Outcome o;
  std::size_t runs = 0;
  std::vector<std::int64_t> moduli2, moduli6;
  for (std::int64_t m = 3; m <= 26; ++m) {
    if (representable(m, 2)) moduli2.push_back(m);
    if (representable(m, 6)) moduli6.push_back(m);
  }
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const std::size_t n = 1 + seed % 2;
    const std::int64_t d = (seed / 2) % 2 ? 6 : 2;
    const auto& pool = d == 2 ? moduli2 : moduli6;
    std::vector<std::int64_t> moduli;
    for (std::size_t a = 0; a < n; ++a) moduli.push_back(pool[(seed * 7 + a * 3) % pool.size()]);
    const Torus torus(moduli);
    const auto t = brick_tiling_seeded(torus, d, seed);
    const auto res = color_tiling(t, CoreMode::core);
    const auto check = check_torus_coloring(res.coloring);
    const auto extra = static_cast<TorusEdgeColoring::code_type>(Color::plain(n).palette_index(n));
    ++runs;
    if (!validate_tiling(t).valid() || !check.total || !check.proper || check.colors_used > 2 * n + 1 ||
        confinement_violations(res.coloring, extra, res.cores) != 0 || crossing_edge_violations(res.coloring, t)) {
      o.pass = false;
      o.detail = "seed " + std::to_string(seed) + " moduli " + detail::join_ints(moduli) + " d=" + std::to_string(d);
    }
  }
  if (o.pass) o.detail = std::to_string(runs) + " seeded tilings";
  return o;
}

Outcome layered_pipeline() {
  Outcome o;
  std::ostringstream detail;

  const auto pm12 = GeneratorSet::symmetrized(1, {LatticePoint{1}, LatticePoint{2}});
  const auto dec = compute_constants(decompose(pm12));
  const std::int64_t L = dec.d * (dec.d + 1);
  const auto model = build_model(pm12, dec, {L});
  auto tilings = default_tilings(model);
  {
    const auto res = run_layered(model, tilings);
    const auto rep = verify_layered(res, model);
    if (!rep.ok() || rep.colors_used > 5) {
      o.pass = false;
      detail << "Z/" << L << " default tilings: " << (rep.violations.empty() ? "too many colors" : rep.violations[0]);
    } else {
      detail << "Z/" << L << " d=" << dec.d << ": " << rep.colors_used << " colors";
    }
  }
  {
    // Move the level-1 bricks so that the shift search has to use a > 0.
    const std::vector<std::int64_t> off{-785};
    tilings[1] = brick_tiling(model.levels[1].chart, model.d, off);
    const auto res = run_layered(model, tilings);
    const auto rep = verify_layered(res, model);
    std::int64_t max_a = 0;
    for (const auto& c : res.choices) max_a = std::max(max_a, c.a);
    if (!rep.ok() || rep.colors_used > 5) {
      o.pass = false;
      detail << "; shifted tilings: " << (rep.violations.empty() ? "too many colors" : rep.violations[0]);
    } else {
      detail << ", again with shifted bricks (max a=" << max_a << ")";
    }
  }

  const auto diag = GeneratorSet::symmetrized(2, {LatticePoint{1, 0}, LatticePoint{0, 1}, LatticePoint{1, 1}});
  const auto ddec = compute_constants(decompose(diag));
  bool found = false;
  for (std::int64_t d = 6; d <= 30 && !found; d += 4) {
    const std::int64_t q = d + 1;
    try {
      const auto m2 = build_model(diag, ddec, {q, q}, d);
      const auto res = run_layered(m2, default_tilings(m2));
      const auto rep = verify_layered(res, m2);
      found = true;
      if (!rep.ok() || rep.colors_used > 7) {
        o.pass = false;
        detail << "; 2-D d=" << d << ": " << (rep.violations.empty() ? "too many colors" : rep.violations[0]);
      } else {
        detail << "; 2-D diagonal set, first feasible d_override=" << d << " on " << q << "x" << q << ": "
               << rep.colors_used << " colors";
      }
    } catch (const Infeasible&) {
    }
  }
  if (!found) {
    o.pass = false;
    detail << "; no feasible d_override for the 2-D run";
  }
  o.detail = detail.str();
  return o;
}

Outcome lower_bounds() {
  Outcome o;
  std::ostringstream detail;
  const auto s1 = GeneratorSet::standard(1);
  const auto search = search_respecting_labelings(Torus({3}), s1);
  if (!search.found.empty()) o.pass = false;
  detail << "T3: " << search.found.size() << " of " << search.candidates << " labelings respect";

  std::size_t odd = 0;
  for (std::int64_t a : {3, 5}) {
    if (has_perfect_matching(SchreierGraph::on_torus(Torus({a}), s1))) o.pass = false;
    ++odd;
    for (std::int64_t b : {3, 5}) {
      if (has_perfect_matching(SchreierGraph::on_torus(Torus({a, b}), GeneratorSet::standard(2)))) o.pass = false;
      ++odd;
    }
  }
  detail << "; no perfect matching on " << odd << " odd tori";

  const auto s2 = GeneratorSet::standard(2);
  const auto chi33 = chromatic_index(SchreierGraph::on_torus(Torus({3, 3}), s2), 5);
  const auto chi44 = chromatic_index(SchreierGraph::on_torus(Torus({4, 4}), s2), 5);
  if (chi33 != 5u || chi44 != 4u) o.pass = false;
  detail << "; chi'(T3,3)=" << (chi33 ? std::to_string(*chi33) : ">5") << ", chi'(T4,4)="
         << (chi44 ? std::to_string(*chi44) : ">5");
  o.detail = detail.str();
  return o;
}

Outcome lattice_constants() {
  struct Expected {
    std::string file;
    std::vector<std::int64_t> k;
    std::int64_t alpha, beta, gamma, d;
  };
  const std::vector<Expected> cases{
      {"pm12.genset", {1}, 3, 6, 6, 8 * 7 * 4 * 7 * 2 + 2},
      {"standard2.genset", {}, 0, 6, 0, 8 * 1 * 1 * 7 * 1 + 2},
      {"diagonal2.genset", {1}, 9, 6, 6, 8 * 7 * 10 * 7 * 2 + 2},
  };
  Outcome o;
  std::ostringstream detail;
  for (const auto& c : cases) {
    std::ifstream in(std::string(CHROMATILE_SAMPLES_DIR) + "/" + c.file);
    const auto set = parse_generating_set(in);
    const auto dec = compute_constants(decompose(set));
    const auto problems = check_invariants(dec, set);
    const bool ok = dec.k == c.k && dec.alpha == c.alpha && dec.beta == c.beta && dec.gamma == c.gamma &&
                    dec.d == c.d && dec.d % 4 == 2 && problems.empty();
    if (!ok) o.pass = false;
    detail << (detail.tellp() ? "; " : "") << c.file << ": d=" << dec.d << (ok ? "" : " MISMATCH");
  }
  o.detail = detail.str();
  return o;
}

int run_cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(CHROMATILE_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / ("chromatile_accept_" + std::to_string(::getpid()));
  const std::string samples = CHROMATILE_SAMPLES_DIR;
  const std::vector<std::string> commands{
      "decompose " + samples + "/diagonal2.genset",
      "color-rect --sizes 3,4,2 --mode bc1 --out {}/rect.txt",
      "color-rect --sizes 3,4 --mode bc2 --out {}/rect.txt",
      "color-rect --sizes 10,10 --mode shifted --t 2,-4 --out {}/rect.txt",
      "color-torus --moduli 22,15 --d 6 --mode core --seed 12345 --out {}/torus.txt --tiling-out {}/tiling.txt",
      "color-torus --moduli 15,15 --d 6 --offsets 0,3 --out {}/torus.txt",
      "layered --genset " + samples + "/diagonal2.genset --moduli 15,15 --d-override 14 --out {}/layered.txt",
      "lowerbound --moduli 3,3 --search chi",
      "lowerbound --moduli 4 --search labelings",
      "lowerbound --moduli 5,5 --search matchings",
      "render --in " + samples + "/figure1.coloring --out {}/figure.svg",
      "verify --in " + samples + "/figure1.coloring",
  };
  std::size_t checked = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string runs[2];
    for (int r = 0; r < 2; ++r) {
      const fs::path dir = base / (std::to_string(i) + "_" + std::to_string(r));
      fs::create_directories(dir);
      std::string cmd = commands[i];
      for (std::size_t p; (p = cmd.find("{}")) != std::string::npos;) cmd.replace(p, 2, dir.string());
      const int code = run_cli(cmd, dir / "stdout");
      runs[r] = "exit=" + std::to_string(code) + "\n";
      for (const auto& entry : fs::directory_iterator(dir)) {
        std::string text = slurp(entry.path());
        // Paths differ between the two runs by construction.
        for (std::size_t p; (p = text.find(dir.string())) != std::string::npos;) text.replace(p, dir.string().size(), "{}");
        runs[r] += entry.path().filename().string() + "\n" + text;
      }
      if (code != 0) {
        o.pass = false;
        o.detail = "command failed: " + commands[i];
      }
    }
    if (runs[0] != runs[1]) {
      o.pass = false;
      o.detail = "outputs differ: " + commands[i];
    }
    ++checked;
  }
  fs::remove_all(base);
  if (o.pass) o.detail = std::to_string(checked) + " commands byte-identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"rectangle sweep (bc1, bc2)", rectangle_sweep},
      {"core and shifted-core colorings", core_sweep},
      {"2x2 example fixture", figure_fixture},
      {"seeded tilings in core mode", tiling_theorem},
      {"layered construction", layered_pipeline},
      {"lower-bound witnesses", lower_bounds},
      {"lattice constants", lattice_constants},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail << " ("
              << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
