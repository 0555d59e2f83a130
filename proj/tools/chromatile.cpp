// chromatile: build and certify edge colorings of boxes, tiled tori and
// layered Schreier graphs of Z^n, plus brute-force lower-bound searches.
//
// Exit codes: 0 ok, 1 invalid input, 2 verification failure, 3 infeasible.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chromatile/chromatile.hpp"

namespace ct = chromatile;

namespace {

enum Exit : int { kOk = 0, kInvalid = 1, kUnverified = 2, kInfeasible = 3 };

std::vector<std::int64_t> parse_list(const std::string& text) {
  const auto p = ct::parse_point(text);
  return {p.begin(), p.end()};
}

ct::GeneratorSet load_genset(const std::string& path, bool reject_asymmetric) {
  std::ifstream in(path);
  if (!in) throw ct::InvalidInput("cannot open " + path);
  return ct::parse_generating_set(in, reject_asymmetric);
}

ct::ColoringDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ct::InvalidInput("cannot open " + path);
  return ct::read_document(in);
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ct::InvalidInput("cannot write " + path);
  out << text;
}

void save_document(const std::string& path, const ct::ColoringDocument& doc) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ct::InvalidInput("cannot write " + path);
  ct::write_document(out, doc);
}

std::string list_points(const std::vector<ct::LatticePoint>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) out += (i ? " " : "") + ct::to_string(pts[i]);
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ct::VerificationFailure(what);
}

// ---------------------------------------------------------------------------
// decompose

int cmd_decompose(const std::string& path, bool reject_asymmetric) {
  const auto set = load_genset(path, reject_asymmetric);
  const auto dec = ct::compute_constants(ct::decompose(set));
  std::cout << "n=" << set.dimension() << "\n";
  std::cout << "size=" << set.size() << "\n";
  std::cout << "m=" << dec.top_level() << "\n";
  for (std::size_t i = 0; i < dec.layers.size(); ++i) {
    std::cout << "S" << i << "=" << list_points(dec.layers[i].representatives()) << "\n";
  }
  for (std::size_t i = 0; i < dec.k.size(); ++i) std::cout << "k" << i + 1 << "=" << dec.k[i] << "\n";
  std::cout << "alpha=" << dec.alpha << "\n";
  std::cout << "beta=" << dec.beta << "\n";
  std::cout << "gamma=" << dec.gamma << "\n";
  std::cout << "s=" << ct::to_string(dec.s) << "\n";
  std::cout << "s_norm=" << dec.s_norm << "\n";
  for (std::size_t i = 0; i < dec.shift_coeffs.size(); ++i) {
    std::cout << "a" << i << "=" << join(dec.shift_coeffs[i]) << "\n";
  }
  std::cout << "d=" << dec.d << "\n";
  const auto problems = ct::check_invariants(dec, set);
  for (const auto& p : problems) std::cout << "violation=" << p << "\n";
  std::cout << "invariants=" << (problems.empty() ? "ok" : "failed") << "\n";
  return problems.empty() ? kOk : kUnverified;
}

// ---------------------------------------------------------------------------
// color-rect

struct RectVerdict {
  bool proper = false;
  bool boundary = false;
  bool mode_condition = true;
  std::size_t colors = 0;
};

RectVerdict verify_rect(const ct::EdgeColoring& coloring, const ct::Box& box, const std::string& construction,
                        const std::optional<ct::LatticePoint>& t) {
  RectVerdict v;
  const std::size_t n = box.dim();
  v.proper = ct::verify_proper(coloring);
  v.boundary = ct::verify_boundary_condition(coloring, box);
  v.colors = coloring.colors_used().size();
  if (construction == "bc2") {
    v.mode_condition = v.colors <= 2 * n && !coloring.colors_used().count(ct::Color::plain(n));
  } else if (construction == "core" || construction == "shifted") {
    v.mode_condition = ct::verify_shifted_core(coloring, box, t.value_or(ct::LatticePoint(n)));
  }
  v.mode_condition = v.mode_condition && v.colors <= 2 * n + 1;
  return v;
}

void print_rect_verdict(const RectVerdict& v, std::size_t edges) {
  std::cout << "edges=" << edges << "\n";
  std::cout << "colors=" << v.colors << "\n";
  std::cout << "proper=" << (v.proper ? "yes" : "no") << "\n";
  std::cout << "boundary_condition=" << (v.boundary ? "yes" : "no") << "\n";
  std::cout << "construction_condition=" << (v.mode_condition ? "yes" : "no") << "\n";
}

int cmd_color_rect(const std::string& sizes_text, const std::string& origin_text, const std::string& mode,
                   const std::string& t_text, int odd_axis, const std::string& out) {
  const auto sizes = parse_list(sizes_text);
  const ct::LatticePoint origin = origin_text.empty() ? ct::LatticePoint(sizes.size()) : ct::parse_point(origin_text);
  const ct::Box box(origin, sizes);
  const std::size_t n = box.dim();
  std::optional<ct::LatticePoint> t;
  ct::EdgeColoring coloring;
  if (mode == "bc1") {
    coloring = ct::color_bc1(box);
  } else if (mode == "bc2") {
    std::optional<std::size_t> axis;
    if (odd_axis > 0) axis = static_cast<std::size_t>(odd_axis - 1);
    coloring = ct::color_bc2(box, axis);
  } else if (mode == "core") {
    coloring = ct::color_core(box);
  } else {
    t = t_text.empty() ? ct::LatticePoint(n) : ct::parse_point(t_text);
    coloring = ct::color_shifted_core(box, *t);
  }
  const RectVerdict v = verify_rect(coloring, box, mode, t);
  print_rect_verdict(v, coloring.size());
  require(v.proper && v.boundary && v.mode_condition, "rectangle coloring failed verification; nothing written");
  auto doc = ct::rect_document(coloring, box);
  doc.meta.emplace_back("construction", mode);
  if (t) doc.meta.emplace_back("t", ct::to_string(*t));
  save_document(out, doc);
  return kOk;
}

// ---------------------------------------------------------------------------
// color-torus

ct::ColoringDocument::MarkSet core_marks(const ct::Torus& torus, const std::vector<std::optional<ct::Box>>& cores) {
  ct::ColoringDocument::MarkSet m{"cores", {}};
  for (const auto& box : cores) {
    if (box) box->for_each_vertex([&](const ct::LatticePoint& x) { m.points.push_back(torus.reduce(x)); });
  }
  return m;
}

int cmd_color_torus(const std::string& moduli_text, std::int64_t d, const std::string& mode,
                    std::optional<std::uint64_t> seed, const std::string& offsets_text, const std::string& out,
                    const std::string& tiling_out) {
  const ct::Torus torus(parse_list(moduli_text));
  const std::size_t n = torus.dim();
  std::vector<std::int64_t> offsets;
  if (!offsets_text.empty()) offsets = parse_list(offsets_text);
  const ct::Tiling tiling = seed ? ct::brick_tiling_seeded(torus, d, *seed) : ct::brick_tiling(torus, d, offsets);
  const auto report = ct::validate_tiling(tiling);
  if (!report) throw ct::Infeasible("tiling invalid: " + report.problems.front());
  const ct::CoreMode core_mode = mode == "core" ? ct::CoreMode::core : ct::CoreMode::plain;
  const auto tc = ct::color_tiling(tiling, core_mode);

  const auto check = ct::check_torus_coloring(tc.coloring);
  const auto crossing = ct::crossing_edge_violations(tc.coloring, tiling);
  const auto extra = static_cast<ct::ColorCode>(ct::Color::plain(n).palette_index(n));
  std::uint64_t extra_edges = 0;
  for (std::uint64_t v = 0; v < torus.vertex_count(); ++v) {
    for (std::size_t a = 0; a < n; ++a) extra_edges += tc.coloring.code(v, a) == extra;
  }
  const auto confinement = core_mode == ct::CoreMode::core ? ct::confinement_violations(tc.coloring, extra, tc.cores) : 0;

  std::cout << "regions=" << tiling.regions.size() << "\n";
  std::cout << "edges=" << tc.coloring.colored_count() << "\n";
  std::cout << "colors=" << check.colors_used << "\n";
  std::cout << "total=" << (check.total ? "yes" : "no") << "\n";
  std::cout << "proper=" << (check.proper ? "yes" : "no") << "\n";
  std::cout << "crossing_violations=" << crossing << "\n";
  std::cout << "extra_color_edges=" << extra_edges << "\n";
  std::cout << "extra_color_outside_cores=" << confinement << "\n";
  require(check.total && check.proper && check.colors_used <= 2 * n + 1 && crossing == 0 && confinement == 0,
          "torus coloring failed verification; nothing written");

  auto doc = ct::torus_document(tc.coloring, d);
  doc.meta.emplace_back("construction", "tiling-" + mode);
  if (core_mode == ct::CoreMode::core) doc.marks.push_back(core_marks(torus, tc.cores));
  save_document(out, doc);
  if (!tiling_out.empty()) {
    std::ostringstream s;
    ct::write_tiling(s, tiling);
    save_text(tiling_out, s.str());
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// layered

int cmd_layered(const std::string& genset, const std::string& moduli_text, std::optional<std::int64_t> d_override,
                const std::string& out) {
  const auto set = load_genset(genset, false);
  const auto dec = ct::compute_constants(ct::decompose(set));
  const auto model = ct::build_model(set, dec, parse_list(moduli_text), d_override);
  const auto result = ct::run_layered(model, ct::default_tilings(model));
  const auto report = ct::verify_layered(result, model);

  std::cout << "levels=" << model.levels.size() << "\n";
  std::cout << "d=" << model.d << "\n";
  for (std::size_t i = 0; i < model.levels.size(); ++i) {
    std::cout << "level" << i << "_orbits=" << model.levels[i].representatives.size()
              << " chart=" << join(model.levels[i].chart.moduli()) << " core_vertices=" << report.k_sizes[i] << "\n";
  }
  std::cout << "edges=" << result.coloring.colored_count() << "\n";
  std::cout << "colors=" << report.colors_used << "\n";
  std::cout << "color_bound=" << report.color_bound << "\n";
  std::cout << "total=" << (report.total ? "yes" : "no") << "\n";
  std::cout << "proper=" << (report.proper ? "yes" : "no") << "\n";
  std::cout << "special_edges=" << report.special_edges << "\n";
  std::cout << "special_outside_cores=" << report.special_outside_k << "\n";
  std::cout << "pigeonhole_max=" << report.pigeonhole_max << "\n";
  for (const auto& v : report.violations) std::cout << "violation=" << v << "\n";
  require(report.ok(), "layered coloring failed verification; nothing written");

  if (!out.empty()) {
    auto doc = ct::torus_document(result.coloring, model.d);
    doc.meta.emplace_back("construction", "layered");
    for (std::size_t i = 0; i < result.k_sets.size(); ++i) {
      ct::ColoringDocument::MarkSet m{"K" + std::to_string(i), {}};
      for (std::uint64_t v = 0; v < result.k_sets[i].size(); ++v) {
        if (result.k_sets[i][v]) m.points.push_back(model.torus.point(v));
      }
      doc.marks.push_back(std::move(m));
    }
    save_document(out, doc);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// lowerbound

int cmd_lowerbound(const std::string& genset, const std::string& moduli_text, const std::string& search, int k_max) {
  const ct::Torus torus(parse_list(moduli_text));
  const ct::GeneratorSet set = genset.empty() ? ct::GeneratorSet::standard(torus.dim()) : load_genset(genset, false);
  std::cout << "vertices=" << torus.vertex_count() << "\n";
  if (search == "labelings") {
    const auto found = ct::search_respecting_labelings(torus, set);
    std::cout << "candidates=" << found.candidates << "\n";
    std::cout << "respecting=" << found.found.size() << "\n";
    for (const auto& labeling : found.found) {
      if (!ct::is_perfect_matching(torus.vertex_count(), ct::induced_matching(labeling, set))) {
        throw ct::VerificationFailure("a respecting labeling did not induce a perfect matching");
      }
    }
    return kOk;
  }
  const auto g = ct::SchreierGraph::on_torus(torus, set);
  if (search == "matchings") {
    const bool perfect = ct::has_perfect_matching(g);
    std::cout << "maximum_matching=" << ct::maximum_matching_size(g) << "\n";
    std::cout << "perfect_matching=" << (perfect ? "found" : "none") << "\n";
    return kOk;
  }
  const std::size_t limit = k_max > 0 ? static_cast<std::size_t>(k_max) : set.size() + 1;
  const auto chi = ct::chromatic_index(g, limit);
  std::cout << "max_degree=" << g.max_degree() << "\n";
  std::cout << "chromatic_index=" << (chi ? std::to_string(*chi) : ">" + std::to_string(limit)) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// render / verify

int cmd_render(const std::string& in, const std::vector<std::string>& slices, const std::string& out) {
  const auto doc = load_document(in);
  std::map<std::size_t, std::int64_t> fixed;
  for (const auto& s : slices) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ct::InvalidInput("slice must be axis=value");
    try {
      const long axis = std::stol(s.substr(0, eq));
      if (axis < 1) throw ct::InvalidInput("slice axes are 1-based");
      fixed[static_cast<std::size_t>(axis - 1)] = std::stoll(s.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw ct::InvalidInput("bad slice '" + s + "'");
    }
  }
  save_text(out, ct::render_svg(doc, fixed));
  return kOk;
}

// Color-`code` edges must have both endpoints in one mark set.
std::uint64_t marks_violations(const ct::TorusEdgeColoring& coloring, std::size_t code,
                               const std::vector<ct::ColoringDocument::MarkSet>& marks) {
  const auto& torus = coloring.torus();
  std::vector<int> owner(torus.vertex_count(), -1);
  for (std::size_t m = 0; m < marks.size(); ++m) {
    for (const auto& p : marks[m].points) owner[torus.index(p)] = static_cast<int>(m);
  }
  std::uint64_t bad = 0;
  for (std::uint64_t v = 0; v < torus.vertex_count(); ++v) {
    for (std::size_t d = 0; d < coloring.directions().size(); ++d) {
      if (coloring.code(v, d) != code) continue;
      const auto w = torus.translate(v, coloring.directions()[d]);
      if (owner[v] < 0 || owner[v] != owner[w]) ++bad;
    }
  }
  return bad;
}

int cmd_verify(const std::string& in) {
  const auto doc = load_document(in);
  const std::string construction = doc.meta_value("construction");
  if (doc.mode == "rect") {
    const auto coloring = ct::rect_coloring(doc);
    std::optional<ct::LatticePoint> t;
    if (auto text = doc.meta_value("t"); !text.empty()) t = ct::parse_point(text);
    const auto v = verify_rect(coloring, ct::document_box(doc), construction, t);
    print_rect_verdict(v, coloring.size());
    require(v.proper && v.boundary && v.mode_condition, "verification failed");
    return kOk;
  }
  const auto coloring = ct::torus_coloring(doc);
  const auto check = ct::check_torus_coloring(coloring);
  std::size_t bound = doc.legend.size();
  std::uint64_t confinement = 0;
  if (construction == "layered") {
    bound = coloring.directions().size() * 2 + 1;
    confinement = marks_violations(coloring, 0, doc.marks);
  } else if (construction == "tiling-core") {
    bound = 2 * doc.n + 1;
    confinement = marks_violations(coloring, 2 * doc.n, doc.marks);
  }
  std::cout << "edges=" << coloring.colored_count() << "\n";
  std::cout << "colors=" << check.colors_used << "\n";
  std::cout << "total=" << (check.total ? "yes" : "no") << "\n";
  std::cout << "proper=" << (check.proper ? "yes" : "no") << "\n";
  std::cout << "confinement_violations=" << confinement << "\n";
  require(check.total && check.proper && check.colors_used <= bound && confinement == 0, "verification failed");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge colorings of boxes, tiled tori and Schreier graphs of Z^n"};
  app.require_subcommand(1);

  std::string genset, sizes, origin, mode, t, out, moduli, offsets, search, in, tiling_out;
  bool reject_asymmetric = false;
  int odd_axis = 0, k_max = 0;
  std::int64_t d = 6;
  std::optional<std::int64_t> d_override;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> slices;

  auto* decompose = app.add_subcommand("decompose", "Layer a generating set and print the construction constants");
  decompose->add_option("genset", genset, "Generating set file")->required();
  decompose->add_flag("--reject-asymmetric", reject_asymmetric, "Fail unless the file lists both v and -v");

  auto* rect = app.add_subcommand("color-rect", "Color a box and its adjacent edges");
  rect->add_option("--sizes", sizes, "Side lengths, comma separated")->required();
  rect->add_option("--origin", origin, "Lower corner (default 0)");
  rect->add_option("--mode", mode, "bc1, bc2, core or shifted")
      ->required()
      ->check(CLI::IsMember({"bc1", "bc2", "core", "shifted"}));
  rect->add_option("--t", t, "Core shift for --mode shifted");
  rect->add_option("--odd-axis", odd_axis, "1-based odd axis for --mode bc2");
  rect->add_option("--out", out, "Output coloring file");

  auto* torus = app.add_subcommand("color-torus", "Tile a torus with boxes and color it");
  torus->add_option("--moduli", moduli, "Torus moduli")->required();
  torus->add_option("--d", d, "Region side d (regions have side d or d+1)");
  torus->add_option("--mode", mode, "plain or core")->check(CLI::IsMember({"plain", "core"}));
  torus->add_option("--seed", seed, "Seed for offsets and segment order");
  torus->add_option("--offsets", offsets, "Explicit brick offsets, cycled");
  torus->add_option("--out", out, "Output coloring file");
  torus->add_option("--tiling-out", tiling_out, "Output tiling file");

  auto* layered = app.add_subcommand("layered", "Run the layered construction for an arbitrary generating set");
  layered->add_option("--genset", genset, "Generating set file")->required();
  layered->add_option("--moduli", moduli, "Torus moduli")->required();
  layered->add_option("--d-override", d_override, "Use this d instead of the computed one");
  layered->add_option("--out", out, "Output coloring file");

  auto* lower = app.add_subcommand("lowerbound", "Brute-force lower-bound witnesses on a torus");
  lower->add_option("--genset", genset, "Generating set file (default: standard)");
  lower->add_option("--moduli", moduli, "Torus moduli")->required();
  lower->add_option("--search", search, "matchings, labelings or chi")
      ->required()
      ->check(CLI::IsMember({"matchings", "labelings", "chi"}));
  lower->add_option("--k-max", k_max, "Largest k tried for chi (default |S|+1)");

  auto* render = app.add_subcommand("render", "Draw a 2-D slice of a coloring as SVG");
  render->add_option("--in", in, "Coloring file")->required();
  render->add_option("--slice", slices, "Fix a coordinate: axis=value (1-based axis)");
  render->add_option("--out", out, "Output SVG file")->required();

  auto* verify = app.add_subcommand("verify", "Re-check a coloring file");
  verify->add_option("--in", in, "Coloring file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*decompose) return cmd_decompose(genset, reject_asymmetric);
    if (*rect) return cmd_color_rect(sizes, origin, mode, t, odd_axis, out);
    if (*torus) return cmd_color_torus(moduli, d, mode.empty() ? "plain" : mode, seed, offsets, out, tiling_out);
    if (*layered) return cmd_layered(genset, moduli, d_override, out);
    if (*lower) return cmd_lowerbound(genset, moduli, search, k_max);
    if (*render) return cmd_render(in, slices, out);
    if (*verify) return cmd_verify(in);
  } catch (const ct::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ct::VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kUnverified;
  } catch (const ct::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUnverified;
  }
  return kOk;
}
