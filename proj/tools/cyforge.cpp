// cyforge: conifold Calabi-Yau toolchain over exact arithmetic.
// Subcommands: analyze, period, pf-fit, gw, transform-check, batch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cyforge/gw.hpp"
#include "cyforge/io.hpp"
#include "cyforge/pipeline.hpp"

namespace {

using namespace cyforge;

struct SupportInput {
  std::string file;
  std::string laurent;

  Support load() const {
    if (!laurent.empty()) return parse_laurent(laurent);
    std::ifstream in(file);
    if (!in) throw Error("cannot open " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    if (std::filesystem::path(file).extension() == ".laurent")
      return parse_laurent(buf.str());
    return support_from_polytope(parse_vertex_matrix(buf.str()));
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("file", file, "vertex matrix or .laurent file");
    cmd->add_option("--laurent", laurent, "inline Laurent expression");
  }
  void validate(CLI::App* cmd) const {
    if (file.empty() == laurent.empty())
      throw CLI::ValidationError(cmd->get_name(),
                                 "give exactly one of FILE or --laurent");
  }
};

int jobs_default() {
  if (const char* env = std::getenv("CYFORGE_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

DiffOperator load_operator(const std::string& path, int* gap = nullptr) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  ordered_json j = ordered_json::parse(in, nullptr, true);
  if (gap) *gap = j.contains("gap") ? j["gap"].get<int>() : 1;
  return operator_from_json(j);
}

struct GwResult {
  FitResult fit;
  Int h3;
  std::vector<Int> instantons;
};

GwResult run_gw_pipeline(const Support& s, int order, int dmax, int nmax,
                         std::optional<Int> h3_opt) {
  RationalSeries pi0 = principal_period(s, order);
  FitResult fit = fit_operator(pi0, dmax);
  Int h3;
  if (h3_opt) {
    h3 = *h3_opt;
  } else {
    std::vector<LatticePoint> pts;
    for (const auto& e : s.monomials)
      pts.push_back(LatticePoint::of(e[0], e[1], e[2], e[3]));
    LatticePolytope dual(std::move(pts));
    h3 = intersection_numbers(polar_dual(dual)).first;
  }
  int fr_order = std::max(nmax + 3, 10);
  FrobeniusBasis fb = frobenius(fit.op, fr_order);
  MirrorMap mm = mirror_map(fb);
  RationalSeries kq = yukawa(fit.op, h3, fb, mm, fr_order);
  GwResult out{std::move(fit), h3, instanton_numbers(kq, h3, nmax)};
  return out;
}

int cmd_analyze(const std::string& file, int multiplicity, bool columns,
                bool delta_side, bool json) {
  AnalyzeOptions opt;
  opt.multiplicity = multiplicity;
  opt.delta_side = delta_side;
  Report rep = analyze_polytope(load_polytope(file, columns), opt);
  if (json)
    std::cout << report_to_json(rep).dump() << "\n";
  else
    std::cout << report_to_text(rep);
  return 0;
}

int cmd_period(const SupportInput& input, int order, bool json) {
  Support s = input.load();
  RationalSeries pi0 = principal_period(s, order);
  if (json) {
    ordered_json j;
    j["order"] = order;
    ordered_json c = ordered_json::array();
    for (int k = 0; k <= order; ++k) c.push_back(to_string(pi0[k]));
    j["coefficients"] = c;
    std::cout << j.dump() << "\n";
  } else {
    for (int k = 0; k <= order; ++k)
      std::cout << k << " " << to_string(pi0[k]) << "\n";
  }
  return 0;
}

int cmd_pf_fit(const SupportInput& input, int order, int dmax, bool json) {
  Support s = input.load();
  RationalSeries pi0 = principal_period(s, order);
  FitResult fit = fit_operator(pi0, dmax);
  if (json) {
    ordered_json j = operator_to_json(fit.op, fit.gap);
    j["text"] = fit.op.to_text();
    j["cy_self_dual"] = fit.op.cy_self_dual();
    std::cout << j.dump() << "\n";
  } else {
    if (fit.gap != 1)
      std::cout << "variable: u = z^" << fit.gap << "\n";
    std::cout << fit.op.to_text() << "\n";
  }
  return 0;
}

int cmd_gw(const SupportInput& input, int order, int dmax, int nmax,
           const std::string& h3_str, bool json) {
  Support s = input.load();
  std::optional<Int> h3;
  if (!h3_str.empty()) h3 = Int(h3_str);
  GwResult r = run_gw_pipeline(s, order, dmax, nmax, h3);
  if (json) {
    ordered_json j;
    j["operator"] = operator_to_json(r.fit.op, r.fit.gap);
    j["H3"] = to_string(r.h3);
    ordered_json n = ordered_json::array();
    for (const auto& v : r.instantons) n.push_back(to_string(v));
    j["instantons"] = n;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "H^3 = " << to_string(r.h3) << "\n";
    for (std::size_t d = 0; d < r.instantons.size(); ++d)
      std::cout << "n_" << d + 1 << " = " << to_string(r.instantons[d]) << "\n";
  }
  return 0;
}

int cmd_transform_check(const std::string& opa, const std::string& opb,
                        const std::string& c_str, int elo, int ehi, int order,
                        bool json) {
  DiffOperator a = load_operator(opa);
  DiffOperator b = load_operator(opb);
  Rat c = parse_rat(c_str);
  auto e = mobius_equivalent(a, b, c, elo, ehi, order);
  if (json) {
    ordered_json j;
    j["equivalent"] = e.has_value();
    if (e) j["exponent"] = to_string(*e);
    std::cout << j.dump() << "\n";
  } else if (e) {
    std::cout << "equivalent under z -> z/(1 + " << to_string(c)
              << " z) with exponent " << to_string(*e) << "\n";
  } else {
    std::cout << "no exponent in range relates the operators\n";
  }
  return e ? 0 : 1;
}

int cmd_batch(const std::string& dir, int jobs, int multiplicity, bool json) {
  AnalyzeOptions opt;
  opt.multiplicity = multiplicity;
  auto entries = run_batch(dir, jobs, opt);
  bool any_failed = false;
  for (const auto& e : entries) {
    if (json) {
      ordered_json j;
      j["file"] = e.file;
      if (e.report)
        j["report"] = report_to_json(*e.report);
      else
        j["error"] = e.error;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "== " << e.file << "\n";
      if (e.report)
        std::cout << report_to_text(*e.report);
      else
        std::cout << "error: " << e.error << "\n";
    }
    if (!e.report) any_failed = true;
  }
  return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conifold Calabi-Yau pipeline over exact arithmetic"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "conifold/Hodge/topology report for one polytope");
  std::string an_file;
  int an_mult = 1;
  bool an_cols = false, an_delta = false, an_json = false;
  analyze->add_option("file", an_file, "vertex matrix or .laurent file")
      ->required();
  analyze->add_option("--multiplicity", an_mult, "divisor multiplicity m");
  analyze->add_flag("--columns", an_cols, "treat a 4x4 matrix as columns-are-points");
  analyze->add_flag("--delta-side", an_delta,
                    "input is Delta (M-side) rather than Delta^circ");
  analyze->add_flag("--json", an_json, "emit a JSON report");

  // period
  auto* period = app.add_subcommand("period", "principal period expansion");
  SupportInput p_in;
  int p_order = 20;
  bool p_json = false;
  p_in.attach(period);
  period->add_option("--order", p_order, "series order")->required();
  period->add_flag("--json", p_json);

  // pf-fit
  auto* pffit = app.add_subcommand("pf-fit", "fit the Picard-Fuchs operator");
  SupportInput f_in;
  int f_order = 50, f_dmax = 4;
  bool f_json = false;
  f_in.attach(pffit);
  pffit->add_option("--order", f_order, "period series order (default 50)");
  pffit->add_option("--dmax", f_dmax, "maximal z-degree of the ansatz")->required();
  pffit->add_flag("--json", f_json);

  // gw
  auto* gw = app.add_subcommand(
      "gw", "mirror map, Yukawa coupling and instanton numbers");
  SupportInput g_in;
  int g_order = 50, g_dmax = 4, g_nmax = 7;
  std::string g_h3;
  bool g_json = false;
  g_in.attach(gw);
  gw->add_option("--order", g_order, "period series order (default 50)");
  gw->add_option("--dmax", g_dmax, "maximal z-degree of the ansatz");
  gw->add_option("--nmax", g_nmax, "number of instanton numbers")->required();
  gw->add_option("--h3", g_h3, "H^3 normalization (derived from the polar dual "
                               "if omitted)");
  gw->add_flag("--json", g_json);

  // transform-check
  auto* tc = app.add_subcommand(
      "transform-check", "test operator equivalence under z -> z/(1+cz)");
  std::string t_a, t_b, t_c;
  int t_elo = -2, t_ehi = 2, t_order = 24;
  bool t_json = false;
  tc->add_option("opa", t_a, "first operator (JSON file)")->required();
  tc->add_option("opb", t_b, "second operator (JSON file)")->required();
  tc->add_option("--c", t_c, "rational c in z -> z/(1+cz)")->required();
  tc->add_option("--elo", t_elo, "lower end of the exponent range");
  tc->add_option("--ehi", t_ehi, "upper end of the exponent range");
  tc->add_option("--order", t_order, "series depth for the check");
  tc->add_flag("--json", t_json);

  // batch
  auto* batch = app.add_subcommand("batch", "analyze every polytope in a directory");
  std::string b_dir;
  int b_jobs = jobs_default(), b_mult = 1;
  bool b_json = false;
  batch->add_option("dir", b_dir, "directory of .vertices/.laurent files")
      ->required();
  batch->add_option("--jobs", b_jobs, "worker threads (default CYFORGE_JOBS)");
  batch->add_option("--multiplicity", b_mult, "divisor multiplicity m");
  batch->add_flag("--json", b_json);

  try {
    app.parse(argc, argv);
    if (period->parsed()) p_in.validate(period);
    if (pffit->parsed()) f_in.validate(pffit);
    if (gw->parsed()) g_in.validate(gw);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed())
      return cmd_analyze(an_file, an_mult, an_cols, an_delta, an_json);
    if (period->parsed()) return cmd_period(p_in, p_order, p_json);
    if (pffit->parsed()) return cmd_pf_fit(f_in, f_order, f_dmax, f_json);
    if (gw->parsed()) return cmd_gw(g_in, g_order, g_dmax, g_nmax, g_h3, g_json);
    if (tc->parsed())
      return cmd_transform_check(t_a, t_b, t_c, t_elo, t_ehi, t_order, t_json);
    if (batch->parsed()) return cmd_batch(b_dir, b_jobs, b_mult, b_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
