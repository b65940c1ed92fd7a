#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "cyforge/conifold.hpp"
#include "cyforge/gw.hpp"
#include "cyforge/io.hpp"
#include "cyforge/period.hpp"
#include "cyforge/pfops.hpp"
#include "cyforge/topology.hpp"

namespace cyforge {

struct AnalyzeOptions {
  int multiplicity = 1;
  bool delta_side = false;  // input is Delta (M-side) instead of Delta^circ
};

// Per-polytope record. Optionals are present iff the corresponding stage ran.
struct Report {
  bool admissible = false;
  std::optional<bool> smoothable;
  std::optional<int> p, dp, rk;
  long h11_resolved = 0, h21_resolved = 0;
  std::optional<long> h11_smoothed, h21_smoothed;
  std::optional<Int> H3, c2H;
  std::optional<long> c3;
  Int Ind;
  int multiplicity = 1;
  bool facet_interior_point = false;
};

// The analysis pipeline. Input is the support side Delta^circ by default;
// Delta = polar dual carries the topological invariants.
inline Report analyze_polytope(const LatticePolytope& input,
                               const AnalyzeOptions& opt = {}) {
  if (!is_reflexive(input)) throw NotReflexive("input polytope is not reflexive");
  LatticePolytope delta = opt.delta_side ? input : polar_dual(input);
  LatticePolytope dual = opt.delta_side ? polar_dual(input) : input;
  Report rep;
  rep.multiplicity = opt.multiplicity;
  auto resolved = hodge_resolved(delta);
  rep.h11_resolved = resolved.first;
  rep.h21_resolved = resolved.second;
  ConifoldReport con = conifold_report(delta);
  rep.admissible = con.admissible;
  if (con.admissible) {
    rep.p = static_cast<int>(con.edges.size());
    rep.dp = con.dp;
    rep.rk = con.rank;
    rep.smoothable = con.smoothable;
    if (con.smoothable) {
      auto sm = hodge_smoothed(resolved, con.rank, con.dp);
      rep.h11_smoothed = sm.first;
      rep.h21_smoothed = sm.second;
      rep.c3 = euler_c3(sm.first, sm.second);
    }
  }
  auto [h3, c2h] = intersection_numbers(delta, opt.multiplicity);
  rep.H3 = h3;
  rep.c2H = c2h;
  rep.Ind = vertex_sublattice_index(delta);
  rep.facet_interior_point = facet_has_interior_point(delta);
  return rep;
}

inline ordered_json report_to_json(const Report& r) {
  ordered_json j;
  j["admissible"] = r.admissible;
  if (r.smoothable) j["smoothable"] = *r.smoothable;
  if (r.p) j["p"] = *r.p;
  if (r.dp) j["dp"] = *r.dp;
  if (r.rk) j["rk"] = *r.rk;
  j["h11_resolved"] = r.h11_resolved;
  j["h21_resolved"] = r.h21_resolved;
  if (r.h11_smoothed) j["h11_smoothed"] = *r.h11_smoothed;
  if (r.h21_smoothed) j["h21_smoothed"] = *r.h21_smoothed;
  if (r.H3) j["H3"] = to_string(*r.H3);
  if (r.c2H) j["c2H"] = to_string(*r.c2H);
  if (r.c3) j["c3"] = *r.c3;
  j["Ind"] = to_string(r.Ind);
  j["multiplicity"] = r.multiplicity;
  j["facet_interior_point"] = r.facet_interior_point;
  return j;
}

inline std::string report_to_text(const Report& r) {
  std::ostringstream os;
  os << "admissible:    " << (r.admissible ? "yes" : "no") << "\n";
  if (r.smoothable)
    os << "smoothable:    " << (*r.smoothable ? "yes" : "no") << "\n";
  if (r.p) os << "P(Delta):      p=" << *r.p << "  dp=" << *r.dp
              << "  rk=" << *r.rk << "\n";
  os << "hodge resolved: (" << r.h11_resolved << ", " << r.h21_resolved << ")\n";
  if (r.h11_smoothed)
    os << "hodge smoothed: (" << *r.h11_smoothed << ", " << *r.h21_smoothed << ")\n";
  if (r.H3) os << "H^3:           " << to_string(*r.H3) << "\n";
  if (r.c2H) os << "c2.H:          " << to_string(*r.c2H) << "\n";
  if (r.c3) os << "c3:            " << *r.c3 << "\n";
  os << "Ind:           " << to_string(r.Ind)
     << "  (multiplicity " << r.multiplicity << ")\n";
  if (r.facet_interior_point)
    os << "note:          a facet of Delta has an interior lattice point\n";
  return os.str();
}

// dispatch on extension: .laurent holds a monomial sum, anything else is a
// vertex matrix
inline LatticePolytope load_polytope(const std::filesystem::path& path,
                                     bool columns_override = false) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".laurent") {
    Support s = parse_laurent(buf.str());
    std::vector<LatticePoint> pts;
    for (const auto& e : s.monomials)
      pts.push_back(LatticePoint::of(e[0], e[1], e[2], e[3]));
    return LatticePolytope(std::move(pts));
  }
  return parse_vertex_matrix(buf.str(), columns_override);
}

struct BatchEntry {
  std::string file;
  std::optional<Report> report;
  std::string error;  // nonempty if the file failed
};

// Map the analysis over a directory, one isolated task per file. Results are
// ordered by filename regardless of the worker count.
inline std::vector<BatchEntry> run_batch(const std::filesystem::path& dir,
                                         int jobs,
                                         const AnalyzeOptions& opt = {}) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() &&
        (e.path().extension() == ".vertices" || e.path().extension() == ".laurent"))
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<BatchEntry> out(files.size());
  std::atomic<std::size_t> next{0};
  if (jobs < 1) jobs = 1;
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < files.size();
         i = next.fetch_add(1)) {
      out[i].file = files[i].filename().string();
      try {
        out[i].report = analyze_polytope(load_polytope(files[i]), opt);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace cyforge
