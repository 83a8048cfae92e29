// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gwt/axioms.hpp"
#include "gwt/enumeration.hpp"
#include "gwt/geometry.hpp"
#include "gwt/model_file.hpp"
#include "gwt/padoa.hpp"
#include "gwt/refmodels.hpp"
#include "gwt/report.hpp"

using namespace gwt;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string fixture(const std::string& name) { return std::string(GWT_FIXTURES_DIR) + "/" + name; }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// 1: generated models pass every check across seeds and grid sizes.
Outcome reference_soundness() {
  // Grid shapes cycle so the full 4x4x4 x 32 case is covered within budget.
  const int shapes[][4] = {{1, 1, 2, 16}, {2, 2, 1, 32}, {2, 2, 2, 32}, {3, 3, 3, 16}, {4, 4, 4, 32}};
  Outcome o;
  double worst_residual = 0.0, worst_slack = INFINITY;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto& s = shapes[seed % 5];
    HeatParams p;
    p.nx = s[0];
    p.ny = s[1];
    p.nz = s[2];
    p.steps = s[3];
    p.seed = seed;
    if (p.nx * p.ny * p.nz >= 8) {
      p.radiators = {{CellId{0}, CellId{static_cast<std::uint32_t>(p.nx * p.ny * p.nz - 1)}}};
      p.r = 0.5;
    }
    const CheckReport r = check_all(generate_heat_grid(p));
    for (const CheckResult& c : r.results) {
      if (c.verdict == Verdict::fail) {
        o.ok = false;
        o.detail = "seed " + std::to_string(seed) + " fails " + c.id;
        return o;
      }
    }
    const auto& t2 = r.at("T2").notes;
    const bool t25 = std::any_of(t2.begin(), t2.end(),
                                 [](const std::string& n) { return n.find("T2.5") != std::string::npos; });
    if (r.results.size() != 19 || !t25) {
      return {false, "unexpected report layout"};
    }
    worst_residual = std::max(worst_residual, r.at("T10").max_residual);
    if (r.at("T16").extreme) worst_slack = std::min(worst_slack, *r.at("T16").extreme);
  }
  o.ok = worst_residual <= 1e-9 && worst_slack >= -1e-12;
  o.detail = "20 models, max residual " + fmt(worst_residual) + ", min production " + fmt(worst_slack);
  return o;
}

// 2: the mutation kill matrix is diagonal.
Outcome kill_matrix() {
  const ThermoModel base = generate_heat_grid(default_scenario());
  const auto& ids = axiom_ids();
  std::size_t cells = 0;
  for (const auto& t : mutation_targets()) {
    const CheckReport r = check_all(mutate(base, t));
    for (const std::string& id : ids) {
      const bool failed = r.at(id).verdict == Verdict::fail;
      if (failed != (id == report_id(t))) return {false, t + " vs " + id};
      ++cells;
    }
  }
  return {true, std::to_string(mutation_targets().size()) + "x" + std::to_string(ids.size()) + " = " +
                    std::to_string(cells) + " verdicts"};
}

// 3: exterior identity on every nested pair of the 2x2x2 grid.
Outcome exterior_identity() {
  const Grid g(2, 2, 2, 1.0);
  std::size_t pairs = 0, failures = 0;
  // All (A, B) with A a subset of B: each cell is out, in B only, or in both.
  for (int code = 0; code < 6561; ++code) {
    std::vector<CellId> a, b;
    int rest = code;
    for (std::uint32_t c = 0; c < 8; ++c, rest /= 3) {
      if (rest % 3 >= 1) b.push_back(CellId{c});
      if (rest % 3 == 2) a.push_back(CellId{c});
    }
    ++pairs;
    if (!check_exterior_identity(Region(a), Region(b), g)) ++failures;
  }
  return {failures == 0 && pairs == 6561,
          std::to_string(pairs) + " pairs, " + std::to_string(failures) + " failures"};
}

// 4: M = K + J with no rounding difference.
Outcome decomposition() {
  std::size_t checked = 0, mismatches = 0;
  double coverage = 1.0;
  HeatParams a;
  a.nx = a.ny = 1;
  a.nz = 2;
  a.theta0 = {2.0, 1.0};
  a.dt = 0.1;
  HeatParams b;
  b.nx = b.ny = 2;
  b.nz = 1;
  b.radiators = {{CellId{0}, CellId{3}}};
  b.r = 0.5;
  EnumerationLimits lim;
  lim.exhaustive_limit = 1u << 14;
  for (const HeatParams& p : {a, b}) {
    const ThermoModel m = generate_heat_grid(p);
    for (const Region& d : enumerate_universe(m.body, m.grid, lim).items) {
      const Region host = m.body - d;
      if (host.empty()) continue;
      const auto parts = enumerate_parts(Part::closure(host, m.grid), lim);
      coverage = std::min(coverage, parts.coverage);
      for (const Part& part : parts.items) {
        for (std::size_t k = 0; k < m.samples(); ++k) {
          const double total = entropy_flux(m, part, d, k);
          const double split = radiative_flux(m, part, d, k) + conductive_flux(m, part, d, k);
          ++checked;
          if (total != split) ++mismatches;
        }
      }
    }
  }
  return {mismatches == 0, std::to_string(checked) + " (P, D, t), " + std::to_string(mismatches) +
                               " mismatches, min part coverage " + fmt(coverage)};
}

// 5: time is defined by the functions; the control constant is not.
Outcome definability() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    HeatParams p;
    p.nx = 1 + static_cast<int>(seed % 2);
    p.ny = 1 + static_cast<int>((seed / 2) % 2);
    p.nz = 2;
    p.dt = 0.01 + 0.001 * static_cast<double>(seed);
    p.steps = 2 + static_cast<int>(seed % 4);
    p.seed = seed;
    const ThermoModel m = generate_heat_grid(p);
    if (!(define_time(tables(m)) == m.time)) return {false, "seed " + std::to_string(seed)};
  }
  ModelFamily tiny;
  HeatParams w;
  w.nx = w.ny = 1;
  w.nz = 2;
  w.theta0 = {2.0, 1.0};
  w.dt = 0.1;
  tiny.base = generate_heat_grid(w);
  const SearchResult t = independence_search(tiny, PrimitiveId::TIME);
  const bool exhausted = t.outcome == SearchResult::Outcome::none_found && t.examined == t.family_size;
  const SearchResult g = control_search(tiny);
  const bool control = g.outcome == SearchResult::Outcome::witness && g.witness && g.witness->dummy;
  return {exhausted && control, "100 grids recovered; TIME " + to_string(t.outcome) + " " +
                                    std::to_string(t.examined) + "/" + std::to_string(t.family_size) +
                                    "; g " + to_string(g.outcome)};
}

// 6: the timeless suite gives the same verdicts.
Outcome timeless() {
  const ThermoModel base = generate_heat_grid(default_scenario());
  std::vector<ThermoModel> models{base};
  for (const auto& t : mutation_targets()) models.push_back(mutate(base, t));
  std::size_t compared = 0, mismatches = 0;
  for (const ThermoModel& m : models) {
    const CheckReport full = check_all(m);
    const CheckReport nt = check_all_NT(to_timeless(m));
    for (const CheckResult& r : full.results) {
      ++compared;
      if (nt.at(nt_id(r.id)).verdict != r.verdict) ++mismatches;
    }
  }
  return {mismatches == 0 && compared == 11 * 19,
          std::to_string(compared) + " comparisons, " + std::to_string(mismatches) + " mismatches"};
}

// 7: hand-derived values of one step between two cells.
Outcome worked_example() {
  const ThermoModel m = load_model(fixture("worked_1x1x2.gwt")).model;
  const Grid& g = m.grid;
  const Region a{CellId{0}}, b{CellId{1}};
  const Part pb = Part::closure(b, g);
  const double de = ddt_E(m, pb, 0), h = flux(m, pb, a, 0), s = entropy_flux(m, pb, a, 0);
  const double ds = ddt_S(m, pb, 0), prod = entropy_production(m, b, 0);
  const bool ok = std::abs(de - 1.0) <= 1e-4 && std::abs(h - 1.0) <= 1e-4 && std::abs(s - 0.5) <= 1e-4 &&
                  std::abs(ds - 0.9531017980432486) <= 1e-4 && std::abs(prod - 0.4531017980432486) <= 1e-4 &&
                  prod >= 0.0;
  return {ok, "ddt_E " + fmt(de) + ", H " + fmt(h) + ", M " + fmt(s) + ", ddt_S " + fmt(ds) + ", production " +
                  fmt(prod)};
}

// 8: emit/parse identity and byte-stable reports.
Outcome round_trip() {
  std::size_t files = 0;
  for (const char* name : {"default_scenario.gwt", "default_tables.gwt", "worked_1x1x2.gwt", "mutant_T10.gwt",
                           "partial_body.gwt"}) {
    const ThermoModel m = load_model(fixture(name)).model;
    const std::string text = emit_model(m);
    const ThermoModel back = parse_model(text).model;
    if (!(back == m) || emit_model(back) != text) return {false, name};
    ++files;
  }
  const ThermoModel m = load_model(fixture("default_scenario.gwt")).model;
  const std::string first = report_json(check_all(m), {}, "theta");
  const std::string second = report_json(check_all(load_model(fixture("default_scenario.gwt")).model), {}, "theta");
  const std::string nt1 = report_json(check_all_NT(to_timeless(m)), {}, "timeless");
  const std::string nt2 = report_json(check_all_NT(to_timeless(m)), {}, "timeless");
  return {first == second && nt1 == nt2,
          std::to_string(files) + " fixtures round-trip; reports of " + std::to_string(first.size()) + " bytes"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"reference soundness", reference_soundness},
      {"mutation kill matrix", kill_matrix},
      {"exterior identity on 2x2x2", exterior_identity},
      {"entropy flux decomposition", decomposition},
      {"definability of time", definability},
      {"timeless equivalence", timeless},
      {"worked single step", worked_example},
      {"round trip and determinism", round_trip},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %d %s (%.2f s): %s\n", o.ok ? "PASS" : "FAIL", n, name, secs, o.detail.c_str());
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
