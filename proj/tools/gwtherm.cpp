// gwtherm: check, generate, mutate and analyze thermodynamic model files.
//
// Exit codes: 0 all checks pass / search answered, 1 axiom violation,
// 2 usage or parse error, 3 search inconclusive.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gwt/axioms.hpp"
#include "gwt/errors.hpp"
#include "gwt/model_file.hpp"
#include "gwt/padoa.hpp"
#include "gwt/refmodels.hpp"
#include "gwt/report.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kInconclusive = 3;

void write(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw gwt::PreconditionError("cannot write " + out);
  f << text;
}

gwt::CellId parse_cell(const std::string& s, const gwt::Grid& g) {
  int x = 0, y = 0, z = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "(%d,%d,%d)%c", &x, &y, &z, &tail) != 3 || !g.in_bounds({x, y, z})) {
    throw gwt::ParameterError("bad cell '" + s + "'");
  }
  return g.cell({x, y, z});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for a discrete continuum thermodynamics structure"};
  app.require_subcommand(1);

  std::string file, format = "text", out;
  gwt::Tolerance tol;

  auto* check = app.add_subcommand("check", "run every axiom check on a model file");
  check->add_option("file", file, "model file ('-' for stdin)")->required();
  check->add_option("--tolerance-balance", tol.eps_balance, "first-law residual tolerance");
  check->add_option("--tolerance-ineq", tol.eps_ineq, "second-law slack tolerance");
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  gwt::HeatParams hp;
  hp.seed = gwt::default_scenario().seed;
  hp.r = 0.5;
  std::vector<std::string> radiators;
  std::string bath;
  bool tables_out = false, default_scenario = false;
  auto* gen = app.add_subcommand("gen", "emit a reference model");
  gen->set_help_flag("--help", "print this help message and exit");
  gen->add_option("--nx", hp.nx)->capture_default_str();
  gen->add_option("--ny", hp.ny)->capture_default_str();
  gen->add_option("--nz", hp.nz)->capture_default_str();
  gen->add_option("--h", hp.h, "cell size")->capture_default_str();
  gen->add_option("--c", hp.c, "heat capacity per volume")->capture_default_str();
  gen->add_option("--kc", hp.kc, "conductivity")->capture_default_str();
  gen->add_option("--r", hp.r, "radiative coupling of radiator pairs")->capture_default_str();
  gen->add_option("--radiator", radiators, "radiator pair '(x,y,z)-(x,y,z)', repeatable");
  gen->add_option("--bath", bath, "reservoir cell '(x,y,z)'");
  gen->add_option("--bath-capacity", hp.bath_capacity)->capture_default_str();
  gen->add_option("--dt", hp.dt)->capture_default_str();
  gen->add_option("--steps", hp.steps)->capture_default_str();
  gen->add_option("--seed", hp.seed)->capture_default_str();
  gen->add_flag("--tables", tables_out, "write explicit tables instead of a generator block");
  gen->add_flag("--default-scenario", default_scenario, "2x2x2 scenario with one radiator pair");
  gen->add_option("--out", out, "output file (default stdout)");

  std::string target;
  auto* mut = app.add_subcommand("mutate", "break exactly one axiom of a model");
  mut->add_option("file", file)->required();
  mut->add_option("--axiom", target, "mutation target")
      ->required()
      ->check(CLI::IsMember(gwt::mutation_targets()));
  mut->add_option("--out", out, "output file (default stdout)");

  std::string primitive;
  std::size_t budget = gwt::ModelFamily{}.budget;
  auto* padoa = app.add_subcommand("padoa", "search for two models differing only in one primitive");
  padoa->add_option("file", file)->required();
  padoa->add_option("--primitive", primitive, "SPACE, TIME, E, H, S, M, or g for the control constant")
      ->required()
      ->check(CLI::IsMember({"SPACE", "TIME", "E", "H", "S", "M", "g"}));
  padoa->add_option("--budget", budget, "maximum candidates examined")->capture_default_str();
  padoa->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* timeless = app.add_subcommand("timeless", "run the suite on the timeless five-tuple");
  timeless->add_option("file", file)->required();
  timeless->add_option("--tolerance-balance", tol.eps_balance);
  timeless->add_option("--tolerance-ineq", tol.eps_ineq);
  timeless->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (gen->parsed()) {
      if (default_scenario) {
        hp = gwt::default_scenario();
      } else {
        const gwt::Grid g(std::max(hp.nx, 1), std::max(hp.ny, 1), std::max(hp.nz, 1), 1.0);
        for (const auto& r : radiators) {
          const auto dash = r.find(")-(");
          if (dash == std::string::npos) throw gwt::ParameterError("bad radiator pair '" + r + "'");
          hp.radiators.emplace_back(parse_cell(r.substr(0, dash + 1), g), parse_cell(r.substr(dash + 2), g));
        }
        if (!bath.empty()) hp.bath = parse_cell(bath, g);
      }
      gwt::validate(hp);
      write(tables_out ? gwt::emit_model(gwt::generate_heat_grid(hp)) : gwt::emit_generator(hp), out);
      return kPass;
    }

    const gwt::ModelFile mf = gwt::load_model(file);
    const gwt::ThermoModel& m = mf.model;

    if (check->parsed() || timeless->parsed()) {
      gwt::validate(tol);
      const bool nt = timeless->parsed();
      const gwt::CheckReport rep = nt ? gwt::check_all_NT(gwt::to_timeless(m), tol) : gwt::check_all(m, tol);
      const std::string suite = nt ? "timeless" : "theta";
      std::cout << (format == "json" ? gwt::report_json(rep, tol, suite) : gwt::report_text(rep, suite));
      return rep.pass() ? kPass : kViolation;
    }
    if (mut->parsed()) {
      write(gwt::emit_model(gwt::mutate(m, target)), out);
      return kPass;
    }
    if (padoa->parsed()) {
      gwt::ModelFamily fam;
      fam.base = m;
      fam.budget = budget;
      gwt::SearchResult r;
      try {
        r = primitive == "g" ? gwt::control_search(fam)
                             : gwt::independence_search(fam, gwt::parse_primitive(primitive));
      } catch (const gwt::PreconditionError& e) {
        std::cerr << "gwtherm: " << e.what() << '\n';
        return kViolation;
      }
      std::cout << (format == "json" ? gwt::search_json(r, primitive) : gwt::search_text(r, primitive));
      return r.outcome == gwt::SearchResult::Outcome::inconclusive ? kInconclusive : kPass;
    }
  } catch (const gwt::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const gwt::Error& e) {
    std::cerr << "gwtherm: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
