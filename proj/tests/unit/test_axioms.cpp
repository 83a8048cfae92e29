#include "doctest.h"
#include "gwt/axioms.hpp"
#include "gwt/enumeration.hpp"
#include "gwt/errors.hpp"
#include "gwt/refmodels.hpp"
#include "support.hpp"

using namespace gwt;

TEST_SUITE("axioms") {
  TEST_CASE("ids in report order") {
    const auto& ids = axiom_ids();
    REQUIRE(ids.size() == 19);
    CHECK(ids.front() == "T1");
    CHECK(ids[16] == "T17");
    CHECK(ids.back() == "DECOMP");
  }

  TEST_CASE("tolerances must be finite and nonnegative") {
    CHECK_THROWS_AS(validate(Tolerance{-1, 0}), PreconditionError);
    CHECK_NOTHROW(validate(Tolerance{}));
  }

  TEST_CASE("default scenario passes every check") {
    const ThermoModel m = generate_heat_grid(default_scenario());
    const CheckReport r = check_all(m);
    for (const auto& c : r.results) {
      INFO(c.id);
      CHECK(c.verdict != Verdict::fail);
      CHECK(c.checked > 0);
    }
    CHECK(r.pass());
    CHECK(r.at("T10").max_residual <= 1e-9);
    REQUIRE(r.at("T16").extreme);
    CHECK(*r.at("T16").extreme >= -1e-12);
    CHECK(r.at("T2").notes.front().find("T2.5") != std::string::npos);
  }

  TEST_CASE("every mutant fails its own check") {
    const ThermoModel m = generate_heat_grid(default_scenario());
    for (const auto& t : mutation_targets()) {
      INFO(t);
      const CheckResult r = check_axiom(mutate(m, t), report_id(t));
      CHECK(r.verdict == Verdict::fail);
      CHECK(r.witness);
    }
  }

  TEST_CASE("T16 witness names the clause") {
    const ThermoModel m = generate_heat_grid(default_scenario());
    const CheckResult r = check_axiom(mutate(m, "T16.2"), "T16");
    REQUIRE(r.witness);
    CHECK(r.witness->front().first == "clause");
    CHECK(r.witness->front().second == "T16.2");
  }

  TEST_CASE("thm1 enumerates all nested pairs of a 2x2x2 grid") {
    const Grid g(2, 2, 2, 1.0);
    const auto pairs = enumerate_nested_pairs(Region::all(g), {});
    CHECK(pairs.exhaustive);
    CHECK(pairs.items.size() == 6561);
    const ThermoModel m = generate_heat_grid(default_scenario());
    const CheckResult r = check_axiom(m, "THM1");
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.checked == 6561);
  }

  TEST_CASE("volume bound of a two-cell measure") {
    const Grid g(1, 1, 2, 1.0);
    TabulatedMeasure mu{GridMeasure(g, Region::all(g))};
    mu.densities().set(CellId{0}, 3.0);
    mu.densities().set(CellId{1}, -1.0);
    // |mu(P)| / V(P): 3 for {a}, 1 for {b}, 1 for {a, b}.
    CHECK(volume_bound(mu).first == doctest::Approx(3.0));
    CHECK(volume_bound(mu).second.contains(CellId{0}));
  }

  TEST_CASE("worked example production") {
    HeatParams p;
    p.nx = p.ny = 1;
    p.nz = 2;
    p.theta0 = {2.0, 1.0};
    p.dt = 0.1;
    const ThermoModel m = generate_heat_grid(p);
    CHECK(entropy_production(m, Region{CellId{1}}, 0) == doctest::Approx(0.4531017980432486));
    CHECK(energy_residual(m, Region{CellId{1}}, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(entropy_production(m, Region{CellId{0}}, 0) >= 0.0);
  }

  TEST_CASE("sampled enumeration reports partial coverage") {
    HeatParams p;
    p.nx = p.ny = p.nz = 3;
    p.steps = 2;
    const ThermoModel m = generate_heat_grid(p);
    const CheckResult r = check_axiom(m, "T10");
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.coverage < 1.0);
    CHECK(r.coverage > 0.0);
  }

  TEST_CASE("property: random reference models pass the balance checks") {
    testing::Gen gen(51);
    for (int trial = 0; trial < 8; ++trial) {
      HeatParams p;
      p.nx = gen.uniform_int(1, 3);
      p.ny = gen.uniform_int(1, 3);
      p.nz = gen.uniform_int(1, 2);
      p.steps = gen.uniform_int(2, 6);
      p.seed = static_cast<std::uint64_t>(trial) + 500;
      const ThermoModel m = generate_heat_grid(p);
      for (const char* id : {"T10", "T16", "DECOMP"}) {
        INFO(id);
        CHECK(check_axiom(m, id).verdict == Verdict::pass);
      }
    }
  }
}
