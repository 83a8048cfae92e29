#include <cmath>

#include "doctest.h"
#include "gwt/enumeration.hpp"
#include "gwt/errors.hpp"
#include "gwt/model_file.hpp"
#include "gwt/refmodels.hpp"
#include "gwt/structure.hpp"
#include "support.hpp"

using namespace gwt;

namespace {

// a = (0,0,0) at 2, b = (0,0,1) at 1, dt = 0.1, unit constants.
HeatParams worked() {
  HeatParams p;
  p.nx = 1;
  p.ny = 1;
  p.nz = 2;
  p.theta0 = {2.0, 1.0};
  p.dt = 0.1;
  p.steps = 2;
  return p;
}

}  // namespace

TEST_SUITE("structure") {
  TEST_CASE("time grids are strictly increasing with two samples or more") {
    CHECK_THROWS_AS(TimeGrid({0.0}), PreconditionError);
    CHECK_THROWS_AS(TimeGrid({0.0, 0.0}), PreconditionError);
    CHECK_THROWS_AS(TimeGrid({0.0, 1.0, 0.5}), PreconditionError);
    CHECK_THROWS_AS(TimeGrid({0.0, NAN}), PreconditionError);
    const TimeGrid t({0.0, 0.1, 0.2});
    CHECK(t.size() == 3);
    CHECK(t.last() == 0.2);
    CHECK(time_grid_defect({0.0, 0.1}) == std::nullopt);
  }

  TEST_CASE("worked single step between two cells") {
    const ThermoModel m = generate_heat_grid(worked());
    const Grid& g = m.grid;
    const Region a{CellId{0}}, b{CellId{1}};
    const Part pb = Part::closure(b, g);
    // Hand-derived: heat kc h (2 - 1) = 1, entropy flux 1/2, energy rate
    // c h^3 (1.1 - 1)/0.1 = 1, entropy rate ln(1.1)/0.1.
    CHECK(ddt_E(m, pb, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(flux(m, pb, a, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entropy_flux(m, pb, a, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ddt_S(m, pb, 0) == doctest::Approx(0.9531017980432486).epsilon(1e-12));
    CHECK(ddt_S(m, pb, 0) - entropy_flux(m, pb, a, 0) == doctest::Approx(0.4531017980432486));
    // The heat lands on the shared face: conductive, nothing radiative.
    CHECK(radiative_flux(m, pb, a, 0) == 0.0);
    CHECK(conductive_flux(m, pb, a, 0) == doctest::Approx(0.5));
  }

  TEST_CASE("flux preconditions") {
    const ThermoModel m = generate_heat_grid(worked());
    const Grid& g = m.grid;
    const Region a{CellId{0}}, b{CellId{1}};
    const ThermoModel partial = load_model(testing::fixture("partial_body.gwt")).model;
    // Cell (0,0,2) lies outside the body: the whole grid is no universe member.
    CHECK_THROWS_AS(flux(partial, Part(), Region::all(partial.grid), 0), UnknownSource);
    CHECK_THROWS_AS(flux(m, Part::closure(a, g), a, 0), DomainError);
    CHECK_THROWS_AS(flux(m, Part::closure(b, g), a, 7), PreconditionError);
  }

  TEST_CASE("backward difference at the last sample") {
    const ThermoModel m = generate_heat_grid(worked());
    const Part pb = Part::of_cells(Region{CellId{1}});
    const double e1 = m.energy[1].eval(pb), e2 = m.energy[2].eval(pb);
    CHECK(ddt_E(m, pb, 2) == doctest::Approx((e2 - e1) / 0.1));
    CHECK(ddt_E(m, pb, 1) == ddt_E(m, pb, 2));
  }

  TEST_CASE("structural validation lists size mismatches") {
    ThermoModel m = generate_heat_grid(worked());
    CHECK(structural_defects(m).empty());
    m.energy.pop_back();
    CHECK_FALSE(structural_defects(m).empty());
    CHECK_THROWS_AS(validate_model(m), IllFormedModel);
  }

  TEST_CASE("exchange contributions are active only across the source boundary") {
    const ThermoModel m = generate_heat_grid(default_scenario());
    const Grid& g = m.grid;
    // Heat from the whole exterior of a cell equals the sum from its neighbors
    // plus its radiator partner.
    const Region c{CellId{0}};
    const Part pc = Part::closure(c, g);
    double parts = 0.0;
    for (CellId x : m.body.cells()) {
      if (x != CellId{0}) parts += flux(m, pc, Region{x}, 0);
    }
    CHECK(flux(m, pc, exterior(c, g), 0) == doctest::Approx(parts).epsilon(1e-12));
  }

  TEST_CASE("property: the entropy flux splits bit-exactly") {
    testing::Gen gen(31);
    for (int trial = 0; trial < 10; ++trial) {
      HeatParams p;
      p.nx = gen.uniform_int(1, 3);
      p.ny = gen.uniform_int(1, 2);
      p.nz = 2;
      p.seed = static_cast<std::uint64_t>(trial) + 100;
      const ThermoModel m = generate_heat_grid(p);
      const auto uni = enumerate_universe(m.body, m.grid, {});
      for (const Region& d : uni.items) {
        const Region host = m.body - d;
        if (host.empty()) continue;
        const Part all = Part::closure(host, m.grid);
        for (int draw = 0; draw < 5; ++draw) {
          std::vector<CellId> cs;
          std::vector<FaceId> fs;
          for (CellId c : all.cells()) {
            if (gen.coin()) cs.push_back(c);
          }
          for (FaceId f : all.faces()) {
            if (gen.coin()) fs.push_back(f);
          }
          const Part part(cs, fs);
          const std::size_t k = static_cast<std::size_t>(gen.uniform_int(0, p.steps));
          CHECK(entropy_flux(m, part, d, k) ==
                radiative_flux(m, part, d, k) + conductive_flux(m, part, d, k));
        }
      }
    }
  }
}
