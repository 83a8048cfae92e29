#include <cmath>

#include "doctest.h"
#include "gwt/errors.hpp"
#include "gwt/measure.hpp"
#include "support.hpp"

using namespace gwt;

TEST_SUITE("measure") {
  TEST_CASE("splitmix64 reference outputs") {
    // Published sequence for state 0.
    SplitMix64 r(0);
    CHECK(r.next() == 0xe220a8397b1dcdafULL);
    CHECK(r.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(r.next() == 0x06c45d188009454fULL);
    SplitMix64 u(42);
    for (int i = 0; i < 1000; ++i) {
      const double x = u.uniform();
      CHECK(x >= 0.0);
      CHECK(x < 1.0);
    }
  }

  TEST_CASE("densities add over cells then faces") {
    const Grid g(1, 1, 2, 1.0);
    GridMeasure mu(g, Region::all(g));
    mu.set(CellId{0}, 3.0);
    mu.set(CellId{1}, -1.0);
    const FaceId shared = g.face({Axis::z, 0, 0, 1});
    mu.set(shared, 0.5);
    CHECK(mu.eval(Part({CellId{0}, CellId{1}}, {shared})) == 2.5);
    CHECK(mu.total() == 2.5);
    CHECK(mu.eval(Part()) == 0.0);
  }

  TEST_CASE("host restricts the domain") {
    const Grid g(1, 1, 2, 1.0);
    GridMeasure mu(g, Region{CellId{0}});
    CHECK_THROWS_AS(mu.set(CellId{1}, 1.0), DomainError);
    CHECK(mu.hosts(g.face({Axis::z, 0, 0, 1})));
    CHECK_FALSE(mu.hosts(g.face({Axis::z, 0, 0, 2})));
  }

  TEST_CASE("tabulated values override the density sum") {
    const Grid g(1, 1, 2, 1.0);
    TabulatedMeasure mu{GridMeasure(g, Region::all(g))};
    mu.densities().set(CellId{0}, 1.0);
    const Part p({CellId{0}, CellId{1}}, {});
    CHECK(mu.eval(p) == 1.0);
    mu.tabulate(p, 5.0);
    CHECK(mu.eval(p) == 5.0);
    CHECK(mu.is_tabulated(p));
  }

  TEST_CASE("is_measure accepts density measures and finds a non-additive pair") {
    const Grid g(1, 1, 2, 1.0);
    TabulatedMeasure mu{GridMeasure(g, Region::all(g))};
    mu.densities().set(CellId{0}, 1.0);
    mu.densities().set(CellId{1}, 2.0);
    CHECK(is_measure(mu, 1e-12).ok);

    const Part p({CellId{0}}, {g.face({Axis::z, 0, 0, 0})});
    mu.tabulate(p, mu.eval(p) + 1.0);
    const MeasureVerdict v = is_measure(mu, 1e-12);
    CHECK_FALSE(v.ok);
    REQUIRE(v.witness);
    CHECK(disjoint(v.witness->first, v.witness->second));
    CHECK(v.residual == doctest::Approx(1.0));
  }

  TEST_CASE("is_measure rejects non-finite values and a nonzero empty part") {
    const Grid g(1, 1, 1, 1.0);
    TabulatedMeasure mu{GridMeasure(g, Region::all(g))};
    mu.densities().set(CellId{0}, NAN);
    CHECK_FALSE(is_measure(mu, 1e-12).ok);
    TabulatedMeasure nu{GridMeasure(g, Region::all(g))};
    nu.tabulate(Part(), 1.0);
    CHECK_FALSE(is_measure(nu, 1e-12).ok);
  }

  TEST_CASE("s-additivity over separate pairs") {
    const Grid g(1, 1, 5, 1.0);
    const Region a{CellId{0}}, c{CellId{4}};
    const Part p = Part::of_cells(Region{CellId{2}});
    const SetFunction additive = [](const Part&, const Region& d) { return 1.0 * d.size(); };
    CHECK(is_s_additive(additive, p, {{a, c}}, g, 1e-12).ok);
    const SetFunction squared = [](const Part&, const Region& d) { return 1.0 * d.size() * d.size(); };
    const auto v = is_s_additive(squared, p, {{a, c}}, g, 1e-12);
    CHECK_FALSE(v.ok);
    CHECK(v.residual == doctest::Approx(2.0));
    CHECK(is_s_additive(squared, p, {}, g, 1e-12).vacuous);
    CHECK_THROWS_AS(is_s_additive(additive, p, {{a, Region{CellId{1}}}}, g, 1e-12), PreconditionError);
    CHECK_THROWS_AS(is_s_additive(additive, Part::of_cells(Region{CellId{1}}), {{a, c}}, g, 1e-12),
                    PreconditionError);
  }

  TEST_CASE("property: random density measures are additive on random disjoint parts") {
    testing::Gen gen(21);
    for (int trial = 0; trial < 100; ++trial) {
      const Grid g = gen.grid(3);
      const Region host = gen.subset(Region::all(g));
      GridMeasure mu(g, host);
      for (CellId c : mu.host_cells()) mu.set(c, gen.uniform(-2, 2));
      for (FaceId f : mu.host_faces()) mu.set(f, gen.uniform(-2, 2));
      std::vector<CellId> c1, c2;
      std::vector<FaceId> f1, f2;
      for (CellId c : mu.host_cells()) (gen.coin() ? c1 : c2).push_back(c);
      for (FaceId f : mu.host_faces()) (gen.coin() ? f1 : f2).push_back(f);
      const Part p(c1, f1), q(c2, f2);
      CHECK(mu.eval(p | q) == doctest::Approx(mu.eval(p) + mu.eval(q)).epsilon(1e-12));
      CHECK(is_measure(TabulatedMeasure(mu), 1e-9).ok);
    }
  }
}
