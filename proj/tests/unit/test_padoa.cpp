#include <cmath>

#include "doctest.h"
#include "gwt/errors.hpp"
#include "gwt/model_file.hpp"
#include "gwt/padoa.hpp"
#include "gwt/refmodels.hpp"
#include "support.hpp"

using namespace gwt;

namespace {

HeatParams worked() {
  HeatParams p;
  p.nx = p.ny = 1;
  p.nz = 2;
  p.theta0 = {2.0, 1.0};
  p.dt = 0.1;
  p.steps = 2;
  return p;
}

// First `n` samples of a model.
ThermoModel truncate(ThermoModel m, std::size_t n) {
  std::vector<double> s(m.time.samples().begin(), m.time.samples().begin() + static_cast<long>(n));
  m.time = TimeGrid(s);
  m.energy.resize(n);
  m.entropy.resize(n);
  m.heat.snapshots.resize(n);
  m.entropy_flux.snapshots.resize(n);
  return m;
}

}  // namespace

// The timeless view carries no index set of its own.
template <typename T>
concept HasTimeMember = requires(const T& t) { t.time; };
template <typename T>
concept HasSamplesMember = requires(const T& t) { t.samples(); };
static_assert(!HasTimeMember<TimelessModel>);
static_assert(!HasSamplesMember<TimelessModel>);
static_assert(HasTimeMember<ThermoModel>);

TEST_SUITE("padoa") {
  TEST_CASE("primitive names") {
    CHECK(parse_primitive("TIME") == PrimitiveId::TIME);
    CHECK(to_string(PrimitiveId::SPACE) == "SPACE");
    CHECK_THROWS_AS(parse_primitive("Q"), PreconditionError);
  }

  TEST_CASE("time is the common last component of the function graphs") {
    const ThermoModel m = generate_heat_grid(worked());
    const ModelTables t = tables(m);
    const TimeGrid tg = define_time(t);
    REQUIRE(tg.size() == 3);
    CHECK(tg[0] == 0.0);
    CHECK(tg[1] == 0.1);
    CHECK(tg[2] == doctest::Approx(0.2));
    CHECK(tg == m.time);
  }

  TEST_CASE("disagreeing last components are ill-formed") {
    ModelTables t = tables(generate_heat_grid(worked()));
    t.entropy.rows.push_back(t.entropy.rows.back());
    t.entropy.rows.back().last = 9.0;
    CHECK_THROWS_AS(define_time(t), IllFormedModel);
  }

  TEST_CASE("property: defined time equals the sample grid") {
    testing::Gen gen(61);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      HeatParams p;
      p.nx = gen.uniform_int(1, 2);
      p.ny = gen.uniform_int(1, 2);
      p.nz = gen.uniform_int(1, 2);
      p.dt = gen.uniform(0.01, 0.15);
      p.steps = gen.uniform_int(2, 5);
      p.seed = seed;
      const ThermoModel m = generate_heat_grid(p);
      CHECK(define_time(tables(m)) == m.time);
    }
  }

  TEST_CASE("space of a partial body is its cells") {
    const ThermoModel m = load_model(testing::fixture("partial_body.gwt")).model;
    std::string warning;
    const CellSet s = define_space(tables(m), &warning);
    CHECK(warning.empty());
    CHECK(s.spacing == 1.0);
    CHECK(s.cells == std::vector<CellCoord>{{0, 0, 0}, {0, 0, 1}});
  }

  TEST_CASE("empty tables define an empty space with a warning") {
    std::string warning;
    const CellSet s = define_space(ModelTables{}, &warning);
    CHECK(s.cells.empty());
    CHECK_FALSE(warning.empty());
  }

  TEST_CASE("time relabelings of a two-sample model are exhausted without a witness") {
    ModelFamily fam;
    fam.base = truncate(generate_heat_grid(worked()), 2);
    const SearchResult r = independence_search(fam, PrimitiveId::TIME);
    CHECK(r.outcome == SearchResult::Outcome::none_found);
    CHECK(r.examined == r.family_size);
    CHECK(r.examined > 0);
    CHECK_FALSE(r.witness);
  }

  TEST_CASE("space is not independent in the default scenario") {
    ModelFamily fam;
    fam.base = generate_heat_grid(default_scenario());
    const SearchResult r = independence_search(fam, PrimitiveId::SPACE);
    CHECK(r.outcome == SearchResult::Outcome::none_found);
  }

  TEST_CASE("energy has a witness pair that agrees elsewhere") {
    ModelFamily fam;
    fam.base = generate_heat_grid(default_scenario());
    const SearchResult r = independence_search(fam, PrimitiveId::E);
    REQUIRE(r.outcome == SearchResult::Outcome::witness);
    REQUIRE(r.witness);
    const ModelTables a = tables(r.witness->first), b = tables(r.witness->second);
    CHECK(a.energy != b.energy);
    CHECK(a.heat == b.heat);
    CHECK(a.entropy == b.entropy);
    CHECK(a.entropy_flux == b.entropy_flux);
    CHECK(r.witness->first.time == r.witness->second.time);
    CHECK(check_all(r.witness->second).pass());
  }

  TEST_CASE("the control constant is independent") {
    ModelFamily fam;
    fam.base = generate_heat_grid(default_scenario());
    const SearchResult r = control_search(fam);
    REQUIRE(r.outcome == SearchResult::Outcome::witness);
    REQUIRE(r.witness);
    REQUIRE(r.witness->dummy);
    CHECK(r.witness->dummy->first != r.witness->dummy->second);
    CHECK(r.witness->first == r.witness->second);
  }

  TEST_CASE("an exhausted budget is inconclusive") {
    ModelFamily fam;
    fam.base = generate_heat_grid(default_scenario());
    fam.budget = 3;
    CHECK(independence_search(fam, PrimitiveId::TIME).outcome == SearchResult::Outcome::inconclusive);
  }

  TEST_CASE("a base model violating an axiom is refused") {
    ModelFamily fam;
    fam.base = mutate(generate_heat_grid(default_scenario()), "T10");
    CHECK_THROWS_AS(independence_search(fam, PrimitiveId::E), PreconditionError);
  }

  TEST_CASE("timeless round trip") {
    const ThermoModel m = generate_heat_grid(default_scenario());
    const TimelessModel tm = to_timeless(m);
    CHECK(tm.energy.size() == m.samples());
    CHECK(with_defined_time(tm) == m);
  }

  TEST_CASE("timeless suite agrees with the full suite") {
    const ThermoModel base = generate_heat_grid(default_scenario());
    std::vector<ThermoModel> models{base};
    for (const auto& t : mutation_targets()) models.push_back(mutate(base, t));
    for (const ThermoModel& m : models) {
      const CheckReport full = check_all(m);
      const CheckReport nt = check_all_NT(to_timeless(m));
      REQUIRE(nt.results.size() == full.results.size());
      CHECK(nt.pass() == full.pass());
      for (const CheckResult& r : full.results) {
        INFO(r.id);
        CHECK(nt.at(nt_id(r.id)).verdict == r.verdict);
      }
    }
  }
}
