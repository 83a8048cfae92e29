#include <string>

#include "doctest.h"
#include "gwt/axioms.hpp"
#include "gwt/model_file.hpp"
#include "gwt/refmodels.hpp"
#include "support.hpp"

using namespace gwt;

namespace {

ParseError parse_failure(const std::string& text) {
  try {
    parse_model(text, "t.gwt");
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError("", {});
}

}  // namespace

TEST_SUITE("model_file") {
  TEST_CASE("generator block reproduces the generator") {
    const ModelFile f = load_model(testing::fixture("default_scenario.gwt"));
    REQUIRE(f.generator);
    CHECK(*f.generator == default_scenario());
    CHECK(f.model == generate_heat_grid(default_scenario()));
  }

  TEST_CASE("explicit tables of the default scenario match the generator") {
    const ModelFile f = load_model(testing::fixture("default_tables.gwt"));
    CHECK_FALSE(f.generator);
    CHECK(f.model == generate_heat_grid(default_scenario()));
  }

  TEST_CASE("emitted generator parses back") {
    HeatParams p = default_scenario();
    p.bath = CellId{3};
    p.seed = 0xfedcba9876543210ULL;
    const ModelFile f = parse_model(emit_generator(p));
    REQUIRE(f.generator);
    CHECK(*f.generator == p);
  }

  TEST_CASE("round trip of fixtures and mutants") {
    std::vector<ThermoModel> models;
    for (const char* name : {"default_tables.gwt", "worked_1x1x2.gwt", "partial_body.gwt", "mutant_T10.gwt"}) {
      models.push_back(load_model(testing::fixture(name)).model);
    }
    const ThermoModel base = generate_heat_grid(default_scenario());
    for (const auto& t : mutation_targets()) models.push_back(mutate(base, t));
    for (const ThermoModel& m : models) {
      const std::string text = emit_model(m);
      const ThermoModel back = parse_model(text).model;
      CHECK(back == m);
      CHECK(emit_model(back) == text);
    }
  }

  TEST_CASE("mutant fixture fails only its target") {
    const CheckReport r = check_all(load_model(testing::fixture("mutant_T10.gwt")).model);
    for (const auto& c : r.results) {
      INFO(c.id);
      CHECK((c.verdict == Verdict::fail) == (c.id == "T10"));
    }
  }

  TEST_CASE("duplicated time sample is located") {
    try {
      load_model(testing::fixture("bad_duplicate_time.gwt"));
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      REQUIRE(e.diagnostics().size() == 1);
      CHECK(e.diagnostics()[0].line == 8);
      CHECK(e.diagnostics()[0].column == 17);
      CHECK(e.diagnostics()[0].message.find("duplicated") != std::string::npos);
      CHECK(std::string(e.what()).find("bad_duplicate_time.gwt:8:17:") != std::string::npos);
    }
  }

  TEST_CASE("unknown flux source is located") {
    try {
      load_model(testing::fixture("bad_unknown_source.gwt"));
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      REQUIRE_FALSE(e.diagnostics().empty());
      CHECK(e.diagnostics()[0].line == 13);
      CHECK(e.diagnostics()[0].message.find("unknown source") != std::string::npos);
    }
  }

  TEST_CASE("several problems are reported in line order") {
    const ParseError e = parse_failure(
        "gwtherm-model 1\n"
        "[grid]\n"
        "dims = 1 1 2\n"
        "spacing = 1\n"
        "[time]\n"
        "samples = 0 1\n"
        "[body]\n"
        "cells = all\n"
        "[energy 0]\n"
        "(0,0,5) = 1\n"
        "(0,0,0) = x\n"
        "[bogus]\n");
    REQUIRE(e.diagnostics().size() >= 3);
    CHECK(e.diagnostics()[0].line == 10);
    CHECK(e.diagnostics()[1].line == 11);
    CHECK(e.diagnostics()[2].line == 12);
    for (const auto& d : e.diagnostics()) CHECK(d.column >= 1);
  }

  TEST_CASE("header and section mixing") {
    CHECK_THROWS_AS(parse_model("not-a-model\n"), ParseError);
    CHECK_THROWS_AS(parse_model("gwtherm-model 2\n"), ParseError);
    const ParseError e = parse_failure(
        "gwtherm-model 1\n[generator]\nnx = 1\n[grid]\ndims = 1 1 1\nspacing = 1\n");
    CHECK_FALSE(e.diagnostics().empty());
  }

  TEST_CASE("missing file") { CHECK_THROWS_AS(load_model("/nonexistent/file.gwt"), Error); }
}
