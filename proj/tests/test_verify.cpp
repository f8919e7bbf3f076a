#include "doctest.h"

#include "osc/verify.hpp"

using namespace osc::verify;

TEST_CASE("config parsing and validation")
{
  const RunConfig d = parse_config("{}");
  CHECK(d.N == 40);
  CHECK(d.M == 80);
  CHECK(d.grid.t_count == 16);

  const RunConfig c = parse_config(R"({"phys": {"m": 2.0}, "N": 12, "tolerances": {"nim.paths": 1e-8}})");
  CHECK(c.phys.m == 2.0);
  CHECK(c.phys.omega == 1.0);
  CHECK(c.N == 12);
  CHECK(c.tolerance("nim", "paths", 1e-9) == 1e-8);
  CHECK(c.tolerance("nim", "fock", 1e-7) == 1e-7);

  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"M": 4})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"t_count": 5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"x_min": 1, "x_max": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"nim.paths": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"phys": {"hbar": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"N": "forty"})"), ConfigError);

  const RunConfig back = parse_config(config_json(c));
  CHECK(back.N == c.N);
  CHECK(back.tolerances == c.tolerances);
}

TEST_CASE("suite registry and preconditions")
{
  CHECK(suite_names() == std::vector<std::string>{"algebra", "group", "lambda", "kernels", "oscillator", "nim"});
  RunConfig c;
  CHECK_THROWS_AS(run_suite("bogus", c), ConfigError);
  c.N = 2;
  CHECK_THROWS_AS(run_suite("lambda", c), ConfigError);
  CHECK(run_suite("algebra", c).pass());
}

TEST_CASE("report pass is the conjunction of its checks")
{
  SuiteReport r{"x", {osc::make_check("a", 1e-3, 1e-2), osc::make_check("b", 0.5, 1e-2, true)}, {}};
  CHECK(r.pass());
  r.checks.push_back(osc::make_check("c", std::nan(""), 1.0));
  CHECK_FALSE(r.pass());
  CHECK_FALSE(osc::make_check("d", 2.0, 1.0).pass);
  CHECK_FALSE(osc::make_check("e", 1e-3, 1e-2, true).pass);
}

TEST_CASE("suites are deterministic and reports are ordered by name")
{
  RunConfig c;
  const auto a = run_suites({"group", "algebra", "group"}, c);
  REQUIRE(a.size() == 2);
  CHECK(a[0].suite == "algebra");
  CHECK(a[1].suite == "group");
  const auto b = run_suites({"algebra", "group"}, c);
  CHECK(report_json(a, c) == report_json(b, c));
}
