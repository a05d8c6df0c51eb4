#include <catch_amalgamated.hpp>

#include <sstream>

#include "dysob/io.hpp"
#include "dysob/random.hpp"
#include "dysob/suites.hpp"

using namespace dysob;

TEST_CASE("step function json schema and round trip") {
  const StepFunction f = random_step_function(7, 4);
  const json j = to_json(f);
  CHECK(j.at("depth") == 4);
  CHECK(j.at("values").size() == 16);
  const StepFunction back = step_function_from_json(j);
  CHECK(back.depth() == f.depth());
  CHECK(back.values() == f.values());
}

TEST_CASE("haar coefficient json schema and round trip") {
  const HaarCoeffs c = random_haar_coeffs(9, 5);
  const json j = to_json(c);
  CHECK(j.at("depth") == 5);
  CHECK(j.at("mean").get<double>() == c.mean());
  CHECK(j.at("coeffs").size() == 31);
  for (const auto& e : j.at("coeffs")) {
    CHECK(e.contains("level"));
    CHECK(e.contains("pos"));
    CHECK(e.contains("value"));
  }
  const HaarCoeffs back = haar_coeffs_from_json(j);
  CHECK(back.mean() == c.mean());
  for (int lvl = 0; lvl < 5; ++lvl) CHECK(back.levels()[lvl] == c.levels()[lvl]);
}

TEST_CASE("haar coefficients accept sparse entries") {
  const json j{{"depth", 2}, {"mean", 1.5}, {"coeffs", json::array({json{{"level", 1}, {"pos", 1}, {"value", -2.0}}})}};
  const HaarCoeffs c = haar_coeffs_from_json(j);
  CHECK(c.mean() == 1.5);
  CHECK(c.at({0, 0}) == 0.0);
  CHECK(c.at({1, 1}) == -2.0);
  const json bad{{"depth", 1}, {"mean", 0.0}, {"coeffs", json::array({json{{"level", 3}, {"pos", 0}, {"value", 1.0}}})}};
  CHECK_THROWS_AS(haar_coeffs_from_json(bad), std::invalid_argument);
}

TEST_CASE("dyadic set json round trip") {
  const DyadicSet E(3, {0, 5, 6});
  const json j = to_json(E);
  CHECK(j.at("depth") == 3);
  CHECK(j.at("leaves") == json::array({0, 5, 6}));
  CHECK(dyadic_set_from_json(j) == E);
}

TEST_CASE("carleson sequence json round trip") {
  CarlesonSequence mu(2);
  mu.set({0, 0}, 0.5);
  mu.set({2, 3}, 1.25);
  const json j = to_json(mu);
  CHECK(j.at("depth") == 2);
  CHECK(j.at("entries").size() == 7);
  const CarlesonSequence back = carleson_sequence_from_json(j);
  CHECK(back.at({0, 0}) == 0.5);
  CHECK(back.at({2, 3}) == 1.25);
  CHECK(back.at({1, 0}) == 0.0);
}

TEST_CASE("capacity estimate json carries the certificate inline") {
  const CapacityEstimate est = capacity(DyadicSet(1, {0}), FracParameter(0.5), 3);
  const json j = to_json(est);
  CHECK(j.at("value").get<double>() == est.value);
  CHECK(j.at("solve_depth") == 3);
  CHECK(j.contains("kkt_residual"));
  CHECK(j.contains("iterations"));
  CHECK(j.at("certificate").at("values").size() == 8);
}

TEST_CASE("norm report json is flat") {
  const NormReport r = norm_report(random_step_function(3, 4), FracParameter(0.6));
  const json j = to_json(r);
  for (const char* key : {"s", "l2", "sup", "hs", "hs_dot", "hs_leftright"}) CHECK(j.contains(key));
  CHECK(j.size() == 6);
}

TEST_CASE("suite csv format") {
  const std::vector<SuiteRow> rows{{"demo", 0.5, 3, 11, "ratio", 1.25}};
  std::ostringstream os;
  write_suite_csv(os, rows);
  CHECK(os.str() == "suite,s,depth,seed,statistic,value\ndemo,0.5,3,11,ratio,1.25\n");
}

TEST_CASE("csv doubles round trip") {
  for (double x : {1.0 / 3.0, 1e-300, -2.5, 0.1 + 0.2}) {
    CHECK(std::stod(csv_double(x)) == x);
  }
}

TEST_CASE("identity suites are deterministic across job counts") {
  const auto a = run_identity_suites(5, 77, 40, 1);
  const auto b = run_identity_suites(5, 77, 40, 2);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].max_residual == b[i].max_residual);
  }
}

TEST_CASE("suite rows are deterministic across job counts") {
  ExperimentConfig cfg;
  cfg.seed = 5;
  cfg.trials = 8;
  cfg.depth = 5;
  cfg.s_values = {0.6};
  cfg.jobs = 1;
  const auto rows1 = algebra_suite(cfg);
  cfg.jobs = 2;
  const auto rows2 = algebra_suite(cfg);
  REQUIRE(rows1.size() == rows2.size());
  for (std::size_t i = 0; i < rows1.size(); ++i) {
    CHECK(rows1[i].statistic == rows2[i].statistic);
    CHECK(rows1[i].value == rows2[i].value);
  }
}
