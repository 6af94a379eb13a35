#include <doctest.h>

#include <cstdio>
#include <vector>

#include "mcal/dist.hpp"
#include "mcal/errors.hpp"
#include "mcal/io.hpp"
#include "mcal/predict.hpp"
#include "mcal/proper.hpp"
#include "test_util.hpp"

using mcal::ojson;

TEST_CASE("distribution JSON round-trips exactly") {
  const mcal::FiniteDistribution d = mcal::random_cube_distribution(3, 77);
  const ojson j = mcal::to_json(d);
  CHECK(j.at("dim") == 3);
  CHECK(j.at("feature_kind") == "pm1");
  const mcal::FiniteDistribution back = mcal::dist_from_json(j);
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back.point(i).x == d.point(i).x);
    CHECK(back.point(i).w == d.point(i).w);
    CHECK(back.point(i).eta == d.point(i).eta);
  }
  CHECK(mcal::to_json(back) == j);  // stable serialization
}

TEST_CASE("distribution JSON rejects malformed input") {
  ojson j = mcal::to_json(mcal::make_majority_distribution(3));
  SUBCASE("bad kind") {
    j["feature_kind"] = "spherical";
    CHECK_THROWS_AS(mcal::dist_from_json(j), mcal::invalid_argument_error);
  }
  SUBCASE("missing field") {
    j.erase("points");
    CHECK_THROWS_AS(mcal::dist_from_json(j), mcal::invalid_argument_error);
  }
  SUBCASE("wrong type") {
    j["dim"] = "three";
    CHECK_THROWS_AS(mcal::dist_from_json(j), mcal::invalid_argument_error);
  }
}

TEST_CASE("all predictor kinds round-trip through JSON") {
  const mcal::FiniteDistribution d = mcal::random_cube_distribution(3, 5);
  const std::vector<mcal::Predictor> cases = {
      mcal::Predictor{testutil::random_table_predictor(d, 1)},
      mcal::Predictor{testutil::random_junta_predictor(3, 2, 2)},
      mcal::Predictor{testutil::random_dag(3, false, 4, 3)},
  };
  for (const mcal::Predictor& f : cases) {
    const mcal::Predictor back = mcal::predictor_from_json(mcal::to_json(f));
    CHECK(mcal::describe(back) == mcal::describe(f));
    CHECK(mcal::to_json(back) == mcal::to_json(f));
  }
}

TEST_CASE("all auditor kinds round-trip through JSON") {
  const mcal::FiniteDistribution d = mcal::random_cube_distribution(3, 6);
  const std::vector<mcal::Auditor> cases = {
      mcal::Auditor{testutil::random_table_auditor(d, 1)},
      mcal::Auditor{testutil::random_junta_auditor(3, 2, 2)},
      mcal::Auditor{mcal::MajorityAuditor({0, 1, 2})},
      mcal::Auditor{testutil::random_dag(3, true, 4, 3)},
  };
  for (const mcal::Auditor& c : cases) {
    const mcal::Auditor back = mcal::auditor_from_json(mcal::to_json(c));
    CHECK(mcal::describe(back) == mcal::describe(c));
    CHECK(mcal::to_json(back) == mcal::to_json(c));
  }
  // auditor lists accept both a bare array and an {"auditors": [...]} wrapper
  ojson arr = ojson::array();
  for (const mcal::Auditor& c : cases) arr.push_back(mcal::to_json(c));
  CHECK(mcal::auditors_from_json(arr).size() == cases.size());
  ojson wrapped;
  wrapped["auditors"] = arr;
  CHECK(mcal::auditors_from_json(wrapped).size() == cases.size());
}

TEST_CASE("network JSON preserves evaluation, not only shape") {
  const mcal::ReluDag g = testutil::random_dag(2, true, 5, 11);
  const mcal::ReluDag back = mcal::dag_from_json(mcal::to_json(g));
  mcal::SplitMix64 r{4};
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> x = {r.next_in(-1, 1), r.next_in(-1, 1)};
    const double v = r.next_double();
    CHECK(back.forward(x, v) == g.forward(x, v));
  }
}

TEST_CASE("a predictor network must not read the prediction input") {
  ojson j = mcal::to_json(testutil::random_dag(2, true, 3, 9));
  CHECK_THROWS_AS(mcal::predictor_from_json(j), mcal::invalid_argument_error);
}

TEST_CASE("unknown kinds are rejected") {
  ojson j;
  j["kind"] = "oracle";
  CHECK_THROWS_AS(mcal::predictor_from_json(j), mcal::invalid_argument_error);
  CHECK_THROWS_AS(mcal::auditor_from_json(j), mcal::invalid_argument_error);
}

TEST_CASE("dual predictor tables round-trip") {
  const mcal::FiniteDistribution d = mcal::random_cube_distribution(2, 8);
  mcal::SplitMix64 r{21};
  std::vector<std::vector<double>> xs;
  std::vector<double> ts;
  for (const mcal::DistPoint& p : d.points()) {
    xs.push_back(p.x);
    ts.push_back(r.next_in(-5.0, 5.0));
  }
  const mcal::DualPredictor g(xs, ts);
  const mcal::DualPredictor back = mcal::dual_predictor_from_json(mcal::to_json(g));
  for (const mcal::DistPoint& p : d.points()) CHECK(back.eval(p.x) == g.eval(p.x));
}

TEST_CASE("file helpers report the offending path") {
  CHECK_THROWS_WITH_AS(mcal::load_json_file("/nonexistent/x.json"),
                       doctest::Contains("/nonexistent/x.json"),
                       mcal::invalid_argument_error);
  const std::string path = "/tmp/mcal_io_test.json";
  ojson j;
  j["a"] = 1;
  mcal::save_json_file(path, j);
  CHECK(mcal::load_json_file(path) == j);
  std::remove(path.c_str());
}
