#include <doctest.h>

#include <cmath>
#include <vector>

#include "mcal/errors.hpp"
#include "mcal/nncompose.hpp"
#include "mcal/predict.hpp"
#include "mcal/rng.hpp"
#include "test_util.hpp"

TEST_CASE("the two-node gadget is exactly clip on a dense grid") {
  // identity network on one input, then clip
  const mcal::ReluDag id(1, false, {{{0}, {1.0}, 0.0, mcal::Act::linear}}, 0);
  const mcal::ReluDag clipped = mcal::with_clip_of(id, 1);  // slot 1 = the node
  CHECK(clipped.node_count() == 3);
  for (int i = -50; i <= 50; ++i) {
    const double a = i / 20.0;  // [-2.5, 2.5]
    const std::vector<double> x = {a};
    CHECK(clipped.forward(x) == mcal::clip01(a));
  }
}

TEST_CASE("composed update equals the separately evaluated reference") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int inputs = 1 + static_cast<int>(seed % 4);
    const int nf = static_cast<int>(seed % 7);
    const int nc = 1 + static_cast<int>((seed / 7) % 6);
    const mcal::ReluDag f = testutil::random_dag(inputs, false, nf, 9000 + seed);
    const mcal::ReluDag c = testutil::random_dag(inputs, true, nc, 9100 + seed);
    const double beta = -1.0 + 2.0 * ((seed % 11) / 10.0);
    const mcal::ReluDag h = mcal::compose_clip_update(f, c, beta);
    CHECK(h.node_count() == nf + nc + 2);
    mcal::SplitMix64 r{seed};
    for (int t = 0; t < 100; ++t) {
      std::vector<double> x(inputs);
      for (double& xi : x) xi = r.next_in(-1.0, 1.0);
      const double fv = f.forward(x);
      const double want = mcal::clip01(fv + beta * c.forward(x, fv));
      CHECK(h.forward(x) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("inlining linear nodes preserves the function and removes nodes") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int inputs = 1 + static_cast<int>(seed % 3);
    const mcal::ReluDag g = testutil::random_dag(inputs, false, 6, 9500 + seed);
    const mcal::ReluDag slim = mcal::inline_linear_nodes(g);
    CHECK(slim.node_count() <= g.node_count());
    int internal_linear = 0;
    for (int j = 0; j + 1 < slim.node_count(); ++j)
      if (slim.nodes()[j].act == mcal::Act::linear) ++internal_linear;
    // only the output node may stay linear
    CHECK(internal_linear == 0);
    mcal::SplitMix64 r{seed + 1};
    for (int t = 0; t < 100; ++t) {
      std::vector<double> x(inputs);
      for (double& xi : x) xi = r.next_in(-1.0, 1.0);
      CHECK(slim.forward(x) == doctest::Approx(g.forward(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("an empty predictor network composes as the constant zero") {
  const mcal::ReluDag f(2, false, {}, -1);
  CHECK(f.forward(std::vector<double>{1.0, -1.0}) == 0.0);
  const mcal::ReluDag c = testutil::random_dag(2, true, 3, 4);
  const mcal::ReluDag h = mcal::compose_clip_update(f, c, 0.5);
  CHECK(h.node_count() == 0 + 3 + 2);
  mcal::SplitMix64 r{11};
  for (int t = 0; t < 50; ++t) {
    const std::vector<double> x = {r.next_in(-1, 1), r.next_in(-1, 1)};
    CHECK(h.forward(x) == doctest::Approx(mcal::clip01(0.5 * c.forward(x, 0.0))).epsilon(1e-12));
  }
}

TEST_CASE("an auditor that ignores the prediction composes fine") {
  const mcal::ReluDag f = testutil::random_dag(2, false, 3, 21);
  const mcal::ReluDag c = testutil::random_dag(2, false, 2, 22);  // no v input
  const mcal::ReluDag h = mcal::compose_clip_update(f, c, -0.75);
  CHECK(h.node_count() == 3 + 2 + 2);
  mcal::SplitMix64 r{23};
  for (int t = 0; t < 50; ++t) {
    const std::vector<double> x = {r.next_in(-1, 1), r.next_in(-1, 1)};
    const double want = mcal::clip01(f.forward(x) - 0.75 * c.forward(x));
    CHECK(h.forward(x) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("composition validates its preconditions") {
  const mcal::ReluDag f = testutil::random_dag(2, false, 2, 31);
  const mcal::ReluDag fv = testutil::random_dag(2, true, 2, 32);
  const mcal::ReluDag c3 = testutil::random_dag(3, true, 2, 33);
  const mcal::ReluDag c2 = testutil::random_dag(2, true, 2, 34);
  CHECK_THROWS_AS(mcal::compose_clip_update(fv, c2, 0.5), mcal::invalid_argument_error);
  CHECK_THROWS_AS(mcal::compose_clip_update(f, c3, 0.5), mcal::domain_mismatch_error);
  CHECK_THROWS_AS(mcal::compose_clip_update(f, c2, 1.5), mcal::invalid_argument_error);
}

TEST_CASE("network wiring is validated on construction") {
  // node 0 reading slot 2 (itself) is a forward reference
  CHECK_THROWS_AS(mcal::ReluDag(2, false, {{{2}, {1.0}, 0.0, mcal::Act::relu}}, 0),
                  mcal::invalid_argument_error);
  CHECK_THROWS_AS(mcal::ReluDag(2, false, {{{0}, {1.0}, 0.0, mcal::Act::relu}}, 5),
                  mcal::invalid_argument_error);
  CHECK_THROWS_AS(mcal::ReluDag(2, false, {{{0}, {1.0, 2.0}, 0.0, mcal::Act::relu}}, 0),
                  mcal::invalid_argument_error);
  // a network expecting v refuses the v-less entry point
  const mcal::ReluDag g(1, true, {{{1}, {1.0}, 0.0, mcal::Act::relu}}, 0);
  CHECK_THROWS_AS(g.forward(std::vector<double>{0.5}), mcal::invalid_argument_error);
}

TEST_CASE("composition report flags every check it runs") {
  const mcal::ReluDag f = testutil::random_dag(3, false, 4, 41);
  const mcal::ReluDag c = testutil::random_dag(3, true, 5, 42);
  const mcal::CompositionReport r = mcal::composition_check(f, c, 0.25, 400, 7);
  CHECK(r.nodes_f == 4);
  CHECK(r.nodes_c == 5);
  CHECK(r.nodes_h == 11);
  CHECK(r.expected_nodes == 11);
  CHECK(r.node_count_ok);
  CHECK(r.samples == 400);
  CHECK(r.max_abs_err <= 1e-9);
  CHECK(r.values_ok);
  CHECK(r.ok);
}
