#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "mcal/fwht.hpp"
#include "mcal/reduce.hpp"
#include "mcal/rng.hpp"
#include "mcal/subsets.hpp"
#include "test_util.hpp"

TEST_CASE("splitmix64 matches the published sequence") {
  // reference values computed from the algorithm as documented (64-bit state,
  // golden-gamma increment, two xor-multiply mixes)
  {
    mcal::SplitMix64 r{0};
    CHECK(r.next() == 0xe220a8397b1dcdafull);
    CHECK(r.next() == 0x6e789e6aa1b965f4ull);
    CHECK(r.next() == 0x06c45d188009454full);
    CHECK(r.next() == 0xf88bb8a8724c81ecull);
  }
  {
    mcal::SplitMix64 r{1};
    CHECK(r.next() == 0x910a2dec89025cc1ull);
    CHECK(r.next() == 0xbeeb8da1658eec67ull);
  }
  {
    mcal::SplitMix64 r{0xDEADBEEFull};
    CHECK(r.next() == 0x4adfb90f68c9eb9bull);
  }
  {
    mcal::SplitMix64 r{42};
    CHECK(r.next_double() == doctest::Approx(0.7415648787718233).epsilon(1e-15));
  }
}

TEST_CASE("splitmix64 derived draws stay in range") {
  mcal::SplitMix64 r{99};
  for (int i = 0; i < 1000; ++i) {
    const double d = r.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
    const double u = r.next_in(-2.5, 3.5);
    CHECK(u >= -2.5);
    CHECK(u < 3.5);
    CHECK(r.next_below(7) < 7);
  }
}

TEST_CASE("blocked sum equals high-precision reference") {
  const std::size_t n = 100000;
  auto term = [](std::size_t i) {
    mcal::SplitMix64 r{i};
    return r.next_double() - 0.5;
  };
  long double ref = 0.0L;
  for (std::size_t i = 0; i < n; ++i) ref += static_cast<long double>(term(i));
  const double got = mcal::blocked_sum(n, term);
  CHECK(std::abs(got - static_cast<double>(ref)) <= 1e-10);
  CHECK(mcal::blocked_sum_serial(n, term) == got);  // bitwise
}

TEST_CASE("blocked sum keeps cancellation error at the block-rounding floor") {
  // huge alternating terms with tiny payloads: a naive running sum loses the
  // payloads entirely, compensation inside each block keeps them
  const std::size_t n = mcal::kReduceBlock;  // single block: exact compensation
  auto term = [](std::size_t i) {
    const double payload = 1e-6 * static_cast<double>(i % 7);
    return (i % 2 == 0) ? 1e12 + payload : -1e12 + payload;
  };
  long double ref = 0.0L;
  for (std::size_t i = 0; i < n; ++i) ref += static_cast<long double>(term(i));
  const double got = mcal::blocked_sum(n, term);
  CHECK(got == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}

TEST_CASE("blocked sum: serial and parallel agree bitwise across sizes") {
  for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(4095), std::size_t(4096),
                        std::size_t(4097), std::size_t(20000), std::size_t(1) << 17}) {
    auto term = [](std::size_t i) {
      mcal::SplitMix64 r{i * 7 + 1};
      return r.next_double() * 2.0 - 1.0;
    };
    const double a = mcal::blocked_sum_serial(n, term);
    const double b = mcal::blocked_sum(n, term);
    CHECK(a == b);
  }
}

TEST_CASE("neumaier accumulator survives classic cancellation") {
  mcal::NeumaierAcc acc;
  acc.add(1.0);
  acc.add(1e100);
  acc.add(1.0);
  acc.add(-1e100);
  CHECK(acc.get() == 2.0);
}

TEST_CASE("fwht matches the direct-definition transform") {
  for (int m = 0; m <= 8; ++m) {
    std::vector<double> a(std::size_t(1) << m);
    mcal::SplitMix64 r{static_cast<std::uint64_t>(m) + 11};
    for (double& v : a) v = r.next_double() - 0.5;
    const std::vector<double> want = testutil::naive_walsh(a);
    std::vector<double> got = a;
    mcal::fwht(got);
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
    std::vector<double> got_serial = a;
    mcal::fwht_serial(got_serial);
    CHECK(got == got_serial);  // bitwise
  }
}

TEST_CASE("fwht applied twice scales by the length") {
  std::vector<double> a = {0.25, -1.5, 3.0, 0.125, -0.75, 2.0, 0.0, 1.0};
  std::vector<double> b = a;
  mcal::fwht(b);
  mcal::fwht(b);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == doctest::Approx(8.0 * a[i]));
}

TEST_CASE("fwht rejects non-power-of-two input") {
  std::vector<double> a(3, 0.0);
  CHECK_THROWS_AS(mcal::fwht(a), mcal::invalid_argument_error);
}

TEST_CASE("fourier coefficients match the direct definition") {
  for (int m = 1; m <= 6; ++m) {
    std::vector<double> table(std::size_t(1) << m);
    mcal::SplitMix64 r{static_cast<std::uint64_t>(m) * 31};
    for (double& v : table) v = r.next_in(-1.0, 1.0);
    const std::vector<double> got = mcal::fourier_coefficients(table);
    const std::vector<double> want = testutil::naive_fourier(table);
    for (std::size_t s = 0; s < table.size(); ++s)
      CHECK(got[s] == doctest::Approx(want[s]).epsilon(1e-12));
  }
}

TEST_CASE("binomial is exact at the edges") {
  CHECK(mcal::binomial(0, 0) == 1);
  CHECK(mcal::binomial(5, 0) == 1);
  CHECK(mcal::binomial(5, 5) == 1);
  CHECK(mcal::binomial(5, 6) == 0);
  CHECK(mcal::binomial(6, 3) == 20);
  CHECK(mcal::binomial(52, 5) == 2598960ull);
  CHECK(mcal::binomial(64, 32) == 1832624140942590534ull);
}

TEST_CASE("combination unrank agrees with sequential enumeration") {
  const int m = 7, j = 3;
  std::vector<int> c = mcal::unrank_combination(m, j, 0);
  std::uint64_t rank = 0;
  do {
    CHECK(mcal::unrank_combination(m, j, rank) == c);
    ++rank;
  } while (mcal::next_combination(m, c));
  CHECK(rank == mcal::binomial(m, j));
}

TEST_CASE("subset scan: parallel equals serial and ties break to earliest rank") {
  const int m = 12, j = 5;
  // deliberately collision-heavy score so ties actually occur
  auto score = [](const std::vector<int>& c) {
    int s = 0;
    for (int v : c) s += v;
    return static_cast<double>(s % 7);
  };
  for (bool minimize : {true, false}) {
    const mcal::SubsetBest a = mcal::scan_subsets_best_serial(m, j, minimize, score);
    const mcal::SubsetBest b = mcal::scan_subsets_best(m, j, minimize, score);
    CHECK(a.rank == b.rank);
    CHECK(a.score == b.score);
    CHECK(a.coords == b.coords);
    // brute confirmation of the earliest-rank tie-break
    std::vector<int> c = mcal::unrank_combination(m, j, 0);
    std::uint64_t best_rank = 0, rank = 0;
    double best = score(c);
    while (mcal::next_combination(m, c)) {
      ++rank;
      const double s = score(c);
      if (minimize ? s < best : s > best) {
        best = s;
        best_rank = rank;
      }
    }
    CHECK(a.rank == best_rank);
    CHECK(a.score == best);
  }
}
