// Compares the parallel kernels against their serial reference
// implementations: same bits out, wall-clock side by side.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mcal/fwht.hpp"
#include "mcal/reduce.hpp"
#include "mcal/rng.hpp"
#include "mcal/subsets.hpp"

namespace {

template <class Fn>
double best_ms(Fn&& fn, int reps = 3) {
  double best = 1e18;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms, bool match) {
  std::printf("%-22s %10.2f ms %10.2f ms   x%5.2f   %s\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              match ? "bit-identical" : "MISMATCH");
}

double mix_term(std::size_t i) {
  mcal::SplitMix64 r{0x100 + static_cast<std::uint64_t>(i)};
  return r.next_double() - 0.5;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-22s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

  {
    const std::size_t n = std::size_t(1) << 23;
    double a = 0, b = 0;
    const double sm = best_ms([&] { a = mcal::blocked_sum_serial(n, mix_term); });
    const double pm = best_ms([&] { b = mcal::blocked_sum(n, mix_term); });
    row("blocked_sum 2^23", sm, pm, std::memcmp(&a, &b, sizeof a) == 0);
  }

  {
    const std::size_t n = std::size_t(1) << 20;
    std::vector<double> base(n);
    mcal::SplitMix64 r{7};
    for (double& v : base) v = r.next_double() - 0.5;
    std::vector<double> a, b;
    const double sm = best_ms([&] {
      a = base;
      mcal::fwht_serial(a);
    });
    const double pm = best_ms([&] {
      b = base;
      mcal::fwht(b);
    });
    row("fwht 2^20", sm, pm, a == b);
  }

  {
    const int m = 26, j = 13;  // ~10.4M subsets
    const auto score = [](const std::vector<int>& c) {
      std::uint64_t h = 0;
      for (int v : c) h = h * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(v) + 1;
      mcal::SplitMix64 r{h};
      return r.next_double();
    };
    mcal::SubsetBest a, b;
    const double sm = best_ms([&] { a = mcal::scan_subsets_best_serial(m, j, false, score); });
    const double pm = best_ms([&] { b = mcal::scan_subsets_best(m, j, false, score); });
    row("subset scan C(26,13)", sm, pm, a.rank == b.rank && a.score == b.score);
  }

  return 0;
}
