#pragma once
#include <cmath>
#include <cstddef>
#include <vector>

namespace mcal {

// Deterministic sums. Terms are grouped into fixed 4096-term blocks with
// Neumaier compensation inside each block and again across block totals.
// The grouping does not depend on the thread count, so the parallel and
// serial paths return bit-identical results.

inline constexpr std::size_t kReduceBlock = 4096;

struct NeumaierAcc {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double get() const { return sum + comp; }
};

namespace detail {
template <class TermFn>
double block_total(std::size_t n, TermFn& term, std::size_t b) {
  const std::size_t lo = b * kReduceBlock;
  const std::size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
  NeumaierAcc acc;
  for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
  return acc.get();
}
}  // namespace detail

template <class TermFn>
double blocked_sum_serial(std::size_t n, TermFn&& term) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
  if (nblocks == 1) return detail::block_total(n, term, 0);
  NeumaierAcc total;
  for (std::size_t b = 0; b < nblocks; ++b) total.add(detail::block_total(n, term, b));
  return total.get();
}

template <class TermFn>
double blocked_sum(std::size_t n, TermFn&& term) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
  if (nblocks == 1) return detail::block_total(n, term, 0);
  std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b)
    partial[b] = detail::block_total(n, term, static_cast<std::size_t>(b));
  NeumaierAcc total;
  for (std::size_t b = 0; b < nblocks; ++b) total.add(partial[b]);
  return total.get();
}

}  // namespace mcal
