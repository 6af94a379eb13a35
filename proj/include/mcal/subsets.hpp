#pragma once
#include <cstdint>
#include <vector>

#include "mcal/errors.hpp"

namespace mcal {

// Size-j subsets of {0..m-1} in lexicographic order, written as strictly
// increasing index vectors. Ranks follow the same order, so a scan can be
// chunked by rank and still report a deterministic winner.

std::uint64_t binomial(int n, int k);  // exact for n <= 64

std::vector<int> unrank_combination(int m, int j, std::uint64_t rank);
bool next_combination(int m, std::vector<int>& c);  // false after the last one

struct SubsetBest {
  double score = 0.0;
  std::uint64_t rank = 0;
  std::vector<int> coords;
};

namespace detail {

template <class ScoreFn>
void scan_chunk(int m, int j, std::uint64_t lo, std::uint64_t hi, bool minimize,
                ScoreFn& score, SubsetBest& out) {
  std::vector<int> c = unrank_combination(m, j, lo);
  out.score = score(c);
  out.rank = lo;
  for (std::uint64_t r = lo + 1; r < hi; ++r) {
    next_combination(m, c);
    const double s = score(c);
    if (minimize ? s < out.score : s > out.score) {
      out.score = s;
      out.rank = r;
    }
  }
}

}  // namespace detail

// Evaluates score() on every size-j subset and returns the minimizer (or
// maximizer). Ties resolve to the lexicographically earliest subset. score()
// must be pure: chunks are evaluated in parallel.
template <class ScoreFn>
SubsetBest scan_subsets_best(int m, int j, bool minimize, ScoreFn&& score) {
  const std::uint64_t total = binomial(m, j);
  if (total == 0) throw invalid_argument_error("scan_subsets_best: empty subset family");
  constexpr std::uint64_t kChunk = 256;
  const std::uint64_t nchunks = (total + kChunk - 1) / kChunk;
  std::vector<SubsetBest> part(nchunks);
#pragma omp parallel for schedule(dynamic)
  for (long long ci = 0; ci < static_cast<long long>(nchunks); ++ci) {
    const std::uint64_t lo = static_cast<std::uint64_t>(ci) * kChunk;
    const std::uint64_t hi = lo + kChunk < total ? lo + kChunk : total;
    detail::scan_chunk(m, j, lo, hi, minimize, score, part[ci]);
  }
  SubsetBest best = part[0];
  for (std::uint64_t ci = 1; ci < nchunks; ++ci) {
    const SubsetBest& p = part[ci];
    if (minimize ? p.score < best.score : p.score > best.score) best = p;
  }
  best.coords = unrank_combination(m, j, best.rank);
  return best;
}

template <class ScoreFn>
SubsetBest scan_subsets_best_serial(int m, int j, bool minimize, ScoreFn&& score) {
  const std::uint64_t total = binomial(m, j);
  if (total == 0) throw invalid_argument_error("scan_subsets_best: empty subset family");
  SubsetBest best;
  detail::scan_chunk(m, j, 0, total, minimize, score, best);
  best.coords = unrank_combination(m, j, best.rank);
  return best;
}

}  // namespace mcal
