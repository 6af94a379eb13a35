#include "mcal/subsets.hpp"

namespace mcal {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (n > 64) throw invalid_argument_error("binomial: n > 64");
  if (k > n - k) k = n - k;
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(c);
}

std::vector<int> unrank_combination(int m, int j, std::uint64_t rank) {
  if (j < 0 || m < 0 || j > m) throw invalid_argument_error("unrank_combination: j > m");
  if (rank >= binomial(m, j)) throw invalid_argument_error("unrank_combination: rank out of range");
  std::vector<int> out(static_cast<std::size_t>(j));
  std::uint64_t rem = rank;
  int cand = 0;
  for (int t = 0; t < j; ++t) {
    for (;; ++cand) {
      const std::uint64_t cnt = binomial(m - 1 - cand, j - 1 - t);
      if (rem < cnt) break;
      rem -= cnt;
    }
    out[static_cast<std::size_t>(t)] = cand++;
  }
  return out;
}

bool next_combination(int m, std::vector<int>& c) {
  const int j = static_cast<int>(c.size());
  int i = j - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == m - j + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int t = i + 1; t < j; ++t)
    c[static_cast<std::size_t>(t)] = c[static_cast<std::size_t>(t - 1)] + 1;
  return true;
}

}  // namespace mcal
