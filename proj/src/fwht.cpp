#include "mcal/fwht.hpp"

#include <bit>

#include "mcal/errors.hpp"

namespace mcal {

namespace {

void check_pow2(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0)
    throw invalid_argument_error("fwht: length must be a power of two");
}

inline void butterfly_block(double* a, std::size_t base, std::size_t len) {
  for (std::size_t i = base; i < base + len; ++i) {
    const double u = a[i];
    const double v = a[i + len];
    a[i] = u + v;
    a[i + len] = u - v;
  }
}

}  // namespace

void fwht_serial(std::vector<double>& a) {
  check_pow2(a.size());
  const std::size_t n = a.size();
  for (std::size_t len = 1; len < n; len <<= 1)
    for (std::size_t base = 0; base < n; base += 2 * len) butterfly_block(a.data(), base, len);
}

void fwht(std::vector<double>& a) {
  check_pow2(a.size());
  const std::size_t n = a.size();
  if (n < (std::size_t{1} << 14)) {
    fwht_serial(a);
    return;
  }
  for (std::size_t len = 1; len < n; len <<= 1) {
    const long long nblocks = static_cast<long long>(n / (2 * len));
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < nblocks; ++b)
      butterfly_block(a.data(), static_cast<std::size_t>(b) * 2 * len, len);
  }
}

std::vector<double> fourier_coefficients(std::vector<double> table) {
  const std::size_t n = table.size();
  check_pow2(n);
  fwht(table);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t s = 0; s < n; ++s) {
    const int parity = std::popcount(s) & 1;
    table[s] *= parity ? -inv : inv;
  }
  return table;
}

}  // namespace mcal
