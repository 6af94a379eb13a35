#include "mcal/majority.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "mcal/errors.hpp"
#include "mcal/fwht.hpp"
#include "mcal/reduce.hpp"

namespace mcal {

namespace {

void require_odd(int k, const char* what) {
  if (k < 1 || k % 2 == 0)
    throw invalid_argument_error(std::string(what) + " must be odd and positive, got " +
                                 std::to_string(k));
}

std::vector<double> maj_table(int k, int m) {
  // majority of the first k coordinates, tabulated over all 2^m codes
  std::vector<double> t(std::size_t{1} << m);
  for (std::uint64_t code = 0; code < t.size(); ++code)
    t[code] = static_cast<double>(maj_bits(code, k));
  return t;
}

}  // namespace

int maj(std::span<const double> x) {
  require_odd(static_cast<int>(x.size()), "maj: input length");
  double s = 0.0;
  for (double v : x) {
    if (v != 1.0 && v != -1.0)
      throw invalid_argument_error("maj: entries must be +1 or -1");
    s += v;
  }
  return s > 0.0 ? 1 : -1;
}

int maj_bits(std::uint64_t code, int k) {
  require_odd(k, "maj_bits: k");
  const std::uint64_t mask = k == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  return 2 * std::popcount(code & mask) > k ? 1 : -1;
}

double maj_fourier_level1(int k) {
  require_odd(k, "maj_fourier_level1: k");
  double r = 1.0;
  for (int i = 1; i <= (k - 1) / 2; ++i)
    r *= (2.0 * i - 1.0) / (2.0 * i);
  const double lower = std::sqrt(2.0 / (std::numbers::pi * k));
  if (!(r > lower))
    throw check_failed_error("maj_fourier_level1: closed form fell below sqrt(2/(pi k))");
  return r;
}

double maj_correlation(int k, int m, CorrelationMethod method, const Limits& limits) {
  require_odd(k, "maj_correlation: k");
  require_odd(m, "maj_correlation: m");
  if (k > m) throw invalid_argument_error("maj_correlation: k > m");
  if (m > limits.max_cube_dim)
    throw resource_limit_error("maj_correlation: m = " + std::to_string(m) +
                               " exceeds max_cube_dim = " + std::to_string(limits.max_cube_dim));

  double value = 0.0;
  if (method == CorrelationMethod::brute) {
    const std::size_t n = std::size_t{1} << m;
    value = blocked_sum(n, [&](std::size_t code) {
              return static_cast<double>(maj_bits(code, k) * maj_bits(code, m));
            }) /
            static_cast<double>(n);
  } else {
    // Pairing the coefficients: only subsets of the first k coordinates can
    // appear on both sides, the even levels must vanish exactly, and every
    // surviving product is nonnegative.
    std::vector<double> ck = fourier_coefficients(maj_table(k, m));
    std::vector<double> cm = fourier_coefficients(maj_table(m, m));
    const std::size_t full = std::size_t{1} << m;
    const std::uint64_t low = (std::uint64_t{1} << k) - 1;
    for (std::size_t s = 0; s < full; ++s) {
      const bool outside = (s & ~low) != 0;
      if (outside && ck[s] != 0.0)
        throw check_failed_error("maj_correlation: coefficient outside the first k coordinates");
      if (std::popcount(s) % 2 == 0 && (ck[s] != 0.0 || cm[s] != 0.0))
        throw check_failed_error("maj_correlation: even-level coefficient is nonzero");
      if (!outside && ck[s] * cm[s] < 0.0)
        throw check_failed_error("maj_correlation: negative coefficient product");
    }
    value = blocked_sum(std::size_t{1} << k, [&](std::size_t s) { return ck[s] * cm[s]; });
  }

  const double lower = (2.0 / std::numbers::pi) * std::sqrt(static_cast<double>(k) / m);
  if (!(value > lower))
    throw check_failed_error("maj_correlation: value " + std::to_string(value) +
                             " not above (2/pi)sqrt(k/m) = " + std::to_string(lower));
  return value;
}

}  // namespace mcal
