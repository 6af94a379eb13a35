#pragma once
#include <cstdint>
#include <span>

#include "mcal/limits.hpp"

namespace mcal {

// Majority of an odd number of +/-1 entries; returns +1 or -1.
int maj(std::span<const double> x);

// Majority over the low k bits of a cube code (bit set <=> +1), k odd.
int maj_bits(std::uint64_t code, int k);

// Weight of each level-1 Fourier coefficient of majority on k bits (k odd):
//   E[ MAJ(x) * x_i ] = C(k-1, (k-1)/2) / 2^(k-1),
// evaluated as the product of (2i-1)/(2i) to stay in range for large k.
// Asserts the closed form stays strictly above sqrt(2/(pi k)).
double maj_fourier_level1(int k);

enum class CorrelationMethod { brute, fourier };

// E[ MAJ_k(x) * MAJ_m(x) ] over uniform {-1,+1}^m, where MAJ_k reads the
// first k coordinates (k <= m, both odd). brute enumerates the cube;
// fourier pairs up coefficients and also checks that every shared
// coefficient product is nonnegative and every even level vanishes.
// Asserts the result stays strictly above (2/pi) * sqrt(k/m).
double maj_correlation(int k, int m, CorrelationMethod method = CorrelationMethod::brute,
                       const Limits& limits = {});

}  // namespace mcal
