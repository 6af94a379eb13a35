#pragma once
#include <cstdint>
#include <vector>

namespace mcal {

// In-place Walsh-Hadamard transform on a length-2^m array:
//   a[S] <- sum_x a[x] * (-1)^popcount(S & x).
// Unnormalized; applying it twice multiplies by 2^m.
void fwht(std::vector<double>& a);
void fwht_serial(std::vector<double>& a);

// Fourier coefficients of a function tabulated over cube codes, where bit i
// of the code being set means x_i = +1:
//   coef[S] = E_x [ f(x) * prod_{i in S} x_i ]  (uniform x).
// With this code convention each character picks up a factor (-1)^|S|
// relative to the raw transform; the scaling below accounts for it.
std::vector<double> fourier_coefficients(std::vector<double> table);

}  // namespace mcal
