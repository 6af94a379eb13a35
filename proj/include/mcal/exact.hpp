#pragma once
#include <boost/multiprecision/cpp_int.hpp>

namespace mcal {

// Arbitrary-precision rationals back the optional exact arithmetic mode:
// weights and label probabilities can be carried as rationals alongside
// their double projections, and expectation-style sums can be reproduced
// with zero rounding error.
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_pow2(int e) {
  Rat r = 1;
  if (e >= 0)
    r = Rat(boost::multiprecision::cpp_int(1) << e);
  else
    r = Rat(1, boost::multiprecision::cpp_int(1) << (-e));
  return r;
}

}  // namespace mcal
