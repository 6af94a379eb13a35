#pragma once

namespace mcal {

// Everything in this library is exact and exhaustive, so the only guard
// against runaway inputs is an explicit work budget checked up front.
struct Limits {
  // largest cube dimension for which 2^m support enumeration is allowed
  int max_cube_dim = 20;
  // cap on subset-scan work, roughly C(m,j) * (support_size + 2^j)
  double max_scan_work = 268435456.0;  // 2^28
};

}  // namespace mcal
