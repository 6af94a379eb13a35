#pragma once
#include <stdexcept>

namespace mcal {

// Error taxonomy, mirrored by the CLI exit codes:
//   invalid_argument_error / domain_mismatch_error / contract_violation_error
//     -> unusable input (exit 2)
//   resource_limit_error -> enumeration budget exceeded (exit 3)
//   check_failed_error / internal_error -> a guarantee the library asserts at
//     runtime did not hold, i.e. a bug (exit 1)

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_argument_error : error { using error::error; };
struct domain_mismatch_error : error { using error::error; };
struct contract_violation_error : error { using error::error; };
struct resource_limit_error : error { using error::error; };
struct check_failed_error : error { using error::error; };
struct internal_error : error { using error::error; };

}  // namespace mcal
