#pragma once
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcal/dist.hpp"
#include "mcal/limits.hpp"
#include "mcal/predict.hpp"

namespace mcal {

struct JuntaOpt {
  double opt = 0.0;         // min_{f an n-junta} E[(y - f)^2]
  JuntaPredictor witness;   // a minimizer: conditional mean per cell
};

// Exact minimum squared loss over predictors reading at most n coordinates.
// Every size-n coordinate set is scanned; within a set the optimum is the
// conditional label mean per cell (1/2 on cells with no mass). Ties resolve
// to the lexicographically earliest coordinate set.
JuntaOpt junta_opt(const FiniteDistribution& d, int n, const Limits& limits = {});

// Indices n with opts[n] > opts[n+k] + alpha: sizes where peeking k more
// coordinates still buys more than alpha of loss.
std::vector<int> unlucky_from_opts(std::span<const double> opts, int k, double alpha);

struct OptCurve {
  int k = 0;
  double alpha = 0.0;
  std::vector<double> opts;              // opts[n] for n = 0..n_max
  std::vector<JuntaPredictor> witnesses;
  std::vector<int> unlucky;
};

// OPT_n for n = 0..n_max. Asserts the curve is nonincreasing and that at
// most k/alpha sizes are unlucky (the curve decreases by at most OPT_0 - 0
// in total, so large gaps cannot repeat).
OptCurve opt_curve(const FiniteDistribution& d, int n_max, int k, double alpha,
                   const Limits& limits = {});

struct UpperBoundRow {
  int n = 0;
  double opt_n = 0.0, opt_nk = 0.0;  // OPT_n and OPT_{n+k}
  bool unlucky = false;
  double violation = 0.0;  // max multiaccuracy violation of the OPT_n witness
  double bound = 0.0;      // sqrt(alpha + epsilon)
  bool pass = false;       // violation within bound, or size exempt as unlucky
  bool chain_ok = false;   // violation^2 <= gap + epsilon, which holds for every n
};

struct UpperBoundReport {
  OptCurve curve;
  double epsilon = 0.0;
  std::vector<UpperBoundRow> rows;
  bool all_pass = false;
};

// For each n not unlucky, the exact loss minimizer over n-juntas must already
// be sqrt(alpha+epsilon)-multiaccurate against k-junta auditors; a failure
// here is a bug, not data.
UpperBoundReport verify_upper_bound(const FiniteDistribution& d, int k, double alpha,
                                    double epsilon, int n_max, const Limits& limits = {});

// For the majority distribution on m bits and a junta f leaving at least k
// coordinates unread, the majority of k fresh coordinates witnesses a
// multiaccuracy violation; asserts it exceeds (1/pi) sqrt(k/m) strictly.
double lower_bound_witness(const FiniteDistribution& d, const JuntaPredictor& f, int k);

struct LowerBoundSample {
  int n = 0;               // junta size drawn
  double witness_value = 0.0;
  bool pass = false;       // witness_value > sqrt(alpha), strictly
};

struct LowerBoundReport {
  int k = 0;               // auditor budget requested
  int k1 = 0;              // largest odd <= k, the majority size used
  int m = 0;               // ambient dimension
  bool m_derived = false;  // m computed from alpha rather than supplied
  double alpha = 0.0;
  int count = 0;                  // junta sizes 0..m-k1, all forced above sqrt(alpha)
  double count_threshold = 0.0;   // k / (6 pi^2 alpha)
  bool count_ok = false;
  std::vector<LowerBoundSample> samples;
  bool all_pass = false;
};

// Hardness sweep: random juntas of every admissible size over the majority
// distribution, each failing sqrt(alpha)-multiaccuracy. When m is omitted it
// is derived as the largest odd integer below k1/(pi^2 alpha), which needs
// alpha <= 1/(4 pi^2); a supplied m must be odd with alpha <= k1/(pi^2 m).
LowerBoundReport lower_bound_experiment(int k, double alpha, std::optional<int> m_explicit,
                                        int n_samples, std::uint64_t seed,
                                        const Limits& limits = {});

}  // namespace mcal
