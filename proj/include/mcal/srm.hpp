#pragma once
#include <span>
#include <vector>

#include "mcal/dist.hpp"
#include "mcal/limits.hpp"
#include "mcal/predict.hpp"

namespace mcal {

// argmin_n of opts[n] + alpha * n / k, ties to the smallest n.
int srm_argmin(std::span<const double> opts, int k, double alpha);

struct SrmSelection {
  int k = 0;
  double alpha = 0.0;
  int n_star = 0;
  JuntaPredictor f_star;        // exact loss minimizer at size n_star
  double objective = 0.0;       // opts[n_star] + alpha * n_star / k
  double audit_value = 0.0;     // max multiaccuracy violation over k-juntas
  std::vector<double> opts;     // opts[n] for every scanned size
};

// Size-penalized selection over junta sizes 0..min(n_max, dim): minimizing
// OPT_n + alpha*n/k trades loss against the coordinates an auditor would
// need to expose a gap, so the winner is sqrt(alpha)-multiaccurate against
// k-junta auditors without ever running an auditing loop. Both facts are
// asserted here: n_star <= k/alpha, and the audit value is within
// sqrt(alpha). The scan range must cover min(ceil(k/alpha), dim).
SrmSelection srm_select(const FiniteDistribution& d, int k, double alpha, int n_max,
                        const Limits& limits = {});

struct SrmReport {
  double violation = 0.0;   // re-audited multiaccuracy violation of f_star
  double bound = 0.0;       // sqrt(alpha + epsilon)
  bool ma_ok = false;
  double loss = 0.0;            // squared loss of f_star
  double loss_bound = 0.0;      // OPT_{min(n*+k, dim)} + alpha + epsilon
  bool loss_ok = false;
  bool all_ok = false;
};

// Independent re-check of a selection against a distribution.
SrmReport srm_verify(const FiniteDistribution& d, const SrmSelection& sel, double epsilon,
                     const Limits& limits = {});

}  // namespace mcal
