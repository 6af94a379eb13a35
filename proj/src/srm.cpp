#include "mcal/srm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcal/audit.hpp"
#include "mcal/errors.hpp"
#include "mcal/junta.hpp"

namespace mcal {

int srm_argmin(std::span<const double> opts, int k, double alpha) {
  if (opts.empty()) throw invalid_argument_error("srm_argmin: empty curve");
  if (k < 1) throw invalid_argument_error("srm_argmin: k must be >= 1");
  if (!(alpha > 0.0)) throw invalid_argument_error("srm_argmin: alpha must be positive");
  int best = 0;
  double best_obj = opts[0];
  for (std::size_t n = 1; n < opts.size(); ++n) {
    const double obj = opts[n] + alpha * static_cast<double>(n) / k;
    if (obj < best_obj) {
      best = static_cast<int>(n);
      best_obj = obj;
    }
  }
  return best;
}

SrmSelection srm_select(const FiniteDistribution& d, int k, double alpha, int n_max,
                        const Limits& limits) {
  if (k < 1) throw invalid_argument_error("srm_select: k must be >= 1");
  if (!(alpha > 0.0)) throw invalid_argument_error("srm_select: alpha must be positive");
  const int m = d.dim();
  const int n_hi = std::min(n_max, m);
  const int needed = std::min(static_cast<int>(std::ceil(k / alpha)), m);
  if (n_hi < needed)
    throw invalid_argument_error("srm_select: scan range " + std::to_string(n_hi) +
                                 " does not cover min(ceil(k/alpha), dim) = " +
                                 std::to_string(needed));

  SrmSelection sel;
  sel.k = k;
  sel.alpha = alpha;
  std::vector<JuntaPredictor> witnesses;
  for (int n = 0; n <= n_hi; ++n) {
    JuntaOpt o = junta_opt(d, n, limits);
    sel.opts.push_back(o.opt);
    witnesses.push_back(std::move(o.witness));
  }
  sel.n_star = srm_argmin(sel.opts, k, alpha);
  sel.f_star = witnesses[static_cast<std::size_t>(sel.n_star)];
  sel.objective = sel.opts[static_cast<std::size_t>(sel.n_star)] +
                  alpha * static_cast<double>(sel.n_star) / k;

  if (static_cast<double>(sel.n_star) > static_cast<double>(k) / alpha + 1e-9)
    throw check_failed_error("srm_select: selected size exceeded k/alpha");
  // auditors read at most k coordinates, but never more than exist
  sel.audit_value =
      max_ma_violation_juntas(
          d, [&](std::span<const double> x) { return sel.f_star.eval(x); }, std::min(k, m),
          limits)
          .value;
  if (!(sel.audit_value <= std::sqrt(alpha) + 1e-9))
    throw check_failed_error("srm_select: selection is not sqrt(alpha)-multiaccurate, got " +
                             std::to_string(sel.audit_value));
  return sel;
}

SrmReport srm_verify(const FiniteDistribution& d, const SrmSelection& sel, double epsilon,
                     const Limits& limits) {
  if (epsilon < 0.0) throw invalid_argument_error("srm_verify: epsilon must be >= 0");
  SrmReport rep;
  rep.violation =
      max_ma_violation_juntas(
          d, [&](std::span<const double> x) { return sel.f_star.eval(x); },
          std::min(sel.k, d.dim()), limits)
          .value;
  rep.bound = std::sqrt(sel.alpha + epsilon);
  rep.ma_ok = rep.violation <= rep.bound + 1e-9;
  rep.loss = squared_loss(d, Predictor{sel.f_star});
  const int probe = std::min(sel.n_star + sel.k, d.dim());
  rep.loss_bound = junta_opt(d, probe, limits).opt + sel.alpha + epsilon;
  rep.loss_ok = rep.loss <= rep.loss_bound + 1e-9;
  rep.all_ok = rep.ma_ok && rep.loss_ok;
  return rep;
}

}  // namespace mcal
