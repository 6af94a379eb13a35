#include "mcal/boost.hpp"

#include <cmath>
#include <string>

#include "mcal/errors.hpp"
#include "mcal/reduce.hpp"

namespace mcal {

namespace {

double loss_of_values(const FiniteDistribution& d, const std::vector<double>& v) {
  return blocked_sum(d.size(), [&](std::size_t i) {
    const DistPoint& p = d.point(i);
    return p.w * (p.eta * (1.0 - v[i]) * (1.0 - v[i]) + (1.0 - p.eta) * v[i] * v[i]);
  });
}

double violation_of_values(const FiniteDistribution& d, const std::vector<double>& v,
                           const Auditor& c) {
  std::vector<double> cv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    cv[i] = eval(c, d.point(i).x, v[i]);
    if (!(cv[i] >= -1.0 && cv[i] <= 1.0))
      throw contract_violation_error("auditor value outside [-1,1]");
  }
  return blocked_sum(d.size(),
                     [&](std::size_t i) { return cv[i] * d.point(i).w * (d.point(i).eta - v[i]); });
}

TablePredictor table_of_values(const FiniteDistribution& d, const std::vector<double>& v) {
  std::vector<std::vector<double>> xs;
  xs.reserve(d.size());
  for (const DistPoint& p : d.points()) xs.push_back(p.x);
  return TablePredictor(std::move(xs), v);
}

}  // namespace

std::pair<TablePredictor, double> loss_reduction_update(const FiniteDistribution& d,
                                                        const PredictorFn& f, const AuditorFn& c) {
  std::vector<double> fv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    fv[i] = f(d.point(i).x);
    if (!(fv[i] >= 0.0 && fv[i] <= 1.0))
      throw contract_violation_error("predictor value outside [0,1]");
  }
  const double beta = mc_violation(d, f, c);
  std::vector<double> hv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    hv[i] = clip01(fv[i] + beta * c(d.point(i).x, fv[i]));
  const double before = loss_of_values(d, fv);
  const double after = loss_of_values(d, hv);
  if (!(after <= before - beta * beta + 1e-12))
    throw check_failed_error("loss_reduction_update: drop fell short of beta^2 (" +
                             std::to_string(before - after) + " vs " +
                             std::to_string(beta * beta) + ")");
  return {table_of_values(d, hv), beta};
}

BoostTrace boost_until_calibrated(const FiniteDistribution& d, const Predictor& f0,
                                  std::span<const Auditor> auditors, double gamma) {
  if (!(gamma > 0.0))
    throw invalid_argument_error("boost_until_calibrated: gamma must be positive");

  std::vector<double> v(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) v[i] = eval(f0, d.point(i).x);

  const std::size_t cap = static_cast<std::size_t>(std::ceil(1.0 / (gamma * gamma))) + 1;
  std::vector<BoostStep> steps;
  for (std::size_t round = 0;; ++round) {
    if (round > cap)
      throw internal_error("boost_until_calibrated: exceeded the 1/gamma^2 round cap");
    int best = -1;
    double best_beta = 0.0;
    for (std::size_t a = 0; a < auditors.size(); ++a) {
      const double beta = violation_of_values(d, v, auditors[a]);
      if (std::abs(beta) > std::abs(best_beta)) {
        best = static_cast<int>(a);
        best_beta = beta;
      }
    }
    if (best < 0 || std::abs(best_beta) <= gamma) break;

    const double before = loss_of_values(d, v);
    for (std::size_t i = 0; i < d.size(); ++i)
      v[i] = clip01(v[i] + best_beta * eval(auditors[static_cast<std::size_t>(best)],
                                            d.point(i).x, v[i]));
    const double after = loss_of_values(d, v);
    if (!(after <= before - best_beta * best_beta + 1e-12))
      throw check_failed_error("boost_until_calibrated: loss drop fell short of beta^2");
    steps.push_back(BoostStep{best, best_beta, before, after});
  }
  return BoostTrace{std::move(steps), table_of_values(d, v)};
}

}  // namespace mcal
