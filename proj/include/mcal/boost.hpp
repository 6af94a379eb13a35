#pragma once
#include <span>
#include <utility>
#include <vector>

#include "mcal/audit.hpp"
#include "mcal/dist.hpp"
#include "mcal/predict.hpp"

namespace mcal {

// One corrective step: h = clip(f + beta * c) with beta = E[c(x,f)(y-f)],
// materialized on the support. Asserts the guaranteed loss drop
//   L(h) <= L(f) - beta^2.
std::pair<TablePredictor, double> loss_reduction_update(const FiniteDistribution& d,
                                                        const PredictorFn& f, const AuditorFn& c);

struct BoostStep {
  int auditor = 0;
  double beta = 0.0;
  double loss_before = 0.0;
  double loss_after = 0.0;
};

struct BoostTrace {
  std::vector<BoostStep> steps;
  TablePredictor final_predictor;
};

// Repeatedly fires the auditor with the largest |violation| until every one
// is within gamma. Each step costs at least gamma^2 of squared loss, so the
// loop ends within ceil(1/gamma^2) steps; running past that cap is a bug.
BoostTrace boost_until_calibrated(const FiniteDistribution& d, const Predictor& f0,
                                  std::span<const Auditor> auditors, double gamma);

}  // namespace mcal
