#pragma once
#include <span>
#include <string>
#include <vector>

#include "mcal/dist.hpp"
#include "mcal/limits.hpp"
#include "mcal/predict.hpp"

namespace mcal {

// Signed calibration violation E[ c(x, f(x)) * (y - f(x)) ]. The auditor sees
// the prediction, so a zero across a class of such auditors is the
// multicalibration guarantee; auditors ignoring v give multiaccuracy.
double mc_violation(const FiniteDistribution& d, const PredictorFn& f, const AuditorFn& c);
double mc_violation(const FiniteDistribution& d, const Predictor& f, const Auditor& c);

// E[ c(x) * (y - f(x)) ] for prediction-blind auditors.
double ma_violation(const FiniteDistribution& d, const PredictorFn& f,
                    const std::function<double(std::span<const double>)>& c);

struct MaWitness {
  double value = 0.0;       // max |E[c(x)(y - f(x))]| over all k-juntas into [-1,1]
  JuntaAuditor witness;     // a maximizer: sign of the conditional residual
};

// Exact maximum multiaccuracy violation over every junta auditor reading at
// most k coordinates. For a fixed coordinate set the optimum is the sign of
// the per-cell residual mass, so the scan is exact, not heuristic.
// Ties resolve to the lexicographically earliest coordinate set; residual
// exactly zero in a cell signs as +1.
MaWitness max_ma_violation_juntas(const FiniteDistribution& d, const PredictorFn& f, int k,
                                  const Limits& limits = {});

struct AuditResult {
  int auditor = 0;
  std::string description;
  double beta = 0.0;
  bool passed = false;
};

// Runs mc_violation against each auditor, flagging |beta| <= gamma.
std::vector<AuditResult> audit_class(const FiniteDistribution& d, const Predictor& f,
                                     std::span<const Auditor> auditors, double gamma);

}  // namespace mcal
