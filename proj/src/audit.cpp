#include "mcal/audit.hpp"

#include <cmath>
#include <string>

#include "mcal/errors.hpp"
#include "mcal/reduce.hpp"
#include "mcal/subsets.hpp"

namespace mcal {

namespace {

// w_i * (eta_i - f(x_i)) per support point, validating the predictor range
std::vector<double> residual_mass(const FiniteDistribution& d, const PredictorFn& f,
                                  std::vector<double>* fvals = nullptr) {
  std::vector<double> r(d.size());
  if (fvals) fvals->resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const DistPoint& p = d.point(i);
    const double v = f(p.x);
    if (!(v >= 0.0 && v <= 1.0))
      throw contract_violation_error("predictor value " + std::to_string(v) +
                                     " outside [0,1]");
    r[i] = p.w * (p.eta - v);
    if (fvals) (*fvals)[i] = v;
  }
  return r;
}

}  // namespace

double mc_violation(const FiniteDistribution& d, const PredictorFn& f, const AuditorFn& c) {
  std::vector<double> fvals;
  std::vector<double> rmass = residual_mass(d, f, &fvals);
  std::vector<double> cvals(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double cv = c(d.point(i).x, fvals[i]);
    if (!(cv >= -1.0 && cv <= 1.0))
      throw contract_violation_error("auditor value outside [-1,1]");
    cvals[i] = cv;
  }
  return blocked_sum(d.size(), [&](std::size_t i) { return cvals[i] * rmass[i]; });
}

double mc_violation(const FiniteDistribution& d, const Predictor& f, const Auditor& c) {
  return mc_violation(d, as_fn(f), as_fn(c));
}

double ma_violation(const FiniteDistribution& d, const PredictorFn& f,
                    const std::function<double(std::span<const double>)>& c) {
  return mc_violation(d, f, [&](std::span<const double> x, double) { return c(x); });
}

MaWitness max_ma_violation_juntas(const FiniteDistribution& d, const PredictorFn& f, int k,
                                  const Limits& limits) {
  if (d.kind() != FeatureKind::pm1)
    throw invalid_argument_error("max_ma_violation_juntas: needs pm1 features");
  const int m = d.dim();
  if (k < 0 || k > m)
    throw invalid_argument_error("max_ma_violation_juntas: k must lie in [0, dim]");
  const double work = static_cast<double>(binomial(m, k)) *
                      (static_cast<double>(d.size()) + std::ldexp(1.0, k));
  if (work > limits.max_scan_work)
    throw resource_limit_error("max_ma_violation_juntas: scan work " + std::to_string(work) +
                               " exceeds budget " + std::to_string(limits.max_scan_work));

  const std::vector<double> rmass = residual_mass(d, f);
  const std::vector<std::uint64_t>& codes = d.cube_codes();

  // For a fixed coordinate set S the best auditor is c(z) = sign(r_S(z)), so
  // the value is just sum_z |r_S(z)|.
  const auto cell_residuals = [&](const std::vector<int>& coords) {
    std::vector<double> cell(std::size_t{1} << coords.size(), 0.0);
    for (std::size_t i = 0; i < rmass.size(); ++i) {
      std::size_t z = 0;
      for (std::size_t j = 0; j < coords.size(); ++j)
        z |= ((codes[i] >> coords[j]) & 1) << j;
      cell[z] += rmass[i];
    }
    return cell;
  };

  const SubsetBest best = scan_subsets_best(m, k, /*minimize=*/false,
                                            [&](const std::vector<int>& coords) {
                                              double s = 0.0;
                                              for (double r : cell_residuals(coords))
                                                s += std::abs(r);
                                              return s;
                                            });

  std::vector<double> cell = cell_residuals(best.coords);
  std::vector<double> table(cell.size());
  for (std::size_t z = 0; z < cell.size(); ++z) table[z] = cell[z] >= 0.0 ? 1.0 : -1.0;
  return MaWitness{best.score, JuntaAuditor(best.coords, std::move(table))};
}

std::vector<AuditResult> audit_class(const FiniteDistribution& d, const Predictor& f,
                                     std::span<const Auditor> auditors, double gamma) {
  if (!(gamma > 0.0)) throw invalid_argument_error("audit_class: gamma must be positive");
  std::vector<AuditResult> out;
  out.reserve(auditors.size());
  for (std::size_t i = 0; i < auditors.size(); ++i) {
    const double beta = mc_violation(d, f, auditors[i]);
    out.push_back(AuditResult{static_cast<int>(i), describe(auditors[i]), beta,
                              std::abs(beta) <= gamma});
  }
  return out;
}

}  // namespace mcal
