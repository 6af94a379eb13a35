#pragma once
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mcal/dist.hpp"
#include "mcal/predict.hpp"

namespace mcal {

struct Interval {
  double lo = 0.0, hi = 1.0;
  bool lo_open = false, hi_open = false;
  bool contains(double v) const {
    if (lo_open ? !(v > lo) : !(v >= lo)) return false;
    if (hi_open ? !(v < hi) : !(v <= hi)) return false;
    return true;
  }
};

// A proper loss together with its dual-side description: predictions v are
// mirrored into dual values t = dual(v), losses become psi(t) - y t, and
// primal_of = grad_psi maps back. lambda bounds how fast grad_psi moves, t0
// is a universal starting prediction and B its worst-case regret:
//   dual_loss(y, t0) <= dual_loss(y, t) + B  for all t and both labels.
struct DualLossSpec {
  std::string name;
  Interval v_range;
  std::function<double(int, double)> loss;  // (y, v)
  std::function<double(double)> dual;       // v -> t
  std::function<double(double)> psi;        // convex potential
  std::function<double(double)> grad_psi;   // t -> v, valued in [0,1]
  double lambda = 1.0;
  double t0 = 0.0;
  double B = 0.0;
};

const DualLossSpec& squared_loss_spec();  // V = [0,1], lambda 1/2, B 1/4
const DualLossSpec& xent_loss_spec();     // V = (0,1), lambda 1/4, B ln 2

double dual_of(const DualLossSpec& spec, double v);  // rejects v outside V
double primal_of(const DualLossSpec& spec, double t);
double dual_loss(const DualLossSpec& spec, int y, double t);  // psi(t) - y t

// Prediction in dual space: an explicit t per support point.
class DualPredictor {
 public:
  DualPredictor(std::vector<std::vector<double>> xs, std::vector<double> ts);
  static DualPredictor constant(const FiniteDistribution& d, double t);

  double eval(std::span<const double> x) const;
  std::size_t size() const { return ts_.size(); }
  const std::vector<std::vector<double>>& xs() const { return xs_; }
  const std::vector<double>& ts() const { return ts_; }

 private:
  std::vector<std::vector<double>> xs_;
  std::vector<double> ts_;
  std::map<std::vector<double>, std::size_t> index_;
};

double mean_dual_loss(const DualLossSpec& spec, const FiniteDistribution& d,
                      const DualPredictor& g);

// One dual-space correction: beta measured against the primal prediction
// grad_psi(g), then g' = g + (beta/lambda) c. The loss drop is at least
// beta^2 / (2 lambda); falling short is a bug.
std::pair<DualPredictor, double> proper_update(const DualLossSpec& spec,
                                               const FiniteDistribution& d,
                                               const DualPredictor& g, const Auditor& c);

struct DualBoostStep {
  int auditor = 0;
  double beta = 0.0;
  double loss_before = 0.0;
  double loss_after = 0.0;
};

struct DualBoostTrace {
  std::vector<DualBoostStep> steps;
  DualPredictor final_predictor;
};

// Dual-space analogue of the squared-loss boosting loop. The drop per step
// is at least gamma^2/(2 lambda) and the total headroom is bounded by the
// anchor regret B, so the round count is capped in advance.
DualBoostTrace proper_boost(const DualLossSpec& spec, const FiniteDistribution& d,
                            const DualPredictor& g0, std::span<const Auditor> auditors,
                            double gamma);

struct SpecGridCheck {
  int v_points = 0, t_points = 0;
  double propriety_gap = 0.0;      // max of E_{y~v} l(y,v) - E_{y~v} l(y,v')
  double roundtrip_err = 0.0;      // max |grad_psi(dual(v)) - v|
  double relation_err = 0.0;       // max |loss(y,v) - dual_loss(y, dual(v))|
  double grad_range_excess = 0.0;  // grad_psi outside [0,1]
  double smoothness_excess = 0.0;  // |grad diff| beyond lambda |t diff|
  double convexity_violation = 0.0;  // decrease between consecutive secant slopes
  double anchor_excess = 0.0;      // dual_loss(y,t0) beyond dual_loss(y,t) + B
  bool ok(double tol = 1e-9) const;
};

// Exhaustive grid audit of every structural claim the spec makes about
// itself. v runs over V (shrunk inward at open ends), t over [t_lo, t_hi].
SpecGridCheck check_spec_on_grids(const DualLossSpec& spec, int v_points = 1001,
                                  int t_points = 1001, double t_lo = -20.0, double t_hi = 20.0);

}  // namespace mcal
