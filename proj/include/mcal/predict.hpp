#pragma once
#include <functional>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mcal/dist.hpp"
#include "mcal/limits.hpp"
#include "mcal/relu_dag.hpp"

namespace mcal {

inline double clip01(double z) { return z < 0.0 ? 0.0 : (z > 1.0 ? 1.0 : z); }
inline double clip_pm1(double z) { return z < -1.0 ? -1.0 : (z > 1.0 ? 1.0 : z); }

// Lookup predictor over an explicit point list; rows are kept sorted by x so
// serialization is stable. Values live in [0,1].
class TablePredictor {
 public:
  TablePredictor(std::vector<std::vector<double>> xs, std::vector<double> values);
  static TablePredictor on_support(const FiniteDistribution& d,
                                   const std::function<double(std::span<const double>)>& f);

  double eval(std::span<const double> x) const;
  std::size_t size() const { return values_.size(); }
  const std::vector<std::vector<double>>& xs() const { return xs_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<std::vector<double>> xs_;
  std::vector<double> values_;
  std::map<std::vector<double>, std::size_t> index_;
};

// Predictor reading only the listed coordinates (+/-1 valued, coords strictly
// increasing). table has 2^|coords| entries in [0,1]; entry index sets bit j
// when x[coords[j]] = +1. coords may be empty (a constant).
class JuntaPredictor {
 public:
  JuntaPredictor() : JuntaPredictor({}, {0.5}) {}  // the constant 1/2
  JuntaPredictor(std::vector<int> coords, std::vector<double> table);

  double eval(std::span<const double> x) const;
  const std::vector<int>& coords() const { return coords_; }
  const std::vector<double>& table() const { return table_; }
  std::size_t cell(std::span<const double> x) const;  // table index for x

 private:
  std::vector<int> coords_;
  std::vector<double> table_;
};

// Same shape as JuntaPredictor but valued in [-1,1]; ignores the prediction.
class JuntaAuditor {
 public:
  JuntaAuditor() : JuntaAuditor({}, {0.0}) {}  // the constant 0
  JuntaAuditor(std::vector<int> coords, std::vector<double> table);

  double eval(std::span<const double> x, double v) const;
  const std::vector<int>& coords() const { return coords_; }
  const std::vector<double>& table() const { return table_; }

 private:
  std::vector<int> coords_;
  std::vector<double> table_;
};

// Majority vote over the listed coordinates (odd count, strictly increasing).
class MajorityAuditor {
 public:
  explicit MajorityAuditor(std::vector<int> coords);

  double eval(std::span<const double> x, double v) const;
  const std::vector<int>& coords() const { return coords_; }

 private:
  std::vector<int> coords_;
};

// Per-row rule describing how a table auditor reacts to the prediction value.
struct VRule {
  enum class Form { constant, band, affine };
  Form form = Form::constant;
  double a = 0.0;             // constant / band output
  double lo = 0.0, hi = 1.0;  // band membership test on v
  double s = 0.0, t = 0.0;    // affine: clip to [-1,1] of s*v + t

  double eval(double v) const;
  void validate() const;
};

// Lookup auditor: each support point carries its own v-rule.
class TableAuditor {
 public:
  TableAuditor(std::vector<std::vector<double>> xs, std::vector<VRule> rules);

  double eval(std::span<const double> x, double v) const;
  std::size_t size() const { return rules_.size(); }
  const std::vector<std::vector<double>>& xs() const { return xs_; }
  const std::vector<VRule>& rules() const { return rules_; }

 private:
  std::vector<std::vector<double>> xs_;
  std::vector<VRule> rules_;
  std::map<std::vector<double>, std::size_t> index_;
};

using Predictor = std::variant<TablePredictor, JuntaPredictor, ReluDag>;
using Auditor = std::variant<TableAuditor, JuntaAuditor, MajorityAuditor, ReluDag>;

// Evaluation through the variants. Predictors must produce values in [0,1]
// and auditors in [-1,1]; a network that wanders outside breaks its contract.
double eval(const Predictor& f, std::span<const double> x);
double eval(const Auditor& c, std::span<const double> x, double v);

std::string describe(const Predictor& f);
std::string describe(const Auditor& c);

using PredictorFn = std::function<double(std::span<const double>)>;
using AuditorFn = std::function<double(std::span<const double>, double)>;

// Views over a variant; the referenced object must outlive the function.
PredictorFn as_fn(const Predictor& f);
AuditorFn as_fn(const Auditor& c);

double squared_loss(const FiniteDistribution& d, const Predictor& f);

// clip(f + beta * c) materialized as a junta over the union of the two
// coordinate sets.
JuntaPredictor compose_update_junta(const JuntaPredictor& f, const JuntaAuditor& c, double beta,
                                    const Limits& limits = {});

}  // namespace mcal
