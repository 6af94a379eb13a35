#include "mcal/predict.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "mcal/errors.hpp"

namespace mcal {

namespace {

void check_coords(const std::vector<int>& coords, const char* what) {
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] < 0 || coords[j] >= 64)
      throw invalid_argument_error(std::string(what) + ": coordinate out of range");
    if (j > 0 && coords[j] <= coords[j - 1])
      throw invalid_argument_error(std::string(what) + ": coords must be strictly increasing");
  }
}

std::size_t junta_cell(const std::vector<int>& coords, std::span<const double> x,
                       const char* what) {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    const std::size_t c = static_cast<std::size_t>(coords[j]);
    if (c >= x.size())
      throw domain_mismatch_error(std::string(what) + ": input lacks coordinate " +
                                  std::to_string(coords[j]));
    const double v = x[c];
    if (v == 1.0)
      idx |= std::size_t{1} << j;
    else if (v != -1.0)
      throw domain_mismatch_error(std::string(what) + ": coordinate is not +1/-1");
  }
  return idx;
}

struct SortedRows {
  std::vector<std::vector<double>> xs;
  std::vector<std::size_t> order;
};

// sort row keys lexicographically, rejecting duplicates
SortedRows sort_rows(std::vector<std::vector<double>> xs, const char* what) {
  for (const auto& x : xs)
    for (double v : x)
      if (!std::isfinite(v))
        throw invalid_argument_error(std::string(what) + ": non-finite point");
  SortedRows r;
  r.order.resize(xs.size());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::sort(r.order.begin(), r.order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  r.xs.reserve(xs.size());
  for (std::size_t i : r.order) r.xs.push_back(std::move(xs[i]));
  for (std::size_t i = 1; i < r.xs.size(); ++i)
    if (r.xs[i] == r.xs[i - 1])
      throw invalid_argument_error(std::string(what) + ": duplicate point");
  return r;
}

}  // namespace

TablePredictor::TablePredictor(std::vector<std::vector<double>> xs, std::vector<double> values) {
  if (xs.size() != values.size())
    throw invalid_argument_error("table predictor: mismatched lengths");
  if (xs.empty()) throw invalid_argument_error("table predictor: empty table");
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0))
      throw invalid_argument_error("table predictor: values must lie in [0,1]");
  SortedRows r = sort_rows(std::move(xs), "table predictor");
  xs_ = std::move(r.xs);
  values_.reserve(values.size());
  for (std::size_t i : r.order) values_.push_back(values[i]);
  for (std::size_t i = 0; i < xs_.size(); ++i) index_.emplace(xs_[i], i);
}

TablePredictor TablePredictor::on_support(
    const FiniteDistribution& d, const std::function<double(std::span<const double>)>& f) {
  std::vector<std::vector<double>> xs;
  std::vector<double> vals;
  xs.reserve(d.size());
  vals.reserve(d.size());
  for (const DistPoint& p : d.points()) {
    xs.push_back(p.x);
    vals.push_back(f(p.x));
  }
  return TablePredictor(std::move(xs), std::move(vals));
}

double TablePredictor::eval(std::span<const double> x) const {
  const auto it = index_.find(std::vector<double>(x.begin(), x.end()));
  if (it == index_.end())
    throw domain_mismatch_error("table predictor: point not in table");
  return values_[it->second];
}

JuntaPredictor::JuntaPredictor(std::vector<int> coords, std::vector<double> table)
    : coords_(std::move(coords)), table_(std::move(table)) {
  check_coords(coords_, "junta predictor");
  if (table_.size() != std::size_t{1} << coords_.size())
    throw invalid_argument_error("junta predictor: table must have 2^|coords| entries");
  for (double v : table_)
    if (!(v >= 0.0 && v <= 1.0))
      throw invalid_argument_error("junta predictor: values must lie in [0,1]");
}

std::size_t JuntaPredictor::cell(std::span<const double> x) const {
  return junta_cell(coords_, x, "junta predictor");
}

double JuntaPredictor::eval(std::span<const double> x) const { return table_[cell(x)]; }

JuntaAuditor::JuntaAuditor(std::vector<int> coords, std::vector<double> table)
    : coords_(std::move(coords)), table_(std::move(table)) {
  check_coords(coords_, "junta auditor");
  if (table_.size() != std::size_t{1} << coords_.size())
    throw invalid_argument_error("junta auditor: table must have 2^|coords| entries");
  for (double v : table_)
    if (!(v >= -1.0 && v <= 1.0))
      throw invalid_argument_error("junta auditor: values must lie in [-1,1]");
}

double JuntaAuditor::eval(std::span<const double> x, double) const {
  return table_[junta_cell(coords_, x, "junta auditor")];
}

MajorityAuditor::MajorityAuditor(std::vector<int> coords) : coords_(std::move(coords)) {
  check_coords(coords_, "majority auditor");
  if (coords_.empty() || coords_.size() % 2 == 0)
    throw invalid_argument_error("majority auditor: needs an odd number of coordinates");
}

double MajorityAuditor::eval(std::span<const double> x, double) const {
  double s = 0.0;
  for (int c : coords_) {
    if (static_cast<std::size_t>(c) >= x.size())
      throw domain_mismatch_error("majority auditor: input lacks coordinate " +
                                  std::to_string(c));
    const double v = x[static_cast<std::size_t>(c)];
    if (v != 1.0 && v != -1.0)
      throw domain_mismatch_error("majority auditor: coordinate is not +1/-1");
    s += v;
  }
  return s > 0.0 ? 1.0 : -1.0;
}

double VRule::eval(double v) const {
  switch (form) {
    case Form::constant:
      return a;
    case Form::band:
      return (v >= lo && v <= hi) ? a : 0.0;
    case Form::affine:
      return clip_pm1(s * v + t);
  }
  return 0.0;
}

void VRule::validate() const {
  switch (form) {
    case Form::constant:
    case Form::band:
      if (!(a >= -1.0 && a <= 1.0))
        throw invalid_argument_error("v-rule: output must lie in [-1,1]");
      if (form == Form::band && !(lo <= hi))
        throw invalid_argument_error("v-rule: band needs lo <= hi");
      break;
    case Form::affine:
      if (!std::isfinite(s) || !std::isfinite(t))
        throw invalid_argument_error("v-rule: non-finite affine parameters");
      break;
  }
}

TableAuditor::TableAuditor(std::vector<std::vector<double>> xs, std::vector<VRule> rules) {
  if (xs.size() != rules.size())
    throw invalid_argument_error("table auditor: mismatched lengths");
  if (xs.empty()) throw invalid_argument_error("table auditor: empty table");
  for (const VRule& r : rules) r.validate();
  SortedRows r = sort_rows(std::move(xs), "table auditor");
  xs_ = std::move(r.xs);
  rules_.reserve(rules.size());
  for (std::size_t i : r.order) rules_.push_back(rules[i]);
  for (std::size_t i = 0; i < xs_.size(); ++i) index_.emplace(xs_[i], i);
}

double TableAuditor::eval(std::span<const double> x, double v) const {
  const auto it = index_.find(std::vector<double>(x.begin(), x.end()));
  if (it == index_.end())
    throw domain_mismatch_error("table auditor: point not in table");
  return rules_[it->second].eval(v);
}

double eval(const Predictor& f, std::span<const double> x) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ReluDag>) {
          const double v = p.forward(x);
          if (!(v >= 0.0 && v <= 1.0))
            throw contract_violation_error("predictor network output " + std::to_string(v) +
                                           " outside [0,1]");
          return v;
        } else {
          return p.eval(x);
        }
      },
      f);
}

double eval(const Auditor& c, std::span<const double> x, double v) {
  return std::visit(
      [&](const auto& a) -> double {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ReluDag>) {
          const double r = a.has_v_input() ? a.forward(x, v) : a.forward(x);
          if (!(r >= -1.0 && r <= 1.0))
            throw contract_violation_error("auditor network output " + std::to_string(r) +
                                           " outside [-1,1]");
          return r;
        } else {
          return a.eval(x, v);
        }
      },
      c);
}

namespace {

std::string coord_list(const std::vector<int>& coords) {
  std::string s = "{";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords[i]);
  }
  return s + "}";
}

}  // namespace

std::string describe(const Predictor& f) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TablePredictor>)
          return "table[" + std::to_string(p.size()) + "]";
        else if constexpr (std::is_same_v<T, JuntaPredictor>)
          return "junta" + coord_list(p.coords());
        else
          return "relu_dag[" + std::to_string(p.node_count()) + "]";
      },
      f);
}

std::string describe(const Auditor& c) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, TableAuditor>)
          return "table[" + std::to_string(a.size()) + "]";
        else if constexpr (std::is_same_v<T, JuntaAuditor>)
          return "junta" + coord_list(a.coords());
        else if constexpr (std::is_same_v<T, MajorityAuditor>)
          return "majority" + coord_list(a.coords());
        else
          return "relu_dag[" + std::to_string(a.node_count()) + "]";
      },
      c);
}

PredictorFn as_fn(const Predictor& f) {
  return [&f](std::span<const double> x) { return eval(f, x); };
}

AuditorFn as_fn(const Auditor& c) {
  return [&c](std::span<const double> x, double v) { return eval(c, x, v); };
}

double squared_loss(const FiniteDistribution& d, const Predictor& f) {
  return squared_loss(d, as_fn(f));
}

JuntaPredictor compose_update_junta(const JuntaPredictor& f, const JuntaAuditor& c, double beta,
                                    const Limits& limits) {
  if (!(std::abs(beta) <= 1.0))
    throw invalid_argument_error("compose_update_junta: |beta| must be <= 1");
  std::vector<int> u;
  std::set_union(f.coords().begin(), f.coords().end(), c.coords().begin(), c.coords().end(),
                 std::back_inserter(u));
  if (static_cast<int>(u.size()) > limits.max_cube_dim)
    throw resource_limit_error("compose_update_junta: union of " + std::to_string(u.size()) +
                               " coordinates exceeds max_cube_dim");
  // positions of f's and c's coordinates inside the union
  std::vector<std::size_t> fpos(f.coords().size()), cpos(c.coords().size());
  for (std::size_t j = 0; j < f.coords().size(); ++j)
    fpos[j] = static_cast<std::size_t>(
        std::lower_bound(u.begin(), u.end(), f.coords()[j]) - u.begin());
  for (std::size_t j = 0; j < c.coords().size(); ++j)
    cpos[j] = static_cast<std::size_t>(
        std::lower_bound(u.begin(), u.end(), c.coords()[j]) - u.begin());
  std::vector<double> table(std::size_t{1} << u.size());
  for (std::size_t a = 0; a < table.size(); ++a) {
    std::size_t fi = 0, ci = 0;
    for (std::size_t j = 0; j < fpos.size(); ++j) fi |= ((a >> fpos[j]) & 1) << j;
    for (std::size_t j = 0; j < cpos.size(); ++j) ci |= ((a >> cpos[j]) & 1) << j;
    table[a] = clip01(f.table()[fi] + beta * c.table()[ci]);
  }
  return JuntaPredictor(std::move(u), std::move(table));
}

}  // namespace mcal
