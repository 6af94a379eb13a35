#include "mcal/proper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mcal/errors.hpp"
#include "mcal/reduce.hpp"

namespace mcal {

namespace {

double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

const DualLossSpec& squared_loss_spec() {
  static const DualLossSpec spec = [] {
    DualLossSpec s;
    s.name = "squared";
    s.v_range = Interval{0.0, 1.0, false, false};
    s.loss = [](int y, double v) { return (y - v) * (y - v); };
    s.dual = [](double v) { return 2.0 * v - 1.0; };
    s.psi = [](double t) {
      if (t < -1.0) return 0.0;
      if (t > 1.0) return t;
      return (t + 1.0) * (t + 1.0) / 4.0;
    };
    s.grad_psi = [](double t) {
      if (t < -1.0) return 0.0;
      if (t > 1.0) return 1.0;
      return (t + 1.0) / 2.0;
    };
    s.lambda = 0.5;
    s.t0 = 0.0;
    s.B = 0.25;
    return s;
  }();
  return spec;
}

const DualLossSpec& xent_loss_spec() {
  static const DualLossSpec spec = [] {
    DualLossSpec s;
    s.name = "xent";
    s.v_range = Interval{0.0, 1.0, true, true};
    s.loss = [](int y, double v) { return y ? -std::log(v) : -std::log1p(-v); };
    s.dual = [](double v) { return std::log(v) - std::log1p(-v); };
    s.psi = softplus;
    s.grad_psi = sigmoid;
    s.lambda = 0.25;
    s.t0 = 0.0;
    s.B = std::numbers::ln2;
    return s;
  }();
  return spec;
}

double dual_of(const DualLossSpec& spec, double v) {
  if (!std::isfinite(v) || !spec.v_range.contains(v))
    throw invalid_argument_error(spec.name + ": prediction " + std::to_string(v) +
                                 " outside the admissible range");
  return spec.dual(v);
}

double primal_of(const DualLossSpec& spec, double t) { return spec.grad_psi(t); }

double dual_loss(const DualLossSpec& spec, int y, double t) {
  if (y != 0 && y != 1) throw invalid_argument_error("dual_loss: label must be 0 or 1");
  return spec.psi(t) - y * t;
}

DualPredictor::DualPredictor(std::vector<std::vector<double>> xs, std::vector<double> ts) {
  if (xs.size() != ts.size()) throw invalid_argument_error("dual predictor: mismatched lengths");
  if (xs.empty()) throw invalid_argument_error("dual predictor: empty table");
  for (double t : ts)
    if (!std::isfinite(t)) throw invalid_argument_error("dual predictor: non-finite value");
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  xs_.reserve(xs.size());
  ts_.reserve(ts.size());
  for (std::size_t i : order) {
    xs_.push_back(std::move(xs[i]));
    ts_.push_back(ts[i]);
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (i > 0 && xs_[i] == xs_[i - 1])
      throw invalid_argument_error("dual predictor: duplicate point");
    index_.emplace(xs_[i], i);
  }
}

DualPredictor DualPredictor::constant(const FiniteDistribution& d, double t) {
  std::vector<std::vector<double>> xs;
  xs.reserve(d.size());
  for (const DistPoint& p : d.points()) xs.push_back(p.x);
  return DualPredictor(std::move(xs), std::vector<double>(d.size(), t));
}

double DualPredictor::eval(std::span<const double> x) const {
  const auto it = index_.find(std::vector<double>(x.begin(), x.end()));
  if (it == index_.end()) throw domain_mismatch_error("dual predictor: point not in table");
  return ts_[it->second];
}

namespace {

double mean_dual_loss_values(const DualLossSpec& spec, const FiniteDistribution& d,
                             const std::vector<double>& ts) {
  std::vector<double> lv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) lv[i] = spec.psi(ts[i]);
  return blocked_sum(d.size(), [&](std::size_t i) {
    const DistPoint& p = d.point(i);
    return p.w * (lv[i] - p.eta * ts[i]);
  });
}

std::vector<double> ts_on_support(const FiniteDistribution& d, const DualPredictor& g) {
  std::vector<double> ts(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) ts[i] = g.eval(d.point(i).x);
  return ts;
}

struct DualStepEval {
  double beta = 0.0;
  std::vector<double> cvals;
};

DualStepEval dual_violation(const DualLossSpec& spec, const FiniteDistribution& d,
                            const std::vector<double>& ts, const Auditor& c) {
  DualStepEval ev;
  ev.cvals.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double v = spec.grad_psi(ts[i]);
    if (!(v >= 0.0 && v <= 1.0))
      throw contract_violation_error(spec.name + ": grad_psi left [0,1]");
    ev.cvals[i] = eval(c, d.point(i).x, v);
  }
  ev.beta = blocked_sum(d.size(), [&](std::size_t i) {
    const DistPoint& p = d.point(i);
    return ev.cvals[i] * p.w * (p.eta - spec.grad_psi(ts[i]));
  });
  return ev;
}

DualPredictor predictor_from(const FiniteDistribution& d, const std::vector<double>& ts) {
  std::vector<std::vector<double>> xs;
  xs.reserve(d.size());
  for (const DistPoint& p : d.points()) xs.push_back(p.x);
  return DualPredictor(std::move(xs), ts);
}

}  // namespace

double mean_dual_loss(const DualLossSpec& spec, const FiniteDistribution& d,
                      const DualPredictor& g) {
  return mean_dual_loss_values(spec, d, ts_on_support(d, g));
}

std::pair<DualPredictor, double> proper_update(const DualLossSpec& spec,
                                               const FiniteDistribution& d,
                                               const DualPredictor& g, const Auditor& c) {
  if (!(spec.lambda > 0.0)) throw invalid_argument_error("proper_update: lambda must be positive");
  std::vector<double> ts = ts_on_support(d, g);
  const DualStepEval ev = dual_violation(spec, d, ts, c);
  const double before = mean_dual_loss_values(spec, d, ts);
  for (std::size_t i = 0; i < d.size(); ++i) ts[i] += ev.beta / spec.lambda * ev.cvals[i];
  const double after = mean_dual_loss_values(spec, d, ts);
  const double need = ev.beta * ev.beta / (2.0 * spec.lambda);
  if (!(after <= before - need + 1e-12))
    throw check_failed_error("proper_update: loss drop " + std::to_string(before - after) +
                             " fell short of beta^2/(2 lambda) = " + std::to_string(need));
  return {predictor_from(d, ts), ev.beta};
}

DualBoostTrace proper_boost(const DualLossSpec& spec, const FiniteDistribution& d,
                            const DualPredictor& g0, std::span<const Auditor> auditors,
                            double gamma) {
  if (!(gamma > 0.0)) throw invalid_argument_error("proper_boost: gamma must be positive");
  if (!(spec.lambda > 0.0)) throw invalid_argument_error("proper_boost: lambda must be positive");

  std::vector<double> ts = ts_on_support(d, g0);
  double loss = mean_dual_loss_values(spec, d, ts);

  // Starting from t0 costs at most B over the best possible dual loss, so
  // the mean loss can never sink below the t0 loss minus B; each round eats
  // at least gamma^2/(2 lambda) of that headroom.
  const double floor_loss = blocked_sum(d.size(), [&](std::size_t i) {
    const DistPoint& p = d.point(i);
    return p.w * (spec.psi(spec.t0) - p.eta * spec.t0);
  }) - spec.B;
  const double headroom = std::max(0.0, loss - floor_loss);
  const std::size_t cap =
      static_cast<std::size_t>(std::ceil(2.0 * spec.lambda * headroom / (gamma * gamma))) + 1;

  std::vector<DualBoostStep> steps;
  for (std::size_t round = 0;; ++round) {
    if (round > cap) throw internal_error("proper_boost: exceeded the headroom round cap");
    int best = -1;
    DualStepEval best_ev;
    for (std::size_t a = 0; a < auditors.size(); ++a) {
      DualStepEval ev = dual_violation(spec, d, ts, auditors[a]);
      if (best < 0 || std::abs(ev.beta) > std::abs(best_ev.beta)) {
        best = static_cast<int>(a);
        best_ev = std::move(ev);
      }
    }
    if (best < 0 || std::abs(best_ev.beta) <= gamma) break;

    for (std::size_t i = 0; i < d.size(); ++i)
      ts[i] += best_ev.beta / spec.lambda * best_ev.cvals[i];
    const double after = mean_dual_loss_values(spec, d, ts);
    const double need = best_ev.beta * best_ev.beta / (2.0 * spec.lambda);
    if (!(after <= loss - need + 1e-12))
      throw check_failed_error("proper_boost: loss drop fell short of beta^2/(2 lambda)");
    steps.push_back(DualBoostStep{best, best_ev.beta, loss, after});
    loss = after;
  }
  return DualBoostTrace{std::move(steps), predictor_from(d, ts)};
}

bool SpecGridCheck::ok(double tol) const {
  return propriety_gap <= tol && roundtrip_err <= tol && relation_err <= tol &&
         grad_range_excess <= tol && smoothness_excess <= tol && convexity_violation <= tol &&
         anchor_excess <= tol;
}

SpecGridCheck check_spec_on_grids(const DualLossSpec& spec, int v_points, int t_points,
                                  double t_lo, double t_hi) {
  if (v_points < 2 || t_points < 2)
    throw invalid_argument_error("check_spec_on_grids: need at least two grid points");
  SpecGridCheck out;
  out.v_points = v_points;
  out.t_points = t_points;

  // v grid over the admissible range, stepping inside open endpoints
  std::vector<double> vg(static_cast<std::size_t>(v_points));
  {
    const Interval& r = spec.v_range;
    const bool open = r.lo_open || r.hi_open;
    for (int i = 0; i < v_points; ++i) {
      const double f =
          open ? (i + 1.0) / (v_points + 1.0) : static_cast<double>(i) / (v_points - 1);
      vg[static_cast<std::size_t>(i)] = r.lo + f * (r.hi - r.lo);
    }
  }

  for (double v : vg) {
    const double t = dual_of(spec, v);
    out.roundtrip_err = std::max(out.roundtrip_err, std::abs(spec.grad_psi(t) - v));
    for (int y = 0; y <= 1; ++y)
      out.relation_err =
          std::max(out.relation_err, std::abs(spec.loss(y, v) - dual_loss(spec, y, t)));
  }

  // propriety: predicting the true v must beat every other grid prediction
  std::vector<double> l0(vg.size()), l1(vg.size());
  for (std::size_t i = 0; i < vg.size(); ++i) {
    l0[i] = spec.loss(0, vg[i]);
    l1[i] = spec.loss(1, vg[i]);
  }
  for (std::size_t i = 0; i < vg.size(); ++i) {
    const double own = vg[i] * l1[i] + (1.0 - vg[i]) * l0[i];
    for (std::size_t j = 0; j < vg.size(); ++j) {
      const double other = vg[i] * l1[j] + (1.0 - vg[i]) * l0[j];
      out.propriety_gap = std::max(out.propriety_gap, own - other);
    }
  }

  std::vector<double> tg(static_cast<std::size_t>(t_points));
  for (int i = 0; i < t_points; ++i)
    tg[static_cast<std::size_t>(i)] = t_lo + (t_hi - t_lo) * i / (t_points - 1);

  std::vector<double> grads(tg.size()), psis(tg.size());
  for (std::size_t i = 0; i < tg.size(); ++i) {
    grads[i] = spec.grad_psi(tg[i]);
    psis[i] = spec.psi(tg[i]);
    out.grad_range_excess =
        std::max({out.grad_range_excess, -grads[i], grads[i] - 1.0});
    for (int y = 0; y <= 1; ++y)
      out.anchor_excess = std::max(
          out.anchor_excess, dual_loss(spec, y, spec.t0) - dual_loss(spec, y, tg[i]) - spec.B);
  }
  for (std::size_t i = 0; i < tg.size(); ++i)
    for (std::size_t j = i + 1; j < tg.size(); ++j)
      out.smoothness_excess = std::max(
          out.smoothness_excess, std::abs(grads[i] - grads[j]) - spec.lambda * (tg[j] - tg[i]));
  double prev_slope = 0.0;
  for (std::size_t i = 0; i + 1 < tg.size(); ++i) {
    const double slope = (psis[i + 1] - psis[i]) / (tg[i + 1] - tg[i]);
    out.grad_range_excess = std::max({out.grad_range_excess, -slope, slope - 1.0});
    if (i > 0) out.convexity_violation = std::max(out.convexity_violation, prev_slope - slope);
    prev_slope = slope;
  }
  return out;
}

}  // namespace mcal
