#include "mcal/dist.hpp"

#include <cmath>
#include <utility>

#include "mcal/errors.hpp"
#include "mcal/majority.hpp"
#include "mcal/reduce.hpp"
#include "mcal/rng.hpp"

namespace mcal {

std::string to_string(FeatureKind k) { return k == FeatureKind::pm1 ? "pm1" : "real"; }

FiniteDistribution::FiniteDistribution(int dim, FeatureKind kind, std::vector<DistPoint> points)
    : dim_(dim), kind_(kind), pts_(std::move(points)) {
  finish_construction();
}

FiniteDistribution FiniteDistribution::with_exact(int dim, FeatureKind kind,
                                                  std::vector<std::vector<double>> xs,
                                                  std::vector<Rat> w, std::vector<Rat> eta) {
  if (xs.size() != w.size() || xs.size() != eta.size())
    throw invalid_argument_error("with_exact: mismatched array lengths");
  std::vector<DistPoint> pts(xs.size());
  Rat total = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (w[i] < 0) throw invalid_argument_error("with_exact: negative weight");
    if (eta[i] < 0 || eta[i] > 1)
      throw invalid_argument_error("with_exact: label probability outside [0,1]");
    total += w[i];
    pts[i] = DistPoint{std::move(xs[i]), to_double(w[i]), to_double(eta[i])};
  }
  if (total != 1) throw invalid_argument_error("with_exact: weights must sum to exactly 1");
  FiniteDistribution d(dim, kind, std::move(pts));
  d.exact_w_ = std::move(w);
  d.exact_eta_ = std::move(eta);
  return d;
}

void FiniteDistribution::finish_construction() {
  if (dim_ < 1) throw invalid_argument_error("distribution: dim must be >= 1");
  if (pts_.empty()) throw invalid_argument_error("distribution: empty support");
  if (kind_ == FeatureKind::pm1 && dim_ > 64)
    throw invalid_argument_error("distribution: pm1 kind supports dim <= 64");

  double total = 0.0;
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    const DistPoint& p = pts_[i];
    if (static_cast<int>(p.x.size()) != dim_)
      throw invalid_argument_error("distribution: point " + std::to_string(i) +
                                   " has wrong dimension");
    if (!std::isfinite(p.w) || p.w < 0.0)
      throw invalid_argument_error("distribution: weights must be finite and nonnegative");
    if (!(p.eta >= 0.0 && p.eta <= 1.0))
      throw invalid_argument_error("distribution: label probabilities must lie in [0,1]");
    for (double v : p.x) {
      if (!std::isfinite(v)) throw invalid_argument_error("distribution: non-finite feature");
      if (kind_ == FeatureKind::pm1 && v != 1.0 && v != -1.0)
        throw invalid_argument_error("distribution: pm1 features must be +1 or -1");
    }
    total += p.w;
    if (!index_.emplace(p.x, i).second)
      throw invalid_argument_error("distribution: duplicate support point");
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw invalid_argument_error("distribution: weights sum to " + std::to_string(total) +
                                 ", expected 1");

  if (kind_ == FeatureKind::pm1) {
    codes_.resize(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      std::uint64_t code = 0;
      for (int c = 0; c < dim_; ++c)
        if (pts_[i].x[static_cast<std::size_t>(c)] == 1.0) code |= std::uint64_t{1} << c;
      codes_[i] = code;
    }
  }
}

const Rat& FiniteDistribution::exact_w(std::size_t i) const {
  if (!has_exact()) throw invalid_argument_error("exact_w: distribution has no exact data");
  return exact_w_[i];
}

const Rat& FiniteDistribution::exact_eta(std::size_t i) const {
  if (!has_exact()) throw invalid_argument_error("exact_eta: distribution has no exact data");
  return exact_eta_[i];
}

std::uint64_t FiniteDistribution::cube_code(std::size_t i) const { return cube_codes()[i]; }

const std::vector<std::uint64_t>& FiniteDistribution::cube_codes() const {
  if (kind_ != FeatureKind::pm1)
    throw invalid_argument_error("cube_codes: only defined for pm1 features");
  return codes_;
}

std::optional<std::size_t> FiniteDistribution::find(std::span<const double> x) const {
  const auto it = index_.find(std::vector<double>(x.begin(), x.end()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double expectation(const FiniteDistribution& d,
                   const std::function<double(std::span<const double>, int)>& g) {
  const double r = blocked_sum(d.size(), [&](std::size_t i) {
    const DistPoint& p = d.point(i);
    return p.w * (p.eta * g(p.x, 1) + (1.0 - p.eta) * g(p.x, 0));
  });
  if (!std::isfinite(r)) throw contract_violation_error("expectation: non-finite result");
  return r;
}

Rat expectation_exact(const FiniteDistribution& d,
                      const std::function<Rat(std::size_t, int)>& g) {
  if (!d.has_exact())
    throw invalid_argument_error("expectation_exact: distribution has no exact data");
  Rat total = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Rat& eta = d.exact_eta(i);
    total += d.exact_w(i) * (eta * g(i, 1) + (1 - eta) * g(i, 0));
  }
  return total;
}

double squared_loss(const FiniteDistribution& d,
                    const std::function<double(std::span<const double>)>& f) {
  // E[(y - f)^2] = E[ eta (1-f)^2 + (1-eta) f^2 ]
  const double r = blocked_sum(d.size(), [&](std::size_t i) {
    const DistPoint& p = d.point(i);
    const double v = f(p.x);
    return p.w * (p.eta * (1.0 - v) * (1.0 - v) + (1.0 - p.eta) * v * v);
  });
  if (!std::isfinite(r)) throw contract_violation_error("squared_loss: non-finite result");
  return r;
}

FiniteDistribution make_majority_distribution(int m, const Limits& limits) {
  if (m < 1 || m % 2 == 0)
    throw invalid_argument_error("make_majority_distribution: m must be odd and positive");
  if (m > limits.max_cube_dim)
    throw resource_limit_error("make_majority_distribution: m = " + std::to_string(m) +
                               " exceeds max_cube_dim = " + std::to_string(limits.max_cube_dim));
  const std::size_t n = std::size_t{1} << m;
  const Rat wr = rat_pow2(-m);
  std::vector<std::vector<double>> xs(n, std::vector<double>(static_cast<std::size_t>(m)));
  std::vector<Rat> w(n, wr), eta(n);
  for (std::uint64_t code = 0; code < n; ++code) {
    for (int c = 0; c < m; ++c)
      xs[code][static_cast<std::size_t>(c)] = (code >> c) & 1 ? 1.0 : -1.0;
    eta[code] = maj_bits(code, m) > 0 ? 1 : 0;
  }
  return FiniteDistribution::with_exact(m, FeatureKind::pm1, std::move(xs), std::move(w),
                                        std::move(eta));
}

FiniteDistribution random_cube_distribution(int m, std::uint64_t seed, const Limits& limits) {
  if (m < 1) throw invalid_argument_error("random_cube_distribution: m must be >= 1");
  if (m > limits.max_cube_dim)
    throw resource_limit_error("random_cube_distribution: m = " + std::to_string(m) +
                               " exceeds max_cube_dim = " + std::to_string(limits.max_cube_dim));
  const std::size_t n = std::size_t{1} << m;
  const Rat wr = rat_pow2(-m);
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> xs(n, std::vector<double>(static_cast<std::size_t>(m)));
  std::vector<Rat> w(n, wr), eta(n);
  for (std::uint64_t code = 0; code < n; ++code) {
    for (int c = 0; c < m; ++c)
      xs[code][static_cast<std::size_t>(c)] = (code >> c) & 1 ? 1.0 : -1.0;
    eta[code] = Rat(rng.next_double());  // dyadic, hence exact
  }
  return FiniteDistribution::with_exact(m, FeatureKind::pm1, std::move(xs), std::move(w),
                                        std::move(eta));
}

}  // namespace mcal
