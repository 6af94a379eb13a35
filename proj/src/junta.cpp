#include "mcal/junta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mcal/audit.hpp"
#include "mcal/errors.hpp"
#include "mcal/majority.hpp"
#include "mcal/reduce.hpp"
#include "mcal/rng.hpp"
#include "mcal/subsets.hpp"

namespace mcal {

namespace {

void check_scan_budget(const FiniteDistribution& d, int n, const Limits& limits,
                       const char* what) {
  const double work = static_cast<double>(binomial(d.dim(), n)) *
                      (static_cast<double>(d.size()) + std::ldexp(1.0, n));
  if (work > limits.max_scan_work)
    throw resource_limit_error(std::string(what) + ": scan work " + std::to_string(work) +
                               " exceeds budget " + std::to_string(limits.max_scan_work));
}

// weight and label mass per cell of the coordinate set
void cell_masses(const FiniteDistribution& d, const std::vector<int>& coords,
                 std::vector<double>& W, std::vector<double>& M) {
  const std::vector<std::uint64_t>& codes = d.cube_codes();
  W.assign(std::size_t{1} << coords.size(), 0.0);
  M.assign(W.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const DistPoint& p = d.point(i);
    std::size_t z = 0;
    for (std::size_t j = 0; j < coords.size(); ++j)
      z |= ((codes[i] >> coords[j]) & 1) << j;
    W[z] += p.w;
    M[z] += p.w * p.eta;
  }
}

double cells_loss(const std::vector<double>& W, const std::vector<double>& M) {
  // best constant per cell is M/W, leaving M - M^2/W of loss
  double s = 0.0;
  for (std::size_t z = 0; z < W.size(); ++z)
    if (W[z] > 0.0) s += M[z] - M[z] * M[z] / W[z];
  return s;
}

}  // namespace

JuntaOpt junta_opt(const FiniteDistribution& d, int n, const Limits& limits) {
  if (d.kind() != FeatureKind::pm1)
    throw invalid_argument_error("junta_opt: needs pm1 features");
  if (n < 0 || n > d.dim())
    throw invalid_argument_error("junta_opt: n must lie in [0, dim]");
  check_scan_budget(d, n, limits, "junta_opt");

  const SubsetBest best =
      scan_subsets_best(d.dim(), n, /*minimize=*/true, [&](const std::vector<int>& coords) {
        std::vector<double> W, M;
        cell_masses(d, coords, W, M);
        return cells_loss(W, M);
      });

  std::vector<double> W, M;
  cell_masses(d, best.coords, W, M);
  std::vector<double> table(W.size());
  for (std::size_t z = 0; z < W.size(); ++z)
    table[z] = W[z] > 0.0 ? std::clamp(M[z] / W[z], 0.0, 1.0) : 0.5;
  return JuntaOpt{best.score, JuntaPredictor(best.coords, std::move(table))};
}

std::vector<int> unlucky_from_opts(std::span<const double> opts, int k, double alpha) {
  if (k < 1) throw invalid_argument_error("unlucky_from_opts: k must be >= 1");
  if (!(alpha > 0.0)) throw invalid_argument_error("unlucky_from_opts: alpha must be positive");
  std::vector<int> out;
  for (int n = 0; n + k < static_cast<int>(opts.size()); ++n)
    if (opts[static_cast<std::size_t>(n)] > opts[static_cast<std::size_t>(n + k)] + alpha)
      out.push_back(n);
  return out;
}

OptCurve opt_curve(const FiniteDistribution& d, int n_max, int k, double alpha,
                   const Limits& limits) {
  if (n_max < 0 || n_max > d.dim())
    throw invalid_argument_error("opt_curve: n_max must lie in [0, dim]");
  if (k < 1) throw invalid_argument_error("opt_curve: k must be >= 1");
  if (!(alpha > 0.0)) throw invalid_argument_error("opt_curve: alpha must be positive");

  OptCurve curve;
  curve.k = k;
  curve.alpha = alpha;
  for (int n = 0; n <= n_max; ++n) {
    JuntaOpt o = junta_opt(d, n, limits);
    if (!curve.opts.empty() && o.opt > curve.opts.back() + 1e-12)
      throw check_failed_error("opt_curve: OPT increased from size " + std::to_string(n - 1) +
                               " to " + std::to_string(n));
    curve.opts.push_back(o.opt);
    curve.witnesses.push_back(std::move(o.witness));
  }
  curve.unlucky = unlucky_from_opts(curve.opts, k, alpha);
  if (static_cast<double>(curve.unlucky.size()) > static_cast<double>(k) / alpha + 1e-9)
    throw check_failed_error("opt_curve: more than k/alpha unlucky sizes");
  return curve;
}

UpperBoundReport verify_upper_bound(const FiniteDistribution& d, int k, double alpha,
                                    double epsilon, int n_max, const Limits& limits) {
  if (epsilon < 0.0) throw invalid_argument_error("verify_upper_bound: epsilon must be >= 0");
  if (n_max < k) throw invalid_argument_error("verify_upper_bound: n_max must be >= k");
  UpperBoundReport rep;
  rep.curve = opt_curve(d, n_max, k, alpha, limits);
  rep.epsilon = epsilon;
  rep.all_pass = true;
  const double bound = std::sqrt(alpha + epsilon);
  for (int n = 0; n + k <= n_max; ++n) {
    UpperBoundRow row;
    row.n = n;
    row.opt_n = rep.curve.opts[static_cast<std::size_t>(n)];
    row.opt_nk = rep.curve.opts[static_cast<std::size_t>(n + k)];
    row.unlucky = std::find(rep.curve.unlucky.begin(), rep.curve.unlucky.end(), n) !=
                  rep.curve.unlucky.end();
    const JuntaPredictor& f = rep.curve.witnesses[static_cast<std::size_t>(n)];
    row.violation =
        max_ma_violation_juntas(d, [&](std::span<const double> x) { return f.eval(x); }, k,
                                limits)
            .value;
    row.bound = bound;
    row.pass = row.unlucky || row.violation <= bound + 1e-9;
    row.chain_ok = row.violation * row.violation <= row.opt_n - row.opt_nk + epsilon + 1e-9;
    rep.all_pass = rep.all_pass && row.pass && row.chain_ok;
    rep.rows.push_back(row);
  }
  return rep;
}

namespace {

bool is_majority_distribution(const FiniteDistribution& d) {
  if (d.kind() != FeatureKind::pm1) return false;
  const int m = d.dim();
  if (m % 2 == 0 || m > 62) return false;
  if (d.size() != std::size_t{1} << m) return false;
  const double w = std::ldexp(1.0, -m);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const DistPoint& p = d.point(i);
    if (p.w != w) return false;
    const double want = maj_bits(d.cube_code(i), m) > 0 ? 1.0 : 0.0;
    if (p.eta != want) return false;
  }
  return true;
}

}  // namespace

double lower_bound_witness(const FiniteDistribution& d, const JuntaPredictor& f, int k) {
  if (!is_majority_distribution(d))
    throw invalid_argument_error("lower_bound_witness: needs a majority distribution");
  const int m = d.dim();
  if (k < 1 || k % 2 == 0 || k > m)
    throw invalid_argument_error("lower_bound_witness: k must be odd, positive, <= dim");

  std::vector<int> free;
  for (int c = 0; c < m; ++c)
    if (!std::binary_search(f.coords().begin(), f.coords().end(), c)) free.push_back(c);
  if (static_cast<int>(free.size()) < k)
    throw invalid_argument_error("lower_bound_witness: junta leaves fewer than k coordinates");
  free.resize(static_cast<std::size_t>(k));

  std::vector<double> term(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const DistPoint& p = d.point(i);
    std::uint64_t sub = 0;
    const std::uint64_t code = d.cube_code(i);
    for (std::size_t j = 0; j < free.size(); ++j) sub |= ((code >> free[j]) & 1) << j;
    term[i] = p.w * (p.eta - f.eval(p.x)) * maj_bits(sub, k);
  }
  const double value = blocked_sum(d.size(), [&](std::size_t i) { return term[i]; });

  const double lower = std::sqrt(static_cast<double>(k) / m) / std::numbers::pi;
  if (!(value > lower))
    throw check_failed_error("lower_bound_witness: value " + std::to_string(value) +
                             " not above (1/pi)sqrt(k/m) = " + std::to_string(lower));
  return value;
}

LowerBoundReport lower_bound_experiment(int k, double alpha, std::optional<int> m_explicit,
                                        int n_samples, std::uint64_t seed,
                                        const Limits& limits) {
  if (k < 1) throw invalid_argument_error("lower_bound_experiment: k must be >= 1");
  if (!(alpha > 0.0))
    throw invalid_argument_error("lower_bound_experiment: alpha must be positive");
  if (n_samples < 1)
    throw invalid_argument_error("lower_bound_experiment: need at least one sample");

  const double pi2 = std::numbers::pi * std::numbers::pi;
  LowerBoundReport rep;
  rep.k = k;
  rep.k1 = k % 2 ? k : k - 1;
  rep.alpha = alpha;

  if (m_explicit) {
    rep.m = *m_explicit;
    rep.m_derived = false;
    if (rep.m < rep.k1 || rep.m % 2 == 0)
      throw invalid_argument_error("lower_bound_experiment: m must be odd and >= k");
    if (alpha > rep.k1 / (pi2 * rep.m) * (1.0 + 1e-12))
      throw invalid_argument_error(
          "lower_bound_experiment: alpha too large for this m, needs alpha <= k1/(pi^2 m)");
  } else {
    if (alpha > 1.0 / (4.0 * pi2) * (1.0 + 1e-12))
      throw invalid_argument_error(
          "lower_bound_experiment: deriving m needs alpha <= 1/(4 pi^2)");
    const double c = rep.k1 / (pi2 * alpha);
    long long top = static_cast<long long>(std::floor(c));
    if (static_cast<double>(top) == c) --top;  // strictly below c
    rep.m = static_cast<int>(top % 2 ? top : top - 1);
    rep.m_derived = true;
    if (rep.m < 3 * rep.k1 || rep.m < rep.k1 / (2.0 * pi2 * alpha))
      throw check_failed_error("lower_bound_experiment: derived m missed its guarantees");
  }
  if (rep.m > limits.max_cube_dim)
    throw resource_limit_error("lower_bound_experiment: m = " + std::to_string(rep.m) +
                               " exceeds max_cube_dim = " + std::to_string(limits.max_cube_dim));

  rep.count = rep.m - rep.k1 + 1;
  rep.count_threshold = k / (6.0 * pi2 * alpha);
  rep.count_ok = rep.count >= rep.count_threshold;
  // guaranteed whenever m is large enough on both axes
  if (rep.m >= 3 * rep.k1 && rep.m >= rep.k1 / (2.0 * pi2 * alpha) && !rep.count_ok)
    throw check_failed_error("lower_bound_experiment: size count fell below k/(6 pi^2 alpha)");

  const FiniteDistribution d = make_majority_distribution(rep.m, limits);
  const double threshold = std::sqrt(alpha);
  SplitMix64 rng(seed);
  rep.all_pass = true;
  for (int s = 0; s < n_samples; ++s) {
    const int n = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(rep.count)));
    // n distinct coordinates out of m
    std::vector<int> pool(static_cast<std::size_t>(rep.m));
    for (int c = 0; c < rep.m; ++c) pool[static_cast<std::size_t>(c)] = c;
    for (int j = 0; j < n; ++j) {
      const std::size_t pick =
          static_cast<std::size_t>(j) +
          static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(rep.m - j)));
      std::swap(pool[static_cast<std::size_t>(j)], pool[pick]);
    }
    std::vector<int> coords(pool.begin(), pool.begin() + n);
    std::sort(coords.begin(), coords.end());
    std::vector<double> table(std::size_t{1} << n);
    for (double& t : table) t = rng.next_double();
    const JuntaPredictor f(std::move(coords), std::move(table));

    LowerBoundSample sample;
    sample.n = n;
    sample.witness_value = lower_bound_witness(d, f, rep.k1);
    sample.pass = sample.witness_value > threshold;
    rep.all_pass = rep.all_pass && sample.pass;
    rep.samples.push_back(sample);
  }
  return rep;
}

}  // namespace mcal
