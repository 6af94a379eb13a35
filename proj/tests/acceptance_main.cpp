// End-to-end acceptance gate. Each criterion prints one line; the binary
// exits nonzero if any fails or overruns its time budget. Criteria restate
// the library's guarantees at desk scale with fresh randomness and
// independent tolerances; nothing here trusts the internal asserts alone.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "mcal/audit.hpp"
#include "mcal/boost.hpp"
#include "mcal/dist.hpp"
#include "mcal/io.hpp"
#include "mcal/junta.hpp"
#include "mcal/majority.hpp"
#include "mcal/nncompose.hpp"
#include "mcal/predict.hpp"
#include "mcal/proper.hpp"
#include "mcal/rng.hpp"
#include "mcal/srm.hpp"
#include "test_util.hpp"

namespace {

using mcal::FiniteDistribution;

bool g_all_ok = true;

void run_criterion(const char* name, double budget_s,
                   const std::function<bool(std::string&)>& fn) {
  std::string detail;
  bool ok = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::printf("[%s] %-34s (%.2fs of %.0fs)%s%s\n", ok ? "PASS" : "FAIL", name, secs, budget_s,
              detail.empty() ? "" : " -- ", detail.c_str());
  g_all_ok = g_all_ok && ok;
}

mcal::Auditor mixed_auditor(const FiniteDistribution& d, int m, std::uint64_t seed) {
  switch (seed % 4) {
    case 0:
      return mcal::Auditor{testutil::random_junta_auditor(m, std::min(m, 3), seed)};
    case 1:
      return mcal::Auditor{testutil::random_table_auditor(d, seed)};
    case 2:
      return mcal::Auditor{testutil::random_sign_auditor(m, std::min(m, 2), seed)};
    default:
      return mcal::Auditor{mcal::MajorityAuditor({0})};
  }
}

// 1. One corrective step drops the squared loss by at least beta^2; without
//    the clip the drop is exactly beta^2 for sign-valued auditors.
bool crit_loss_drop(std::string& detail) {
  int checked_identity = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const int m = 1 + static_cast<int>(i % 6);
    const FiniteDistribution d = mcal::random_cube_distribution(m, 10000 + i);
    const mcal::TablePredictor f = testutil::random_table_predictor(d, 20000 + i);
    const mcal::PredictorFn fn = [&f](std::span<const double> x) { return f.eval(x); };
    const mcal::Auditor c = mixed_auditor(d, m, 30000 + i);
    const mcal::AuditorFn cn = mcal::as_fn(c);

    const double before = mcal::squared_loss(d, mcal::Predictor{f});
    const auto [h, beta] = mcal::loss_reduction_update(d, fn, cn);
    const double after = mcal::squared_loss(d, mcal::Predictor{h});
    if (!(after <= before - beta * beta + 1e-12)) {
      detail = "clipped drop fell short on instance " + std::to_string(i);
      return false;
    }

    const bool pm1 = (30000 + i) % 4 == 2 || (30000 + i) % 4 == 3;
    if (pm1) {  // sign-valued auditor: exact pre-clip identity
      const double ec2 = mcal::expectation(d, [&](std::span<const double> x, int) {
        const double cv = cn(x, fn(x));
        return cv * cv;
      });
      const double lg = mcal::expectation(d, [&](std::span<const double> x, int y) {
        const double g = fn(x) + beta * cn(x, fn(x));
        return (y - g) * (y - g);
      });
      const double want_general = before - 2 * beta * beta + beta * beta * ec2;
      const double want_pm1 = before - beta * beta;
      if (std::abs(lg - want_general) > 1e-12 || std::abs(lg - want_pm1) > 1e-12) {
        detail = "pre-clip identity missed on instance " + std::to_string(i);
        return false;
      }
      ++checked_identity;
    }
  }
  detail = "200 instances, " + std::to_string(checked_identity) + " sign-auditor identities";
  return true;
}

// 2. Boosting stops within ceil(1/gamma^2) rounds, calibrated to gamma.
bool crit_boost(std::string& detail) {
  for (const double gamma : {0.05, 0.1, 0.3}) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      const int m = 1 + static_cast<int>(i % 5);
      const FiniteDistribution d = mcal::random_cube_distribution(m, 40000 + i);
      const mcal::Predictor f0{testutil::random_table_predictor(d, 41000 + i)};
      std::vector<mcal::Auditor> cs;
      for (std::uint64_t a = 0; a < 3; ++a) cs.push_back(mixed_auditor(d, m, 42000 + 3 * i + a));
      const mcal::BoostTrace tr = mcal::boost_until_calibrated(d, f0, cs, gamma);
      if (tr.steps.size() > static_cast<std::size_t>(std::ceil(1.0 / (gamma * gamma)))) {
        detail = "too many rounds at gamma " + std::to_string(gamma);
        return false;
      }
      for (const mcal::Auditor& c : cs) {
        if (std::abs(mcal::mc_violation(d, mcal::Predictor{tr.final_predictor}, c)) > gamma) {
          detail = "not calibrated at gamma " + std::to_string(gamma);
          return false;
        }
      }
    }
  }
  detail = "150 runs across three tolerances";
  return true;
}

// 3. Loss curves over junta sizes never increase, and the number of sizes
//    with an alpha-gap k ahead stays within k/alpha.
bool crit_unlucky_count(std::string& detail) {
  int curves = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int m = 1 + static_cast<int>(i % 8);
    const FiniteDistribution d = mcal::random_cube_distribution(m, 50000 + i);
    std::vector<double> opts;
    for (int n = 0; n <= m; ++n) opts.push_back(mcal::junta_opt(d, n).opt);
    for (std::size_t n = 0; n + 1 < opts.size(); ++n)
      if (opts[n + 1] > opts[n] + 1e-12) {
        detail = "curve increased on instance " + std::to_string(i);
        return false;
      }
    for (const int k : {1, 2}) {
      for (const double alpha : {0.05, 0.1, 0.3}) {
        const std::vector<int> unlucky = mcal::unlucky_from_opts(opts, k, alpha);
        if (static_cast<double>(unlucky.size()) > k / alpha + 1e-9) {
          detail = "too many exempt sizes on instance " + std::to_string(i);
          return false;
        }
        ++curves;
      }
    }
  }
  detail = std::to_string(curves) + " curves counted";
  return true;
}

// 4. On majority cubes, every loss-optimal junta of a non-exempt size is
//    already sqrt(alpha)-multiaccurate against k-junta auditors.
bool crit_upper_bound(std::string& detail) {
  int rows = 0;
  for (const int m : {3, 5, 7, 9}) {
    const FiniteDistribution d = mcal::make_majority_distribution(m);
    for (const int k : {1, 3}) {
      for (const double alpha : {0.1, 0.2}) {
        const mcal::UpperBoundReport rep = mcal::verify_upper_bound(d, k, alpha, 0.0, m);
        for (const mcal::UpperBoundRow& row : rep.rows) {
          ++rows;
          if (row.unlucky) continue;
          if (!(row.violation <= std::sqrt(alpha) + 1e-9)) {
            detail = "violation above bound at m=" + std::to_string(m) +
                     " n=" + std::to_string(row.n);
            return false;
          }
        }
        if (!rep.all_pass) {
          detail = "report flagged failure at m=" + std::to_string(m);
          return false;
        }
      }
    }
  }
  detail = std::to_string(rows) + " size rows checked";
  return true;
}

// 5. Majority-vs-majority correlation clears its lower bound; both
//    computation paths agree.
bool crit_maj_correlation(std::string& detail) {
  for (int m = 1; m <= 15; m += 2) {
    for (int k = 1; k <= m; k += 2) {
      const double brute = mcal::maj_correlation(k, m, mcal::CorrelationMethod::brute);
      const double fourier = mcal::maj_correlation(k, m, mcal::CorrelationMethod::fourier);
      if (std::abs(brute - fourier) > 1e-12) {
        detail = "methods disagree at (" + std::to_string(k) + "," + std::to_string(m) + ")";
        return false;
      }
      if (!(brute > (2.0 / std::numbers::pi) * std::sqrt(double(k) / m))) {
        detail = "bound missed at (" + std::to_string(k) + "," + std::to_string(m) + ")";
        return false;
      }
    }
  }
  if (mcal::maj_correlation(1, 3, mcal::CorrelationMethod::brute) != 0.5) {
    detail = "(1,3) is not exactly 1/2";
    return false;
  }
  detail = "all odd pairs up to dimension 15";
  return true;
}

// 6. The closed-form level-1 coefficient of majority matches brute force and
//    exceeds sqrt(2/(pi k)).
bool crit_level1(std::string& detail) {
  for (int k = 1; k <= 15; k += 2) {
    const double closed = mcal::maj_fourier_level1(k);
    double brute = 0.0;
    for (std::uint64_t code = 0; code < (std::uint64_t(1) << k); ++code)
      brute += mcal::maj_bits(code, k) * ((code & 1) ? 1.0 : -1.0);
    brute /= static_cast<double>(std::uint64_t(1) << k);
    if (std::abs(closed - brute) > 1e-12) {
      detail = "closed form disagrees at k=" + std::to_string(k);
      return false;
    }
    if (!(closed > std::sqrt(2.0 / (std::numbers::pi * k)))) {
      detail = "bound missed at k=" + std::to_string(k);
      return false;
    }
  }
  detail = "odd sizes 1..15";
  return true;
}

// 7. On the 9-bit majority cube every random 6-junta is caught by a fresh
//    3-coordinate majority witness above sqrt(alpha); the guaranteed number
//    of forced sizes meets its floor.
bool crit_hardness(std::string& detail) {
  const double alpha = 3.0 / (9.0 * std::numbers::pi * std::numbers::pi);
  const mcal::LowerBoundReport rep = mcal::lower_bound_experiment(3, alpha, 9, 100, 777);
  if (rep.samples.size() != 100) {
    detail = "sample count off";
    return false;
  }
  for (const mcal::LowerBoundSample& s : rep.samples) {
    if (!(s.witness_value > std::sqrt(alpha))) {
      detail = "witness at or below sqrt(alpha) for size " + std::to_string(s.n);
      return false;
    }
    if (s.n > 6) {
      detail = "sampled junta reads more than 6 coordinates";
      return false;
    }
  }
  if (rep.count != 7 || !(rep.count >= rep.count_threshold) || !rep.count_ok) {
    detail = "forced-size count check failed";
    return false;
  }
  detail = "100 witnesses, count 7 >= " + std::to_string(rep.count_threshold);
  return true;
}

// 8. The composed clip network has exactly n+k+2 nodes and matches the
//    reference on random inputs; inlining linear nodes changes nothing.
bool crit_composition(std::string& detail) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int inputs = 1 + static_cast<int>(i % 5);
    const int nf = static_cast<int>(i % 9);       // 0..8
    const int nc = 1 + static_cast<int>(i % 8);   // 1..8
    const mcal::ReluDag f = testutil::random_dag(inputs, false, nf, 60000 + i);
    const mcal::ReluDag c = testutil::random_dag(inputs, true, nc, 61000 + i);
    const double beta = -1.0 + 2.0 * ((i % 21) / 20.0);
    const mcal::ReluDag h = mcal::compose_clip_update(f, c, beta);
    if (h.node_count() != nf + nc + 2) {
      detail = "node count off on instance " + std::to_string(i);
      return false;
    }
    const mcal::ReluDag hi = mcal::inline_linear_nodes(h);
    mcal::SplitMix64 r{62000 + i};
    for (int t = 0; t < 1000; ++t) {
      std::vector<double> x(inputs);
      for (double& xi : x) xi = r.next_in(-1.0, 1.0);
      const double fv = f.forward(x);
      const double want = mcal::clip01(fv + beta * c.forward(x, fv));
      const double got = h.forward(x);
      if (std::abs(got - want) > 1e-9) {
        detail = "composed value off on instance " + std::to_string(i);
        return false;
      }
      if (std::abs(hi.forward(x) - got) > 1e-12) {
        detail = "inlining changed the function on instance " + std::to_string(i);
        return false;
      }
    }
  }
  detail = "100 network pairs x 1000 inputs";
  return true;
}

// 9. Both builtin proper-loss specs hold up on the grid, and dual-space
//    corrections drop the loss by beta^2/(2 lambda).
bool crit_proper(std::string& detail) {
  for (const mcal::DualLossSpec* spec :
       {&mcal::squared_loss_spec(), &mcal::xent_loss_spec()}) {
    const mcal::SpecGridCheck g = mcal::check_spec_on_grids(*spec);
    if (!g.ok(1e-9)) {
      detail = spec->name + " failed the grid audit";
      return false;
    }
  }
  if (mcal::xent_loss_spec().B != std::numbers::ln2) {
    detail = "cross-entropy anchor regret is not ln 2";
    return false;
  }
  for (std::uint64_t i = 0; i < 100; ++i) {
    const mcal::DualLossSpec& spec =
        (i % 2) ? mcal::xent_loss_spec() : mcal::squared_loss_spec();
    const int m = 1 + static_cast<int>(i % 4);
    const FiniteDistribution d = mcal::random_cube_distribution(m, 70000 + i);
    mcal::SplitMix64 r{71000 + i};
    std::vector<std::vector<double>> xs;
    std::vector<double> ts;
    for (const mcal::DistPoint& p : d.points()) {
      xs.push_back(p.x);
      ts.push_back(r.next_in(-3.0, 3.0));
    }
    const mcal::DualPredictor g(xs, ts);
    const mcal::Auditor c = mixed_auditor(d, m, 72000 + i);
    const double before = mcal::mean_dual_loss(spec, d, g);
    const auto [g2, beta] = mcal::proper_update(spec, d, g, c);
    const double after = mcal::mean_dual_loss(spec, d, g2);
    if (!(after <= before - beta * beta / (2.0 * spec.lambda) + 1e-12)) {
      detail = "dual drop fell short on instance " + std::to_string(i);
      return false;
    }
  }
  detail = "grid audits + 100 dual corrections";
  return true;
}

// 10. Penalized size selection returns a small predictor that passes the
//     sqrt(alpha+epsilon) audit on every instance family used above.
bool crit_srm(std::string& detail) {
  int selections = 0;
  const auto check = [&](const FiniteDistribution& d, int k, double alpha) -> bool {
    const mcal::SrmSelection sel = mcal::srm_select(d, k, alpha, d.dim());
    if (static_cast<double>(sel.n_star) > k / alpha + 1e-9) return false;
    const mcal::SrmReport rep = mcal::srm_verify(d, sel, 0.0);
    ++selections;
    return rep.ma_ok && rep.all_ok;
  };
  for (const int m : {3, 5, 7, 9}) {
    const FiniteDistribution d = mcal::make_majority_distribution(m);
    for (const int k : {1, 3})
      for (const double alpha : {0.1, 0.2})
        if (!check(d, k, alpha)) {
          detail = "majority instance failed at m=" + std::to_string(m);
          return false;
        }
  }
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int m = 1 + static_cast<int>(i % 8);
    const FiniteDistribution d = mcal::random_cube_distribution(m, 50000 + i);
    for (const int k : {1, 2})
      for (const double alpha : {0.05, 0.1, 0.3})
        if (!check(d, k, alpha)) {
          detail = "random instance " + std::to_string(i) + " failed";
          return false;
        }
  }
  // the worked example: constant 1/2 wins on majority-3 at alpha 0.3
  const FiniteDistribution d3 = mcal::make_majority_distribution(3);
  const mcal::SrmSelection sel = mcal::srm_select(d3, 1, 0.3, 3);
  if (sel.n_star != 0 || sel.objective != 0.25 || sel.audit_value != 0.25) {
    detail = "worked example selected differently";
    return false;
  }
  detail = std::to_string(selections) + " selections audited";
  return true;
}

// 11. Repeated CLI runs are byte-identical under --deterministic.
bool crit_cli_determinism(std::string& detail) {
  if (testutil::cli_path().empty()) {
    detail = "MCAL_CLI is not set";
    return false;
  }
  const std::string dir = "/tmp/mcal_accept_" + std::to_string(getpid());
  const std::string dist = dir + "_dist.json";
  const std::string pred = dir + "_pred.json";
  const std::string auds = dir + "_auds.json";
  const std::string netf = dir + "_f.json";
  const std::string netc = dir + "_c.json";
  if (testutil::run_cli("gen-random-dist --m 3 --seed 5 --out " + dist).code != 0) {
    detail = "generator failed";
    return false;
  }
  mcal::save_json_file(pred, mcal::to_json(mcal::Predictor{mcal::JuntaPredictor()}));
  mcal::save_json_file(
      auds, mcal::ojson::array({mcal::to_json(mcal::Auditor{mcal::MajorityAuditor({0, 1, 2})}),
                                mcal::to_json(mcal::Auditor{
                                    testutil::random_junta_auditor(3, 2, 99)})}));
  mcal::save_json_file(netf, mcal::to_json(testutil::random_dag(2, false, 3, 1)));
  mcal::save_json_file(netc, mcal::to_json(testutil::random_dag(2, true, 3, 2)));

  const std::vector<std::string> cmds = {
      "gen-majority --m 3",
      "gen-random-dist --m 2 --seed 7",
      "audit --dist " + dist + " --predictor " + pred + " --class juntas --k 2 --gamma 0.1",
      "audit --dist " + dist + " --predictor " + pred + " --auditors " + auds + " --gamma 0.1",
      "boost --dist " + dist + " --predictor " + pred + " --auditors " + auds + " --gamma 0.1",
      "junta-opt --dist " + dist + " --n 2",
      "unlucky --dist " + dist + " --k 1 --alpha 0.1 --nmax 3",
      "verify-upper --dist " + dist + " --k 1 --alpha 0.2",
      "lowerbound --k 3 --alpha 0.03 --m 9 --samples 5 --seed 3",
      "maj-cor --k 1 --m 5 --method fourier",
      "compose-check --f " + netf + " --c " + netc + " --beta 0.25 --samples 100 --seed 4",
      "proper --spec xent --dist " + dist + " --auditors " + auds + " --gamma 0.1",
      "proper --spec squared --dist " + dist + " --auditors " + auds + " --gamma 0.1",
      "srm --dist " + dist + " --k 1 --alpha 0.3",
  };
  for (const std::string& cmd : cmds) {
    for (const std::string fmt : {" --format json", " --format csv"}) {
      const std::string full =
          cmd.rfind("gen", 0) == 0 ? cmd : cmd + fmt + " --deterministic";
      const testutil::CliResult r1 = testutil::run_cli(full);
      const testutil::CliResult r2 = testutil::run_cli(full);
      if (r1.code != r2.code || r1.out != r2.out || r1.out.empty()) {
        detail = "non-deterministic or failing: " + full;
        return false;
      }
      if (cmd.rfind("gen", 0) == 0) break;  // generators ignore --format
    }
  }
  for (const std::string& p : {dist, pred, auds, netf, netc}) std::remove(p.c_str());
  detail = std::to_string(cmds.size()) + " subcommand invocations, both formats";
  return true;
}

}  // namespace

int main() {
  run_criterion("corrective-step-loss-drop", 5, crit_loss_drop);
  run_criterion("boost-termination", 10, crit_boost);
  run_criterion("unlucky-size-count", 60, crit_unlucky_count);
  run_criterion("optimal-junta-multiaccuracy", 60, crit_upper_bound);
  run_criterion("majority-correlation-bound", 30, crit_maj_correlation);
  run_criterion("majority-level1-closed-form", 30, crit_level1);
  run_criterion("hardness-witness-sweep", 30, crit_hardness);
  run_criterion("network-composition", 10, crit_composition);
  run_criterion("proper-loss-contracts", 10, crit_proper);
  run_criterion("srm-selection", 10, crit_srm);
  run_criterion("cli-determinism", 30, crit_cli_determinism);
  return g_all_ok ? 0 : 1;
}
