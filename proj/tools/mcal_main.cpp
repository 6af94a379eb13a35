#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcal/audit.hpp"
#include "mcal/boost.hpp"
#include "mcal/dist.hpp"
#include "mcal/errors.hpp"
#include "mcal/io.hpp"
#include "mcal/junta.hpp"
#include "mcal/majority.hpp"
#include "mcal/nncompose.hpp"
#include "mcal/predict.hpp"
#include "mcal/proper.hpp"
#include "mcal/srm.hpp"

using mcal::ojson;

namespace {

// ---------- report plumbing ----------

struct OutputOpts {
  std::string format = "json";
  std::string out;
  bool deterministic = false;
};

std::string fmt_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

std::string csv_field(const ojson& v) {
  std::string s;
  if (v.is_null())
    s = "";
  else if (v.is_boolean())
    s = v.get<bool>() ? "true" : "false";
  else if (v.is_number_integer())
    s = std::to_string(v.get<long long>());
  else if (v.is_number())
    s = fmt_double(v.get<double>());
  else if (v.is_string())
    s = v.get<std::string>();
  else
    s = v.dump();
  const bool quote = s.find_first_of(",\"\r\n") != std::string::npos;
  if (!quote) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string iso_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const OutputOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw mcal::invalid_argument_error("cannot open " + o.out + " for writing");
  f << text;
}

// JSON reports carry everything; CSV reports are the tabular rows only (CSV
// never embeds a timestamp, so it is byte-stable with or without
// --deterministic).
void emit_report(ojson report, const std::vector<std::string>& columns, const ojson& csv_rows,
                 const OutputOpts& o) {
  if (o.format == "csv") {
    std::string text;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) text += ",";
      text += columns[i];
    }
    text += "\n";
    for (const auto& row : csv_rows) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) text += ",";
        if (row.contains(columns[i])) text += csv_field(row.at(columns[i]));
      }
      text += "\n";
    }
    write_text(o, text);
    return;
  }
  if (!o.deterministic) report["timestamp"] = iso_now();
  write_text(o, report.dump(2) + "\n");
}

ojson report_head(const std::string& subcommand) {
  ojson j;
  j["schema"] = "v1";
  j["subcommand"] = subcommand;
  return j;
}

mcal::FiniteDistribution load_dist(const std::string& path) {
  return mcal::dist_from_json(mcal::load_json_file(path));
}

// ---------- subcommand configs ----------

struct Args {
  std::string dist, predictor, auditors, f, c, g0, spec, cls, method = "brute", trace;
  int m = 0, k = 0, n = 0, nmax = -1, samples = 0;
  double alpha = 0, gamma = 0, epsilon = 0, beta = 0;
  bool m_set = false;
  std::uint64_t seed = 0;
  OutputOpts out;
};

int run_gen_majority(const Args& a) {
  const mcal::FiniteDistribution d = mcal::make_majority_distribution(a.m);
  write_text(a.out, mcal::to_json(d).dump(2) + "\n");
  return 0;
}

int run_gen_random(const Args& a) {
  const mcal::FiniteDistribution d = mcal::random_cube_distribution(a.m, a.seed);
  write_text(a.out, mcal::to_json(d).dump(2) + "\n");
  return 0;
}

int run_audit(const Args& a) {
  const mcal::FiniteDistribution d = load_dist(a.dist);
  const mcal::Predictor f = mcal::predictor_from_json(mcal::load_json_file(a.predictor));
  ojson rep = report_head("audit");
  rep["gamma"] = a.gamma;
  ojson rows = ojson::array();
  bool overall = true;

  if (!a.auditors.empty()) {
    rep["mode"] = "list";
    const std::vector<mcal::Auditor> cs =
        mcal::auditors_from_json(mcal::load_json_file(a.auditors));
    for (const mcal::AuditResult& r : mcal::audit_class(d, f, cs, a.gamma)) {
      ojson row;
      row["auditor"] = r.auditor;
      row["description"] = r.description;
      row["beta"] = r.beta;
      row["passed"] = r.passed;
      overall = overall && r.passed;
      rows.push_back(std::move(row));
    }
  } else {
    if (a.cls != "juntas")
      throw mcal::invalid_argument_error("audit: pass --auditors FILE or --class juntas --k K");
    rep["mode"] = "class-juntas";
    rep["k"] = a.k;
    const mcal::MaWitness w = mcal::max_ma_violation_juntas(d, mcal::as_fn(f), a.k);
    rep["witness_coords"] = w.witness.coords();
    ojson row;
    row["auditor"] = 0;
    row["description"] = "junta-class[k=" + std::to_string(a.k) + "]";
    row["beta"] = w.value;
    row["passed"] = w.value <= a.gamma;
    overall = w.value <= a.gamma;
    rows.push_back(std::move(row));
  }
  rep["overall_pass"] = overall;
  rep["rows"] = rows;
  emit_report(std::move(rep), {"auditor", "description", "beta", "passed"}, rows, a.out);
  return 0;  // an uncalibrated predictor is a finding, not a failure
}

int run_boost(const Args& a) {
  const mcal::FiniteDistribution d = load_dist(a.dist);
  const mcal::Predictor f0 = mcal::predictor_from_json(mcal::load_json_file(a.predictor));
  const std::vector<mcal::Auditor> cs =
      mcal::auditors_from_json(mcal::load_json_file(a.auditors));
  const double initial = mcal::squared_loss(d, f0);
  const mcal::BoostTrace trace = mcal::boost_until_calibrated(d, f0, cs, a.gamma);

  ojson rows = ojson::array();
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const mcal::BoostStep& st = trace.steps[s];
    ojson row;
    row["step"] = static_cast<int>(s);
    row["auditor"] = st.auditor;
    row["beta"] = st.beta;
    row["loss_before"] = st.loss_before;
    row["loss_after"] = st.loss_after;
    rows.push_back(std::move(row));
  }
  double final_violation = 0.0;
  for (const mcal::Auditor& c : cs) {
    const double b = std::abs(mcal::mc_violation(d, mcal::Predictor{trace.final_predictor}, c));
    final_violation = std::max(final_violation, b);
  }
  ojson rep = report_head("boost");
  rep["gamma"] = a.gamma;
  rep["rounds"] = static_cast<int>(trace.steps.size());
  rep["initial_loss"] = initial;
  rep["final_loss"] = mcal::squared_loss(d, mcal::Predictor{trace.final_predictor});
  rep["final_max_violation"] = final_violation;
  rep["rows"] = rows;
  if (!a.trace.empty()) {
    ojson tj = report_head("boost-trace");
    tj["steps"] = rows;
    tj["final_predictor"] = mcal::to_json(mcal::Predictor{trace.final_predictor});
    mcal::save_json_file(a.trace, tj);
  }
  emit_report(std::move(rep), {"step", "auditor", "beta", "loss_before", "loss_after"}, rows,
              a.out);
  return 0;
}

int run_junta_opt(const Args& a) {
  const mcal::FiniteDistribution d = load_dist(a.dist);
  const mcal::JuntaOpt o = mcal::junta_opt(d, a.n);
  ojson rep = report_head("junta-opt");
  rep["n"] = a.n;
  rep["opt"] = o.opt;
  rep["witness"] = mcal::to_json(mcal::Predictor{o.witness});
  ojson row;
  row["n"] = a.n;
  row["opt"] = o.opt;
  std::string coords;
  for (std::size_t i = 0; i < o.witness.coords().size(); ++i) {
    if (i) coords += ",";
    coords += std::to_string(o.witness.coords()[i]);
  }
  row["witness_coords"] = coords;
  ojson rows = ojson::array({row});
  emit_report(std::move(rep), {"n", "opt", "witness_coords"}, rows, a.out);
  return 0;
}

int run_unlucky(const Args& a) {
  const mcal::FiniteDistribution d = load_dist(a.dist);
  const mcal::OptCurve curve = mcal::opt_curve(d, a.nmax, a.k, a.alpha);
  ojson rows = ojson::array();
  for (std::size_t n = 0; n < curve.opts.size(); ++n) {
    ojson row;
    row["n"] = static_cast<int>(n);
    row["opt"] = curve.opts[n];
    if (n + static_cast<std::size_t>(a.k) < curve.opts.size())
      row["gap"] = curve.opts[n] - curve.opts[n + static_cast<std::size_t>(a.k)];
    else
      row["gap"] = nullptr;
    row["unlucky"] = std::find(curve.unlucky.begin(), curve.unlucky.end(), static_cast<int>(n)) !=
                     curve.unlucky.end();
    rows.push_back(std::move(row));
  }
  ojson rep = report_head("unlucky");
  rep["k"] = a.k;
  rep["alpha"] = a.alpha;
  rep["n_max"] = a.nmax;
  rep["unlucky"] = curve.unlucky;
  rep["rows"] = rows;
  emit_report(std::move(rep), {"n", "opt", "gap", "unlucky"}, rows, a.out);
  return 0;
}

int run_verify_upper(const Args& a) {
  const mcal::FiniteDistribution d = load_dist(a.dist);
  const int nmax = a.nmax < 0 ? d.dim() : a.nmax;
  const mcal::UpperBoundReport rep0 = mcal::verify_upper_bound(d, a.k, a.alpha, a.epsilon, nmax);
  ojson rows = ojson::array();
  for (const mcal::UpperBoundRow& r : rep0.rows) {
    ojson row;
    row["n"] = r.n;
    row["opt_n"] = r.opt_n;
    row["opt_nk"] = r.opt_nk;
    row["gap"] = r.opt_n - r.opt_nk;
    row["unlucky"] = r.unlucky;
    row["violation"] = r.violation;
    row["bound"] = r.bound;
    row["pass"] = r.pass;
    row["chain_ok"] = r.chain_ok;
    rows.push_back(std::move(row));
  }
  ojson rep = report_head("verify-upper");
  rep["k"] = a.k;
  rep["alpha"] = a.alpha;
  rep["epsilon"] = a.epsilon;
  rep["n_max"] = nmax;
  rep["unlucky"] = rep0.curve.unlucky;
  rep["all_pass"] = rep0.all_pass;
  rep["rows"] = rows;
  emit_report(std::move(rep),
              {"n", "opt_n", "opt_nk", "gap", "unlucky", "violation", "bound", "pass", "chain_ok"},
              rows, a.out);
  return rep0.all_pass ? 0 : 1;
}

int run_lowerbound(const Args& a) {
  const std::optional<int> m = a.m_set ? std::optional<int>(a.m) : std::nullopt;
  const mcal::LowerBoundReport rep0 =
      mcal::lower_bound_experiment(a.k, a.alpha, m, a.samples, a.seed);
  ojson rows = ojson::array();
  for (std::size_t s = 0; s < rep0.samples.size(); ++s) {
    ojson row;
    row["sample"] = static_cast<int>(s);
    row["n"] = rep0.samples[s].n;
    row["witness_value"] = rep0.samples[s].witness_value;
    row["threshold"] = std::sqrt(rep0.alpha);
    row["pass"] = rep0.samples[s].pass;
    rows.push_back(std::move(row));
  }
  ojson rep = report_head("lowerbound");
  rep["k"] = rep0.k;
  rep["k1"] = rep0.k1;
  rep["alpha"] = rep0.alpha;
  rep["m"] = rep0.m;
  rep["m_derived"] = rep0.m_derived;
  rep["count"] = rep0.count;
  rep["count_threshold"] = rep0.count_threshold;
  rep["count_ok"] = rep0.count_ok;
  rep["all_pass"] = rep0.all_pass;
  rep["rows"] = rows;
  emit_report(std::move(rep), {"sample", "n", "witness_value", "threshold", "pass"}, rows, a.out);
  return (rep0.all_pass && rep0.count_ok) ? 0 : 1;
}

int run_maj_cor(const Args& a) {
  const mcal::CorrelationMethod method = a.method == "fourier" ? mcal::CorrelationMethod::fourier
                                                               : mcal::CorrelationMethod::brute;
  if (a.method != "brute" && a.method != "fourier")
    throw mcal::invalid_argument_error("maj-cor: method must be brute or fourier");
  const double value = mcal::maj_correlation(a.k, a.m, method);
  const double bound = (2.0 / std::numbers::pi) * std::sqrt(static_cast<double>(a.k) / a.m);
  ojson rep = report_head("maj-cor");
  rep["k"] = a.k;
  rep["m"] = a.m;
  rep["method"] = a.method;
  rep["value"] = value;
  rep["bound"] = bound;
  rep["pass"] = value > bound;
  ojson row;
  row["k"] = a.k;
  row["m"] = a.m;
  row["method"] = a.method;
  row["value"] = value;
  row["bound"] = bound;
  row["pass"] = value > bound;
  ojson rows = ojson::array({row});
  emit_report(std::move(rep), {"k", "m", "method", "value", "bound", "pass"}, rows, a.out);
  return 0;  // maj_correlation throws on a bound violation
}

int run_compose_check(const Args& a) {
  const nlohmann::json fj = mcal::load_json_file(a.f);
  const nlohmann::json cj = mcal::load_json_file(a.c);
  const mcal::ReluDag f = mcal::dag_from_json(fj);
  const mcal::ReluDag c = mcal::dag_from_json(cj);
  const mcal::CompositionReport r = mcal::composition_check(f, c, a.beta, a.samples, a.seed);
  ojson rep = report_head("compose-check");
  rep["beta"] = a.beta;
  rep["samples"] = r.samples;
  rep["seed"] = a.seed;
  rep["nodes_f"] = r.nodes_f;
  rep["nodes_c"] = r.nodes_c;
  rep["nodes_h"] = r.nodes_h;
  rep["expected_nodes"] = r.expected_nodes;
  rep["node_count_ok"] = r.node_count_ok;
  rep["nodes_h_inlined"] = r.nodes_h_inlined;
  rep["max_abs_err"] = r.max_abs_err;
  rep["values_ok"] = r.values_ok;
  rep["ok"] = r.ok;
  ojson row = rep;
  row.erase("schema");
  row.erase("subcommand");
  ojson rows = ojson::array({row});
  emit_report(std::move(rep),
              {"beta", "samples", "seed", "nodes_f", "nodes_c", "nodes_h", "expected_nodes",
               "node_count_ok", "nodes_h_inlined", "max_abs_err", "values_ok", "ok"},
              rows, a.out);
  return r.ok ? 0 : 1;
}

int run_proper(const Args& a) {
  const mcal::DualLossSpec& spec =
      a.spec == "xent" ? mcal::xent_loss_spec() : mcal::squared_loss_spec();
  if (a.spec != "xent" && a.spec != "squared")
    throw mcal::invalid_argument_error("proper: spec must be xent or squared");
  const mcal::FiniteDistribution d = load_dist(a.dist);
  const std::vector<mcal::Auditor> cs =
      mcal::auditors_from_json(mcal::load_json_file(a.auditors));
  const mcal::DualPredictor g0 =
      a.g0.empty() ? mcal::DualPredictor::constant(d, spec.t0)
                   : mcal::dual_predictor_from_json(mcal::load_json_file(a.g0));
  const double initial = mcal::mean_dual_loss(spec, d, g0);
  const mcal::DualBoostTrace trace = mcal::proper_boost(spec, d, g0, cs, a.gamma);

  ojson rows = ojson::array();
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const mcal::DualBoostStep& st = trace.steps[s];
    ojson row;
    row["step"] = static_cast<int>(s);
    row["auditor"] = st.auditor;
    row["beta"] = st.beta;
    row["loss_before"] = st.loss_before;
    row["loss_after"] = st.loss_after;
    rows.push_back(std::move(row));
  }
  ojson rep = report_head("proper");
  rep["spec"] = a.spec;
  rep["gamma"] = a.gamma;
  rep["rounds"] = static_cast<int>(trace.steps.size());
  rep["initial_loss"] = initial;
  rep["final_loss"] = mcal::mean_dual_loss(spec, d, trace.final_predictor);
  rep["rows"] = rows;
  if (!a.trace.empty()) {
    ojson tj = report_head("proper-trace");
    tj["steps"] = rows;
    tj["final_predictor"] = mcal::to_json(trace.final_predictor);
    mcal::save_json_file(a.trace, tj);
  }
  emit_report(std::move(rep), {"step", "auditor", "beta", "loss_before", "loss_after"}, rows,
              a.out);
  return 0;
}

int run_srm(const Args& a) {
  const mcal::FiniteDistribution d = load_dist(a.dist);
  const int nmax = a.nmax < 0 ? d.dim() : a.nmax;
  const mcal::SrmSelection sel = mcal::srm_select(d, a.k, a.alpha, nmax);
  const mcal::SrmReport ver = mcal::srm_verify(d, sel, a.epsilon);
  ojson rows = ojson::array();
  for (std::size_t n = 0; n < sel.opts.size(); ++n) {
    ojson row;
    row["n"] = static_cast<int>(n);
    row["opt"] = sel.opts[n];
    row["objective"] = sel.opts[n] + sel.alpha * static_cast<double>(n) / sel.k;
    row["selected"] = static_cast<int>(n) == sel.n_star;
    rows.push_back(std::move(row));
  }
  ojson rep = report_head("srm");
  rep["k"] = a.k;
  rep["alpha"] = a.alpha;
  rep["n_max"] = nmax;
  rep["epsilon"] = a.epsilon;
  rep["n_star"] = sel.n_star;
  rep["objective"] = sel.objective;
  rep["audit_value"] = sel.audit_value;
  rep["f_star"] = mcal::to_json(mcal::Predictor{sel.f_star});
  ojson vj;
  vj["violation"] = ver.violation;
  vj["bound"] = ver.bound;
  vj["ma_ok"] = ver.ma_ok;
  vj["loss"] = ver.loss;
  vj["loss_bound"] = ver.loss_bound;
  vj["loss_ok"] = ver.loss_ok;
  vj["all_ok"] = ver.all_ok;
  rep["verify"] = std::move(vj);
  rep["rows"] = rows;
  emit_report(std::move(rep), {"n", "opt", "objective", "selected"}, rows, a.out);
  return ver.all_ok ? 0 : 1;
}

void emit_error(const char* type, const std::string& msg) {
  ojson j;
  j["schema"] = "v1";
  ojson e;
  e["type"] = type;
  e["message"] = msg;
  j["error"] = std::move(e);
  std::cerr << j.dump(2) << "\n";
}

void add_output_flags(CLI::App* cmd, Args& a) {
  cmd->add_option("--format", a.out.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", a.out.out, "write the report to this path instead of stdout");
  cmd->add_flag("--deterministic", a.out.deterministic,
                "omit the timestamp so identical runs are byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact multicalibration auditing, boosting, and model-selection toolkit"};
  app.require_subcommand(1);
  Args a;

  CLI::App* gm = app.add_subcommand("gen-majority", "write a majority distribution");
  gm->add_option("--m", a.m, "cube dimension (odd)")->required();
  gm->add_option("--out", a.out.out, "output path (default stdout)");

  CLI::App* gr = app.add_subcommand("gen-random-dist", "write a random-label cube distribution");
  gr->add_option("--m", a.m, "cube dimension")->required();
  gr->add_option("--seed", a.seed, "PRNG seed")->required();
  gr->add_option("--out", a.out.out, "output path (default stdout)");

  CLI::App* au = app.add_subcommand("audit", "measure calibration violations");
  au->add_option("--dist", a.dist)->required();
  au->add_option("--predictor", a.predictor)->required();
  au->add_option("--auditors", a.auditors, "auditor list file");
  au->add_option("--class", a.cls, "auditor class to scan exhaustively (juntas)");
  au->add_option("--k", a.k, "junta size for --class juntas");
  au->add_option("--gamma", a.gamma)->required();
  add_output_flags(au, a);

  CLI::App* bo = app.add_subcommand("boost", "run the calibration boosting loop");
  bo->add_option("--dist", a.dist)->required();
  bo->add_option("--predictor", a.predictor)->required();
  bo->add_option("--auditors", a.auditors)->required();
  bo->add_option("--gamma", a.gamma)->required();
  bo->add_option("--trace", a.trace, "also write the full trace to this JSON file");
  add_output_flags(bo, a);

  CLI::App* jo = app.add_subcommand("junta-opt", "exact best junta of a given size");
  jo->add_option("--dist", a.dist)->required();
  jo->add_option("--n", a.n)->required();
  add_output_flags(jo, a);

  CLI::App* un = app.add_subcommand("unlucky", "OPT curve and unlucky sizes");
  un->add_option("--dist", a.dist)->required();
  un->add_option("--k", a.k)->required();
  un->add_option("--alpha", a.alpha)->required();
  un->add_option("--nmax", a.nmax)->required();
  add_output_flags(un, a);

  CLI::App* vu = app.add_subcommand("verify-upper", "check loss-optimal juntas are multiaccurate");
  vu->add_option("--dist", a.dist)->required();
  vu->add_option("--k", a.k)->required();
  vu->add_option("--alpha", a.alpha)->required();
  vu->add_option("--epsilon", a.epsilon);
  vu->add_option("--nmax", a.nmax, "default: the distribution dimension");
  add_output_flags(vu, a);

  CLI::App* lb = app.add_subcommand("lowerbound", "majority hardness sweep");
  lb->add_option("--k", a.k)->required();
  lb->add_option("--alpha", a.alpha)->required();
  lb->add_option("--m", a.m, "ambient dimension (odd); derived from alpha when omitted")
      ->each([&a](const std::string&) { a.m_set = true; });
  lb->add_option("--samples", a.samples)->default_val(20);
  lb->add_option("--seed", a.seed);
  add_output_flags(lb, a);

  CLI::App* mc = app.add_subcommand("maj-cor", "majority-with-majority correlation");
  mc->add_option("--k", a.k)->required();
  mc->add_option("--m", a.m)->required();
  mc->add_option("--method", a.method, "brute or fourier");
  add_output_flags(mc, a);

  CLI::App* cc = app.add_subcommand("compose-check", "verify the composed update network");
  cc->add_option("--f", a.f, "predictor network file")->required();
  cc->add_option("--c", a.c, "auditor network file")->required();
  cc->add_option("--beta", a.beta)->required();
  cc->add_option("--samples", a.samples)->default_val(1000);
  cc->add_option("--seed", a.seed);
  add_output_flags(cc, a);

  CLI::App* pr = app.add_subcommand("proper", "dual-space boosting for a proper loss");
  pr->add_option("--spec", a.spec, "xent or squared")->required();
  pr->add_option("--dist", a.dist)->required();
  pr->add_option("--auditors", a.auditors)->required();
  pr->add_option("--gamma", a.gamma)->required();
  pr->add_option("--g0", a.g0, "initial dual table (default: constant t0)");
  pr->add_option("--trace", a.trace, "also write the full trace to this JSON file");
  add_output_flags(pr, a);

  CLI::App* sr = app.add_subcommand("srm", "size-penalized junta selection");
  sr->add_option("--dist", a.dist)->required();
  sr->add_option("--k", a.k)->required();
  sr->add_option("--alpha", a.alpha)->required();
  sr->add_option("--nmax", a.nmax, "default: the distribution dimension");
  sr->add_option("--epsilon", a.epsilon);
  add_output_flags(sr, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("invalid-input", e.what());
    return 2;
  }

  try {
    if (gm->parsed()) return run_gen_majority(a);
    if (gr->parsed()) return run_gen_random(a);
    if (au->parsed()) return run_audit(a);
    if (bo->parsed()) return run_boost(a);
    if (jo->parsed()) return run_junta_opt(a);
    if (un->parsed()) return run_unlucky(a);
    if (vu->parsed()) return run_verify_upper(a);
    if (lb->parsed()) return run_lowerbound(a);
    if (mc->parsed()) return run_maj_cor(a);
    if (cc->parsed()) return run_compose_check(a);
    if (pr->parsed()) return run_proper(a);
    if (sr->parsed()) return run_srm(a);
    emit_error("invalid-input", "no subcommand given");
    return 2;
  } catch (const mcal::invalid_argument_error& e) {
    emit_error("invalid-input", e.what());
    return 2;
  } catch (const mcal::domain_mismatch_error& e) {
    emit_error("invalid-input", e.what());
    return 2;
  } catch (const mcal::contract_violation_error& e) {
    emit_error("invalid-input", e.what());
    return 2;
  } catch (const mcal::resource_limit_error& e) {
    emit_error("resource-limit", e.what());
    return 3;
  } catch (const mcal::check_failed_error& e) {
    emit_error("check-failed", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
}
