#include "mcal/io.hpp"

#include <fstream>

#include "mcal/errors.hpp"

namespace mcal {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw invalid_argument_error(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

double as_double(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw invalid_argument_error(std::string("json: ") + what + " must be a number");
  return j.get<double>();
}

int as_int(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer())
    throw invalid_argument_error(std::string("json: ") + what + " must be an integer");
  return j.get<int>();
}

std::vector<double> as_point(const nlohmann::json& j) {
  if (!j.is_array()) throw invalid_argument_error("json: x must be an array");
  std::vector<double> x;
  x.reserve(j.size());
  for (const auto& v : j) x.push_back(as_double(v, "x entry"));
  return x;
}

std::vector<double> as_double_vec(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw invalid_argument_error(std::string("json: ") + what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(as_double(v, what));
  return out;
}

std::vector<int> as_int_vec(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw invalid_argument_error(std::string("json: ") + what + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(as_int(v, what));
  return out;
}

std::string kind_of(const nlohmann::json& j) {
  const nlohmann::json& k = field(j, "kind");
  if (!k.is_string()) throw invalid_argument_error("json: kind must be a string");
  return k.get<std::string>();
}

}  // namespace

ojson to_json(const FiniteDistribution& d) {
  ojson j;
  j["dim"] = d.dim();
  j["feature_kind"] = to_string(d.kind());
  ojson pts = ojson::array();
  for (const DistPoint& p : d.points()) {
    ojson pj;
    pj["x"] = p.x;
    pj["w"] = p.w;
    pj["eta"] = p.eta;
    pts.push_back(std::move(pj));
  }
  j["points"] = std::move(pts);
  return j;
}

FiniteDistribution dist_from_json(const nlohmann::json& j) {
  const int dim = as_int(field(j, "dim"), "dim");
  const nlohmann::json& fkj = field(j, "feature_kind");
  if (!fkj.is_string()) throw invalid_argument_error("json: feature_kind must be a string");
  const std::string fk = fkj.get<std::string>();
  FeatureKind kind;
  if (fk == "pm1")
    kind = FeatureKind::pm1;
  else if (fk == "real")
    kind = FeatureKind::real;
  else
    throw invalid_argument_error("json: feature_kind must be 'pm1' or 'real'");
  const nlohmann::json& pts = field(j, "points");
  if (!pts.is_array()) throw invalid_argument_error("json: points must be an array");
  std::vector<DistPoint> out;
  out.reserve(pts.size());
  for (const auto& pj : pts) {
    DistPoint p;
    p.x = as_point(field(pj, "x"));
    p.w = as_double(field(pj, "w"), "w");
    p.eta = as_double(field(pj, "eta"), "eta");
    out.push_back(std::move(p));
  }
  return FiniteDistribution(dim, kind, std::move(out));
}

ojson to_json(const ReluDag& g) {
  ojson j;
  j["kind"] = "relu_dag";
  j["inputs"] = g.inputs();
  j["has_v_input"] = g.has_v_input();
  ojson nodes = ojson::array();
  for (const ReluNode& nd : g.nodes()) {
    ojson nj;
    nj["in"] = nd.in;
    nj["w"] = nd.w;
    nj["b"] = nd.b;
    nj["act"] = nd.act == Act::relu ? "relu" : "linear";
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);
  j["output"] = g.output();
  return j;
}

ReluDag dag_from_json(const nlohmann::json& j) {
  const int inputs = as_int(field(j, "inputs"), "inputs");
  const nlohmann::json& hv = field(j, "has_v_input");
  if (!hv.is_boolean()) throw invalid_argument_error("json: has_v_input must be a boolean");
  const nlohmann::json& nodes = field(j, "nodes");
  if (!nodes.is_array()) throw invalid_argument_error("json: nodes must be an array");
  std::vector<ReluNode> out;
  out.reserve(nodes.size());
  for (const auto& nj : nodes) {
    ReluNode nd;
    nd.in = as_int_vec(field(nj, "in"), "in");
    nd.w = as_double_vec(field(nj, "w"), "w");
    nd.b = as_double(field(nj, "b"), "b");
    const nlohmann::json& act = field(nj, "act");
    if (!act.is_string()) throw invalid_argument_error("json: act must be a string");
    const std::string a = act.get<std::string>();
    if (a == "relu")
      nd.act = Act::relu;
    else if (a == "linear")
      nd.act = Act::linear;
    else
      throw invalid_argument_error("json: act must be 'relu' or 'linear'");
    out.push_back(std::move(nd));
  }
  return ReluDag(inputs, hv.get<bool>(), std::move(out), as_int(field(j, "output"), "output"));
}

namespace {

ojson rows_json(const std::vector<std::vector<double>>& xs, const std::vector<double>& vals,
                const char* value_key) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ojson r;
    r["x"] = xs[i];
    r[value_key] = vals[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

ojson vrule_json(const VRule& r) {
  ojson j;
  switch (r.form) {
    case VRule::Form::constant:
      j["form"] = "constant";
      j["a"] = r.a;
      break;
    case VRule::Form::band:
      j["form"] = "band";
      j["a"] = r.a;
      j["lo"] = r.lo;
      j["hi"] = r.hi;
      break;
    case VRule::Form::affine:
      j["form"] = "affine";
      j["s"] = r.s;
      j["t"] = r.t;
      break;
  }
  return j;
}

VRule vrule_from_json(const nlohmann::json& j) {
  const nlohmann::json& f = field(j, "form");
  if (!f.is_string()) throw invalid_argument_error("json: rule form must be a string");
  const std::string form = f.get<std::string>();
  VRule r;
  if (form == "constant") {
    r.form = VRule::Form::constant;
    r.a = as_double(field(j, "a"), "a");
  } else if (form == "band") {
    r.form = VRule::Form::band;
    r.a = as_double(field(j, "a"), "a");
    r.lo = as_double(field(j, "lo"), "lo");
    r.hi = as_double(field(j, "hi"), "hi");
  } else if (form == "affine") {
    r.form = VRule::Form::affine;
    r.s = as_double(field(j, "s"), "s");
    r.t = as_double(field(j, "t"), "t");
  } else {
    throw invalid_argument_error("json: rule form must be constant, band, or affine");
  }
  return r;
}

}  // namespace

ojson to_json(const Predictor& f) {
  return std::visit(
      [](const auto& p) -> ojson {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TablePredictor>) {
          ojson j;
          j["kind"] = "table";
          j["rows"] = rows_json(p.xs(), p.values(), "v");
          return j;
        } else if constexpr (std::is_same_v<T, JuntaPredictor>) {
          ojson j;
          j["kind"] = "junta";
          j["coords"] = p.coords();
          j["table"] = p.table();
          return j;
        } else {
          return to_json(p);
        }
      },
      f);
}

Predictor predictor_from_json(const nlohmann::json& j) {
  const std::string kind = kind_of(j);
  if (kind == "table") {
    const nlohmann::json& rows = field(j, "rows");
    if (!rows.is_array()) throw invalid_argument_error("json: rows must be an array");
    std::vector<std::vector<double>> xs;
    std::vector<double> vals;
    for (const auto& r : rows) {
      xs.push_back(as_point(field(r, "x")));
      vals.push_back(as_double(field(r, "v"), "v"));
    }
    return TablePredictor(std::move(xs), std::move(vals));
  }
  if (kind == "junta")
    return JuntaPredictor(as_int_vec(field(j, "coords"), "coords"),
                          as_double_vec(field(j, "table"), "table"));
  if (kind == "relu_dag") {
    ReluDag g = dag_from_json(j);
    if (g.has_v_input())
      throw invalid_argument_error("json: a predictor network cannot read a v input");
    return g;
  }
  throw invalid_argument_error("json: unknown predictor kind '" + kind + "'");
}

ojson to_json(const Auditor& c) {
  return std::visit(
      [](const auto& a) -> ojson {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, TableAuditor>) {
          ojson j;
          j["kind"] = "table";
          ojson rows = ojson::array();
          for (std::size_t i = 0; i < a.size(); ++i) {
            ojson r;
            r["x"] = a.xs()[i];
            r["rule"] = vrule_json(a.rules()[i]);
            rows.push_back(std::move(r));
          }
          j["rows"] = std::move(rows);
          return j;
        } else if constexpr (std::is_same_v<T, JuntaAuditor>) {
          ojson j;
          j["kind"] = "junta";
          j["coords"] = a.coords();
          j["table"] = a.table();
          return j;
        } else if constexpr (std::is_same_v<T, MajorityAuditor>) {
          ojson j;
          j["kind"] = "majority";
          j["coords"] = a.coords();
          return j;
        } else {
          return to_json(a);
        }
      },
      c);
}

Auditor auditor_from_json(const nlohmann::json& j) {
  const std::string kind = kind_of(j);
  if (kind == "table") {
    const nlohmann::json& rows = field(j, "rows");
    if (!rows.is_array()) throw invalid_argument_error("json: rows must be an array");
    std::vector<std::vector<double>> xs;
    std::vector<VRule> rules;
    for (const auto& r : rows) {
      xs.push_back(as_point(field(r, "x")));
      rules.push_back(vrule_from_json(field(r, "rule")));
    }
    return TableAuditor(std::move(xs), std::move(rules));
  }
  if (kind == "junta")
    return JuntaAuditor(as_int_vec(field(j, "coords"), "coords"),
                        as_double_vec(field(j, "table"), "table"));
  if (kind == "majority") return MajorityAuditor(as_int_vec(field(j, "coords"), "coords"));
  if (kind == "relu_dag") return dag_from_json(j);
  throw invalid_argument_error("json: unknown auditor kind '" + kind + "'");
}

std::vector<Auditor> auditors_from_json(const nlohmann::json& j) {
  const nlohmann::json* arr = &j;
  if (j.is_object() && j.contains("auditors")) arr = &j.at("auditors");
  if (!arr->is_array()) throw invalid_argument_error("json: auditor list must be an array");
  if (arr->empty()) throw invalid_argument_error("json: auditor list is empty");
  std::vector<Auditor> out;
  out.reserve(arr->size());
  for (const auto& a : *arr) out.push_back(auditor_from_json(a));
  return out;
}

ojson to_json(const DualPredictor& g) {
  ojson j;
  j["kind"] = "dual_table";
  std::vector<double> capped = g.ts();
  for (double& t : capped) t = t < -30.0 ? -30.0 : (t > 30.0 ? 30.0 : t);
  j["rows"] = rows_json(g.xs(), capped, "t");
  return j;
}

DualPredictor dual_predictor_from_json(const nlohmann::json& j) {
  if (kind_of(j) != "dual_table")
    throw invalid_argument_error("json: expected kind 'dual_table'");
  const nlohmann::json& rows = field(j, "rows");
  if (!rows.is_array()) throw invalid_argument_error("json: rows must be an array");
  std::vector<std::vector<double>> xs;
  std::vector<double> ts;
  for (const auto& r : rows) {
    xs.push_back(as_point(field(r, "x")));
    ts.push_back(as_double(field(r, "t"), "t"));
  }
  return DualPredictor(std::move(xs), std::move(ts));
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_argument_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument_error(path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const ojson& j) {
  std::ofstream out(path);
  if (!out) throw invalid_argument_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace mcal
