#pragma once
#include <string>
#include <vector>

#include <json.hpp>

#include "mcal/dist.hpp"
#include "mcal/predict.hpp"
#include "mcal/proper.hpp"
#include "mcal/relu_dag.hpp"

namespace mcal {

using ojson = nlohmann::ordered_json;

// On-disk formats (all JSON):
//   distribution: {"dim", "feature_kind": "pm1"|"real", "points": [{"x","w","eta"}]}
//   predictor:    {"kind": "table"|"junta"|"relu_dag", ...}
//   auditor:      {"kind": "table"|"junta"|"majority"|"relu_dag", ...}
//   auditor list: bare array, or {"auditors": [...]}
//   dual table:   {"kind": "dual_table", "rows": [{"x","t"}]}, t clamped to +/-30
// Loads reject malformed values with invalid_argument_error; unknown keys are
// ignored. Writers emit keys in a fixed order so identical data gives
// identical bytes.

ojson to_json(const FiniteDistribution& d);
FiniteDistribution dist_from_json(const nlohmann::json& j);

ojson to_json(const ReluDag& g);
ReluDag dag_from_json(const nlohmann::json& j);

ojson to_json(const Predictor& f);
Predictor predictor_from_json(const nlohmann::json& j);

ojson to_json(const Auditor& c);
Auditor auditor_from_json(const nlohmann::json& j);
std::vector<Auditor> auditors_from_json(const nlohmann::json& j);

ojson to_json(const DualPredictor& g);
DualPredictor dual_predictor_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const ojson& j);

}  // namespace mcal
