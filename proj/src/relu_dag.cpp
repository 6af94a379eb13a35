#include "mcal/relu_dag.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "mcal/errors.hpp"

namespace mcal {

ReluDag::ReluDag(int inputs, bool has_v_input, std::vector<ReluNode> nodes, int output)
    : inputs_(inputs), has_v_(has_v_input), nodes_(std::move(nodes)), output_(output) {
  if (inputs_ < 0) throw invalid_argument_error("relu_dag: negative input count");
  if (nodes_.empty()) {
    if (output_ != -1)
      throw invalid_argument_error("relu_dag: empty network must use output = -1");
    return;
  }
  if (output_ < 0 || output_ >= node_count())
    throw invalid_argument_error("relu_dag: output index out of range");
  const int base = input_slots();
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const ReluNode& nd = nodes_[j];
    if (nd.in.size() != nd.w.size())
      throw invalid_argument_error("relu_dag: node " + std::to_string(j) +
                                   " has mismatched in/w lengths");
    for (int s : nd.in)
      if (s < 0 || s >= base + static_cast<int>(j))
        throw invalid_argument_error("relu_dag: node " + std::to_string(j) +
                                     " reads slot " + std::to_string(s) +
                                     " that is not earlier in the order");
    for (double v : nd.w)
      if (!std::isfinite(v))
        throw invalid_argument_error("relu_dag: non-finite weight");
    if (!std::isfinite(nd.b)) throw invalid_argument_error("relu_dag: non-finite bias");
  }
}

namespace {

double run(const ReluDag& g, std::span<const double> x, const double* v) {
  if (static_cast<int>(x.size()) != g.inputs())
    throw domain_mismatch_error("relu_dag: input has wrong dimension");
  if (g.node_count() == 0) return 0.0;
  const int base = g.input_slots();
  std::vector<double> slot(static_cast<std::size_t>(base) + g.nodes().size());
  for (int c = 0; c < g.inputs(); ++c) slot[static_cast<std::size_t>(c)] = x[c];
  if (g.has_v_input()) slot[static_cast<std::size_t>(g.inputs())] = v ? *v : 0.0;
  for (std::size_t j = 0; j < g.nodes().size(); ++j) {
    const ReluNode& nd = g.nodes()[j];
    double acc = nd.b;
    for (std::size_t e = 0; e < nd.in.size(); ++e)
      acc += nd.w[e] * slot[static_cast<std::size_t>(nd.in[e])];
    if (nd.act == Act::relu && acc < 0.0) acc = 0.0;
    slot[static_cast<std::size_t>(base) + j] = acc;
  }
  return slot[static_cast<std::size_t>(base) + g.output()];
}

}  // namespace

double ReluDag::forward(std::span<const double> x) const {
  if (has_v_)
    throw invalid_argument_error("relu_dag: network expects a v input");
  return run(*this, x, nullptr);
}

double ReluDag::forward(std::span<const double> x, double v) const { return run(*this, x, &v); }

}  // namespace mcal
