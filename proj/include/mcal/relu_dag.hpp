#pragma once
#include <span>
#include <vector>

namespace mcal {

enum class Act { relu, linear };

struct ReluNode {
  std::vector<int> in;  // slot ids, see ReluDag
  std::vector<double> w;
  double b = 0.0;
  Act act = Act::relu;
};

// Feed-forward network with explicit wiring. Slot ids: 0..inputs-1 are the
// feature coordinates, then (if has_v_input) slot `inputs` carries the
// prediction value fed in from outside, then slot inputs+[v]+j is node j.
// Nodes are stored in topological order; node j may only read earlier slots.
// Input slots do not count toward the node count. An empty network computes
// the constant 0 (output = -1 by convention).
class ReluDag {
 public:
  ReluDag(int inputs, bool has_v_input, std::vector<ReluNode> nodes, int output);

  int inputs() const { return inputs_; }
  bool has_v_input() const { return has_v_; }
  int output() const { return output_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<ReluNode>& nodes() const { return nodes_; }
  int input_slots() const { return inputs_ + (has_v_ ? 1 : 0); }

  double forward(std::span<const double> x) const;
  double forward(std::span<const double> x, double v) const;

 private:
  int inputs_;
  bool has_v_;
  std::vector<ReluNode> nodes_;
  int output_;
};

}  // namespace mcal
