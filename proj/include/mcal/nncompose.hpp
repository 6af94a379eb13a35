#pragma once
#include <cstdint>
#include <vector>

#include "mcal/relu_dag.hpp"

namespace mcal {

// Appends the two-node clip gadget for an affine read a = w . slots + b:
//   p1 = relu(a - 1),  p2 = relu(a - p1)
// so that p2 = min(1, max(0, a)) exactly. Output moves to p2.
ReluDag with_clip_of_affine(const ReluDag& g, std::vector<int> slots, std::vector<double> w,
                            double b);
ReluDag with_clip_of(const ReluDag& g, int slot);

// One network computing clip(f(x) + beta * c(x, f(x))): f's nodes, then c's
// nodes with the v input rewired to f's output, then the clip gadget.
// Node count is exactly f.node_count + c.node_count + 2.
ReluDag compose_clip_update(const ReluDag& f, const ReluDag& c, double beta);

// Substitutes every internal linear node into its readers, preserving the
// function up to floating-point reassociation. The output node stays even
// when linear.
ReluDag inline_linear_nodes(const ReluDag& g);

struct CompositionReport {
  int nodes_f = 0, nodes_c = 0;
  int nodes_h = 0;           // composed
  int expected_nodes = 0;    // nodes_f + nodes_c + 2
  bool node_count_ok = false;
  int nodes_h_inlined = 0;   // after inline_linear_nodes
  int samples = 0;
  double max_abs_err = 0.0;  // composed (and inlined) vs separate evaluation
  bool values_ok = false;    // max_abs_err <= 1e-9
  bool ok = false;
};

// Draws points uniformly from [-1,1]^inputs and compares the composed
// network (before and after inlining) against clip(f + beta c) computed by
// separate forward passes.
CompositionReport composition_check(const ReluDag& f, const ReluDag& c, double beta,
                                    int n_samples, std::uint64_t seed);

}  // namespace mcal
