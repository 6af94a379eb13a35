#include "mcal/nncompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "mcal/errors.hpp"
#include "mcal/predict.hpp"
#include "mcal/rng.hpp"

namespace mcal {

ReluDag with_clip_of_affine(const ReluDag& g, std::vector<int> slots, std::vector<double> w,
                            double b) {
  if (slots.size() != w.size())
    throw invalid_argument_error("with_clip_of_affine: mismatched slots/weights");
  const int limit = g.input_slots() + g.node_count();
  for (int s : slots)
    if (s < 0 || s >= limit)
      throw invalid_argument_error("with_clip_of_affine: slot out of range");

  std::vector<ReluNode> nodes = g.nodes();
  ReluNode p1{slots, w, b - 1.0, Act::relu};
  nodes.push_back(p1);
  const int p1_slot = limit;  // slot id of the node just appended
  slots.push_back(p1_slot);
  w.push_back(-1.0);
  nodes.push_back(ReluNode{std::move(slots), std::move(w), b, Act::relu});
  const int out = static_cast<int>(nodes.size()) - 1;
  return ReluDag(g.inputs(), g.has_v_input(), std::move(nodes), out);
}

ReluDag with_clip_of(const ReluDag& g, int slot) {
  return with_clip_of_affine(g, {slot}, {1.0}, 0.0);
}

ReluDag compose_clip_update(const ReluDag& f, const ReluDag& c, double beta) {
  if (!(std::abs(beta) <= 1.0))
    throw invalid_argument_error("compose_clip_update: |beta| must be <= 1");
  if (f.has_v_input())
    throw invalid_argument_error("compose_clip_update: f must not read a prediction input");
  if (f.inputs() != c.inputs())
    throw domain_mismatch_error("compose_clip_update: f and c disagree on the input count");

  const int d = f.inputs();
  const int n = f.node_count();
  const int hv = c.has_v_input() ? 1 : 0;
  const bool f_empty = n == 0;  // f computes the constant 0

  std::vector<ReluNode> nodes = f.nodes();
  for (const ReluNode& src : c.nodes()) {
    ReluNode nd;
    nd.b = src.b;
    nd.act = src.act;
    for (std::size_t e = 0; e < src.in.size(); ++e) {
      const int s = src.in[e];
      if (s < d) {
        nd.in.push_back(s);
        nd.w.push_back(src.w[e]);
      } else if (hv && s == d) {
        if (f_empty) continue;  // v input carried the constant 0
        nd.in.push_back(d + f.output());
        nd.w.push_back(src.w[e]);
      } else {
        nd.in.push_back(s - hv + n);  // c's node (s - d - hv) lands at index n + that
        nd.w.push_back(src.w[e]);
      }
    }
    nodes.push_back(std::move(nd));
  }
  const int merged_count = static_cast<int>(nodes.size());
  ReluDag merged(d, false, std::move(nodes), merged_count == 0 ? -1 : merged_count - 1);

  std::vector<int> slots;
  std::vector<double> w;
  if (!f_empty) {
    slots.push_back(d + f.output());
    w.push_back(1.0);
  }
  if (c.node_count() > 0) {
    slots.push_back(d + n + c.output());
    w.push_back(beta);
  }
  return with_clip_of_affine(merged, std::move(slots), std::move(w), 0.0);
}

ReluDag inline_linear_nodes(const ReluDag& g) {
  const int n = g.node_count();
  if (n == 0) return g;
  const int base = g.input_slots();

  std::vector<ReluNode> out_nodes;
  std::vector<int> new_index(static_cast<std::size_t>(n), -1);
  std::vector<bool> gone(static_cast<std::size_t>(n), false);
  // affine forms of the removed nodes, keyed by surviving slot ids
  std::vector<std::map<int, double>> aff(static_cast<std::size_t>(n));
  std::vector<double> affb(static_cast<std::size_t>(n), 0.0);

  for (int j = 0; j < n; ++j) {
    const ReluNode& nd = g.nodes()[static_cast<std::size_t>(j)];
    std::map<int, double> acc;
    double b = nd.b;
    for (std::size_t e = 0; e < nd.in.size(); ++e) {
      const int s = nd.in[e];
      const double wv = nd.w[e];
      if (s < base) {
        acc[s] += wv;
      } else {
        const int src = s - base;
        if (gone[static_cast<std::size_t>(src)]) {
          b += wv * affb[static_cast<std::size_t>(src)];
          for (const auto& [slot, w2] : aff[static_cast<std::size_t>(src)]) acc[slot] += wv * w2;
        } else {
          acc[base + new_index[static_cast<std::size_t>(src)]] += wv;
        }
      }
    }
    if (nd.act == Act::linear && j != g.output()) {
      gone[static_cast<std::size_t>(j)] = true;
      aff[static_cast<std::size_t>(j)] = std::move(acc);
      affb[static_cast<std::size_t>(j)] = b;
    } else {
      ReluNode kept;
      kept.act = nd.act;
      kept.b = b;
      for (const auto& [slot, w2] : acc) {
        kept.in.push_back(slot);
        kept.w.push_back(w2);
      }
      new_index[static_cast<std::size_t>(j)] = static_cast<int>(out_nodes.size());
      out_nodes.push_back(std::move(kept));
    }
  }
  return ReluDag(g.inputs(), g.has_v_input(), std::move(out_nodes),
                 new_index[static_cast<std::size_t>(g.output())]);
}

CompositionReport composition_check(const ReluDag& f, const ReluDag& c, double beta,
                                    int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw invalid_argument_error("composition_check: need samples");
  const ReluDag h = compose_clip_update(f, c, beta);
  const ReluDag hi = inline_linear_nodes(h);

  CompositionReport rep;
  rep.nodes_f = f.node_count();
  rep.nodes_c = c.node_count();
  rep.nodes_h = h.node_count();
  rep.expected_nodes = f.node_count() + c.node_count() + 2;
  rep.node_count_ok = rep.nodes_h == rep.expected_nodes;
  rep.nodes_h_inlined = hi.node_count();
  rep.samples = n_samples;

  SplitMix64 rng(seed);
  std::vector<double> x(static_cast<std::size_t>(f.inputs()));
  for (int s = 0; s < n_samples; ++s) {
    for (double& xi : x) xi = rng.next_in(-1.0, 1.0);
    const double fv = f.forward(x);
    const double cv = c.has_v_input() ? c.forward(x, fv) : c.forward(x);
    const double ref = clip01(fv + beta * cv);
    const double hv = h.forward(x);
    const double hiv = hi.forward(x);
    rep.max_abs_err = std::max({rep.max_abs_err, std::abs(hv - ref), std::abs(hiv - ref)});
  }
  rep.values_ok = rep.max_abs_err <= 1e-9;
  rep.ok = rep.node_count_ok && rep.values_ok;
  return rep;
}

}  // namespace mcal
