#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcal/exact.hpp"
#include "mcal/limits.hpp"

namespace mcal {

enum class FeatureKind { pm1, real };

std::string to_string(FeatureKind k);

struct DistPoint {
  std::vector<double> x;
  double w = 0.0;
  double eta = 0.0;  // P[y = 1 | x]
};

// A finite weighted support with an explicit label probability per point.
// Labels are y in {0,1}; every expectation over (x,y) is a closed-form sum,
// nothing here samples. Immutable once constructed.
class FiniteDistribution {
 public:
  FiniteDistribution(int dim, FeatureKind kind, std::vector<DistPoint> points);

  // Exact mode: weights and label probabilities given as rationals; the
  // double fields are derived projections. Rationals must sum to exactly 1.
  static FiniteDistribution with_exact(int dim, FeatureKind kind,
                                       std::vector<std::vector<double>> xs,
                                       std::vector<Rat> w, std::vector<Rat> eta);

  int dim() const { return dim_; }
  FeatureKind kind() const { return kind_; }
  std::size_t size() const { return pts_.size(); }
  const DistPoint& point(std::size_t i) const { return pts_[i]; }
  std::span<const DistPoint> points() const { return pts_; }

  bool has_exact() const { return !exact_w_.empty(); }
  const Rat& exact_w(std::size_t i) const;
  const Rat& exact_eta(std::size_t i) const;

  // pm1 only: point i encoded as a bitmask, bit c set <=> x_c = +1
  std::uint64_t cube_code(std::size_t i) const;
  const std::vector<std::uint64_t>& cube_codes() const;

  std::optional<std::size_t> find(std::span<const double> x) const;

 private:
  int dim_;
  FeatureKind kind_;
  std::vector<DistPoint> pts_;
  std::vector<Rat> exact_w_, exact_eta_;
  std::vector<std::uint64_t> codes_;
  std::map<std::vector<double>, std::size_t> index_;

  void finish_construction();
};

// E_{x,y}[ g(x, y) ], exact over the two label values per point.
double expectation(const FiniteDistribution& d,
                   const std::function<double(std::span<const double>, int)>& g);

// Exact-mode companion: g receives the point index and the label.
Rat expectation_exact(const FiniteDistribution& d,
                      const std::function<Rat(std::size_t, int)>& g);

// E[(y - f(x))^2] for f with values in [0,1].
double squared_loss(const FiniteDistribution& d,
                    const std::function<double(std::span<const double>)>& f);

// Uniform distribution on {-1,+1}^m with y = 1 exactly when the majority of
// the coordinates is +1 (m odd). Carries exact rationals.
FiniteDistribution make_majority_distribution(int m, const Limits& limits = {});

// Uniform support on the full cube with splitmix64 label probabilities,
// enumerated in cube-code order. Carries exact weights.
FiniteDistribution random_cube_distribution(int m, std::uint64_t seed, const Limits& limits = {});

}  // namespace mcal
