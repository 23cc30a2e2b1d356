#pragma once

#include <cstddef>
#include <vector>

#include "persuade/belief.hpp"

namespace persuade {

struct ChainClassification {
  bool irreducible = false;
  bool aperiodic = false;
  std::size_t period = 1;  // gcd of closed-walk lengths over the chain's cycles
};

/// Row-stochastic k x k transition matrix.  Classification flags are
/// computed once at construction from the positivity pattern.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(std::vector<std::vector<double>> rows);

  std::size_t size() const { return k_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * k_ + j]; }
  const std::vector<double>& data() const { return a_; }

  const ChainClassification& classification() const { return cls_; }
  bool ergodic() const { return cls_.irreducible && cls_.aperiodic; }

 private:
  std::size_t k_;
  std::vector<double> a_;  // row major
  ChainClassification cls_;
};

/// Invariant distribution, computed by a direct linear solve of
/// (M^T - I) pi = 0 stacked with the normalisation row.  For reducible
/// chains the minimum-norm solution is returned (a convex mixture of the
/// per-class invariant laws); the result always satisfies pi M = pi.
Belief invariant_distribution(const StochasticMatrix& m);

/// xi M^steps (row-vector pushes).
Belief push_belief(const Belief& xi, const StochasticMatrix& m, std::size_t steps = 1);

/// Smallest n with max_l || e_l M^n - pi ||_1 <= eps, found by direct scan.
/// Requires an ergodic chain; throws if the scan exceeds `cap` steps.
std::size_t mixing_steps(const StochasticMatrix& m, const Belief& pi, double eps,
                         std::size_t cap = 1000000);

}  // namespace persuade
