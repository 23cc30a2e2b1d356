#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "persuade/envelope.hpp"
#include "persuade/instance.hpp"
#include "persuade/markov.hpp"

namespace persuade {

/// A splitting of a prior into at most k posteriors, all lattice points.
struct Split {
  std::vector<std::size_t> atoms;  // grid indices
  std::vector<double> weights;     // positive, sum to one
  GridPtr grid;

  Belief barycenter() const;
  std::size_t size() const { return atoms.size(); }
};

struct SolveResult {
  GridValueFunction v;
  std::size_t iterations = 0;
  double final_gap = 0.0;
};

/**
 * One application of the discounted splitting operator on the grid:
 * envelope of f(xi) = (1-delta) u(xi) + delta v(xi M).  The returned
 * function is concave and carries its support structure.
 */
GridValueFunction bellman_step(const GridValueFunction& v,
                               const PersuasionInstance& inst,
                               const StochasticMatrix& m, double delta);

/**
 * Fixed point of the splitting operator by value iteration from v = 0
 * (or from `warm` when given).  Stops once the sup-norm successive gap is
 * at most eps_stop * (1 - delta), which leaves the iterate within eps_stop
 * of the grid fixed point.
 */
SolveResult solve_discounted_value(const PersuasionInstance& inst,
                                   const StochasticMatrix& m, double delta,
                                   GridPtr grid, double eps_stop = 1e-6,
                                   std::size_t iter_cap = 1000000,
                                   const GridValueFunction* warm = nullptr);

/**
 * Stationary split policy induced by a solved value function: at any belief
 * it returns the atoms and weights of the supporting facet of the envelope
 * of f(xi) = (1-delta) u(xi) + delta v(xi M).  Grid-point queries are
 * cached; arbitrary beliefs are served exactly via the facet structure.
 */
class SplitPolicy {
 public:
  SplitPolicy(const PersuasionInstance& inst, const StochasticMatrix& m,
              double delta, const GridValueFunction& v);

  const Split& at_grid(std::size_t idx) const;
  Split at(const Belief& xi) const;

  const GridValueFunction& objective() const { return f_env_; }
  const GridPtr& grid_ptr() const { return grid_; }

 private:
  GridPtr grid_;
  GridValueFunction f_env_;
  mutable std::vector<Split> cache_;
  mutable std::vector<bool> cached_;
};

/// Optimal split at one belief; tol_extract guards against an unconverged
/// value function (the achieved objective must reach v(xi) - tol_extract).
Split extract_optimal_split(const GridValueFunction& v,
                            const PersuasionInstance& inst,
                            const StochasticMatrix& m, double delta,
                            const Belief& xi, double tol_extract = 1e-6);

/// Distribution of the stage-n posterior under the stationary policy.
struct PosteriorLaw {
  std::size_t stage = 0;
  std::vector<std::pair<std::size_t, double>> atoms;  // (grid index, mass)
  GridPtr grid;
  bool truncated = false;

  Belief mean() const;
  double total_mass() const;
};

PosteriorLaw posterior_law(const SplitPolicy& policy, const StochasticMatrix& m,
                           const Belief& q, std::size_t n,
                           std::size_t support_cap = 100000);
PosteriorLaw posterior_law(const PersuasionInstance& inst,
                           const StochasticMatrix& m, double delta,
                           const Belief& q, std::size_t n, GridPtr grid,
                           double eps_stop = 1e-6,
                           std::size_t support_cap = 100000);

/// Advance a posterior law one stage under the policy (used to build the
/// laws incrementally).
PosteriorLaw advance_law(const PosteriorLaw& law, const SplitPolicy& policy,
                         const StochasticMatrix& m,
                         std::size_t support_cap = 100000);

}  // namespace persuade
