#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "persuade/solver.hpp"

namespace persuade {

struct TrajectoryPoint {
  double delta = 0.0;
  double phi = 0.0;  // value started from the invariant law
  double psi = 0.0;  // invariant-weighted average of the vertex values
  std::size_t iterations = 0;
};

struct TrajectoryReport {
  std::vector<TrajectoryPoint> points;  // ascending in delta
  Belief pi;                            // invariant law of the chain
  double tolerance = 0.0;               // monotonicity tolerance (documented)
  double max_phi_increase = 0.0;        // worst adjacent-step violation
  double max_psi_decrease = 0.0;
  std::size_t phi_violations = 0;
  std::size_t psi_violations = 0;
  double max_bracket_violation = 0.0;  // worst psi - phi excess

  bool phi_non_increasing() const { return phi_violations == 0; }
  bool psi_non_decreasing() const { return psi_violations == 0; }
};

/// Documented monotonicity tolerance: twice the solver tolerance plus twice
/// the lattice error estimate derived from the payoff's grid Lipschitz bound.
double trajectory_tolerance(const PersuasionInstance& inst, const SimplexGrid& grid,
                            double eps_stop);

/// Solve across the delta ladder (warm-started in ascending order) and
/// record both monotone statistics.
TrajectoryReport phi_psi(const PersuasionInstance& inst, const StochasticMatrix& m,
                         std::vector<double> deltas, GridPtr grid,
                         double eps_stop = 1e-6);

struct MeetResult {
  bool triggered = false;      // some delta0 had phi = psi within tolerance
  double delta0 = 0.0;
  bool constant_after = true;  // both trajectories flat past delta0
  double max_deviation = 0.0;
};

/// Once the two trajectories meet, both must stay put for larger deltas.
MeetResult meet_check(const TrajectoryReport& report,
                      std::optional<double> tol = std::nullopt);

struct AsymptoticEstimate {
  double lower = 0.0;     // psi at the probe delta
  double upper = 0.0;     // phi at the probe delta
  double estimate = 0.0;  // midpoint
  double width() const { return upper - lower; }
};

/// Bracket of the limit value at a probe delta; requires an ergodic chain.
AsymptoticEstimate asymptotic_bracket(const PersuasionInstance& inst,
                                      const StochasticMatrix& m, double delta,
                                      GridPtr grid, double eps_stop = 1e-6);

struct BoundCheck {
  double bound = 0.0;          // the theoretical bound being audited
  double max_excess = 0.0;     // worst measured violation beyond the bound
  std::size_t violations = 0;  // count of points/pairs past the bound + slack
  double slack = 0.0;          // tolerance granted for solver + lattice error
  bool pass = true;
};

/// | v(xi) - v(xi M^n) | <= n (1-delta) ||u|| / delta, audited over the grid.
BoundCheck shift_bound_check(const PersuasionInstance& inst,
                             const StochasticMatrix& m, double delta, GridPtr grid,
                             double eps_stop = 1e-6, std::size_t n_steps = 1);

/// | v(xi) - v(p) | <= (2 ||u|| / c*) |xi - p|_1 for lattice points within
/// l1 distance c*/2 of the invariant law, c* its smallest entry.
BoundCheck lipschitz_near_pi_check(const PersuasionInstance& inst,
                                   const StochasticMatrix& m, double delta,
                                   GridPtr grid, double eps_stop = 1e-6);

struct RatePoint {
  double delta = 0.0;
  double supgap = 0.0;
  double ratio = 0.0;  // supgap / ((1-delta) log2(1/(1-delta)))
};

struct RateReport {
  std::vector<RatePoint> points;
  double vinf_estimate = 0.0;
  double bracket_width = 0.0;
  double median_ratio = 0.0;
  double max_ratio = 0.0;
  bool bounded = false;  // max <= 3 * median (documented default)
};

/// Audit the near-1 convergence rate: the sup-norm distance from the limit
/// estimate, divided by (1-delta) log2(1/(1-delta)), stays bounded.
/// All deltas must exceed 1 - c*/2; the limit estimate is the bracket
/// midpoint at `bracket_delta` (default: the largest delta given).
RateReport rate_check(const PersuasionInstance& inst, const StochasticMatrix& m,
                      std::vector<double> deltas, GridPtr grid,
                      double eps_stop = 1e-6,
                      std::optional<double> bracket_delta = std::nullopt);

/// A weighted family for the generalised increasing-average statement:
/// affinely independent beliefs whose hull contains every row of M, with
/// nonnegative weights reproducing the invariant law.
struct WeightedFamily {
  std::vector<Belief> xis;
  std::vector<double> gammas;
};

/// Vertices shrunk toward the barycenter as far as the rows of M allow.
WeightedFamily shrunken_vertex_family(const StochasticMatrix& m, double margin = 0.9);

/// Empty string when valid; otherwise a description of the failed condition.
std::string validate_family(const WeightedFamily& family, const StochasticMatrix& m);

/// Sum_i gamma_i v_delta(xi_i) for each delta (ascending, warm-started).
std::vector<double> weighted_trajectory(const PersuasionInstance& inst,
                                        const StochasticMatrix& m,
                                        std::vector<double> deltas,
                                        const WeightedFamily& family, GridPtr grid,
                                        double eps_stop = 1e-6);

}  // namespace persuade
