#pragma once

#include <cstddef>
#include <vector>

#include "persuade/belief.hpp"
#include "persuade/envelope.hpp"
#include "persuade/grid.hpp"
#include "persuade/lp.hpp"
#include "persuade/markov.hpp"

namespace persuade {

/// Family of zero-sum stage games, one nonnegative I x J payoff matrix per
/// chain state, all with the same action sets.  Payoffs are what the informed
/// (maximizing) player receives.
class MatrixGameFamily {
 public:
  explicit MatrixGameFamily(std::vector<std::vector<std::vector<double>>> payoffs);

  std::size_t states() const { return payoffs_.size(); }
  std::size_t rows() const { return payoffs_[0].size(); }
  std::size_t cols() const { return payoffs_[0][0].size(); }
  double payoff(std::size_t state, std::size_t i, std::size_t j) const {
    return payoffs_[state][i][j];
  }
  double max_abs() const { return max_abs_; }

  /// Two-state, two-action family used throughout the docs and tests:
  /// G1 = [[1,0],[0,0]], G2 = [[0,0],[0,1]].
  static MatrixGameFamily example2();

 private:
  std::vector<std::vector<std::vector<double>>> payoffs_;
  double max_abs_ = 0.0;
};

/// Per-state mixed action of the informed player: K rows over I actions.
class StageStrategy {
 public:
  explicit StageStrategy(std::vector<std::vector<double>> rows);

  std::size_t states() const { return rows_.size(); }
  std::size_t actions() const { return rows_[0].size(); }
  double prob(std::size_t state, std::size_t action) const {
    return rows_[state][action];
  }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  std::vector<std::vector<double>> rows_;
};

inline MatrixGameSolution matrix_game_value(
    const std::vector<std::vector<double>>& payoff) {
  return solve_matrix_game(payoff);
}

/// Value of the average game sum_l xi[l] G_l: what the informed player gets
/// when ignoring the state.
double nonrevealing_value(const MatrixGameFamily& fam, const Belief& xi);

struct PosteriorResult {
  Belief posterior;
  double prob = 0.0;  // probability that the action is observed under (xi, chi)
};

/// Bayes update of xi after observing the informed player's action under the
/// stage strategy chi.  Zero-probability actions return xi itself with prob 0.
PosteriorResult posterior_after_action(const Belief& xi, const StageStrategy& chi,
                                       std::size_t action);

/// min over columns of the (xi, chi)-averaged payoff row.
double stage_reward(const MatrixGameFamily& fam, const Belief& xi,
                    const StageStrategy& chi);

/// Value of the one-shot game in which the informed player already knows the
/// state: the expanded matrix game whose rows are the I^K maps from states to
/// actions.  Used as an independent oracle against the recursion at delta = 0.
double one_shot_informed_value(const MatrixGameFamily& fam, const Belief& xi);

struct GameSolveResult {
  GridValueFunction v;
  double delta = 0.0;
  std::size_t iterations = 0;
  double final_gap = 0.0;
  // Reported (not certified) optimization error of the per-point strategy
  // search: ||G|| times the strategy lattice step.
  double lattice_tolerance = 0.0;
  // Set when local refinement wandered more than one lattice step from the
  // best lattice point anywhere; a sign the lattice was too coarse.
  bool lattice_too_coarse = false;
  double max_refine_move = 0.0;
};

/**
 * Discounted value surface of the Markov chain game by value iteration on
 * the belief grid:
 *
 *   V(xi) = sup_chi { (1-delta) r(xi,chi) + delta sum_i P(i|xi,chi) V(q_i M) }
 *
 * with q_i the Bayes posterior.  The sup is approximated by exhaustive
 * search over a per-state lattice of mixed actions (strategy_res steps per
 * simplex axis) followed by step-halving local refinement (5 rounds).  Each
 * sweep is projected onto its concave envelope: the true value surface is
 * concave, the projection is sup-norm nonexpansive (so the delta-contraction
 * survives), and it keeps the off-grid interpolation concave as the
 * recursion requires.
 */
GameSolveResult solve_game_value(const MatrixGameFamily& fam,
                                 const StochasticMatrix& m, double delta,
                                 GridPtr grid, std::size_t strategy_res = 20,
                                 double eps_stop = 1e-6,
                                 std::size_t iter_cap = 100000,
                                 const GridValueFunction* warm = nullptr);

struct GameTrajectoryPoint {
  double delta = 0.0;
  double phi = 0.0;  // V_delta at the invariant law
  double psi = 0.0;  // invariant-weighted vertex values
  std::size_t iterations = 0;
};

struct GameTrajectoryReport {
  std::vector<GameTrajectoryPoint> points;
  Belief pi;
  double tolerance = 0.0;
  double max_phi_increase = 0.0;
  std::size_t phi_violations = 0;
  double max_psi_decrease = 0.0;
  std::size_t psi_violations = 0;
  double bracket_lower = 0.0;  // psi at the largest delta
  double bracket_upper = 0.0;  // phi at the largest delta

  bool phi_non_increasing() const { return phi_violations == 0; }
  bool psi_non_decreasing() const { return psi_violations == 0; }
};

/// Phi/Psi trajectories of the game value across a delta ladder
/// (warm-started in ascending order), with the same monotonicity accounting
/// as the persuasion trajectories but a tolerance that also charges the
/// strategy lattice.
GameTrajectoryReport game_trajectories(const MatrixGameFamily& fam,
                                       const StochasticMatrix& m,
                                       std::vector<double> deltas, GridPtr grid,
                                       std::size_t strategy_res = 20,
                                       double eps_stop = 1e-6);

}  // namespace persuade
