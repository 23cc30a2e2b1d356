#pragma once

#include <cstddef>
#include <vector>

namespace persuade {

/// Solution of a finite zero-sum matrix game.  `payoff[i][j]` is what the
/// row player (maximizer) receives when row i meets column j.
struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  // Certified optimality residual: the column player's best response against
  // `row_strategy` minus the row player's worst column under `col_strategy`.
  // Always >= 0 up to rounding; small values certify both strategies.
  double duality_gap = 0.0;
  std::size_t pivots = 0;
};

/// Dense simplex (Bland's rule, so termination is guaranteed) on the
/// standard normalisation of the game LP.  Works for any rectangular
/// payoff matrix with finite entries.
MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff);

}  // namespace persuade
