#include "persuade/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace persuade {

namespace {

constexpr double kPivotEps = 1e-12;

}  // namespace

MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff) {
  const std::size_t m = payoff.size();
  if (m == 0) throw std::invalid_argument("solve_matrix_game: empty matrix");
  const std::size_t n = payoff[0].size();
  if (n == 0) throw std::invalid_argument("solve_matrix_game: empty matrix");
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& row : payoff) {
    if (row.size() != n) {
      throw std::invalid_argument("solve_matrix_game: ragged matrix");
    }
    for (double g : row) {
      if (!std::isfinite(g)) {
        throw std::invalid_argument("solve_matrix_game: non-finite entry");
      }
      lo = std::min(lo, g);
    }
  }
  // Shift so every entry is >= 1; the shifted value is then positive and the
  // normalised LP below is feasible and bounded.
  const double off = (lo < 1.0) ? (1.0 - lo) : 0.0;

  // Maximize 1'y subject to (G + off) y <= 1, y >= 0.  Tableau has the n
  // game columns, m slacks, and the rhs; the last row is the reduced-cost
  // row with -z stored in its rhs cell.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = payoff[i][j] + off;
    t[i][n + i] = 1.0;
    t[i][cols - 1] = 1.0;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = 1.0;

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  MatrixGameSolution sol;
  while (true) {
    // Bland: entering variable is the lowest index with positive reduced cost.
    std::size_t enter = cols - 1;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (t[m][j] > kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter == cols - 1) break;  // optimal

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > kPivotEps) {
        double ratio = t[i][cols - 1] / t[i][enter];
        if (ratio < best_ratio - kPivotEps ||
            (ratio < best_ratio + kPivotEps &&
             (leave == m || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) {
      throw std::runtime_error("solve_matrix_game: unbounded tableau");
    }

    const double piv = t[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
    ++sol.pivots;
    if (sol.pivots > 200u * (m + n) * (m + n) + 10000u) {
      throw std::runtime_error("solve_matrix_game: pivot cap exceeded");
    }
  }

  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) y[basis[i]] = std::max(0.0, t[i][cols - 1]);
  }
  double sum_y = 0.0;
  for (double v : y) sum_y += v;
  if (sum_y <= kPivotEps) {
    throw std::runtime_error("solve_matrix_game: degenerate optimum");
  }
  const double shifted_value = 1.0 / sum_y;

  sol.col_strategy.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) sol.col_strategy[j] = y[j] / sum_y;

  // Duals live in the reduced-cost cells of the slack columns.
  std::vector<double> u(m, 0.0);
  double sum_u = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    u[i] = std::max(0.0, -t[m][n + i]);
    sum_u += u[i];
  }
  if (sum_u <= kPivotEps) {
    throw std::runtime_error("solve_matrix_game: vanishing dual");
  }
  sol.row_strategy.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) sol.row_strategy[i] = u[i] / sum_u;

  sol.value = shifted_value - off;

  // Certify: what the row strategy guarantees vs. what the column strategy
  // concedes; optimality makes the two meet at the value.
  double floor = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += sol.row_strategy[i] * payoff[i][j];
    floor = std::min(floor, acc);
  }
  double ceiling = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += payoff[i][j] * sol.col_strategy[j];
    ceiling = std::max(ceiling, acc);
  }
  sol.duality_gap = ceiling - floor;
  return sol;
}

}  // namespace persuade
