#include "persuade/trajectories.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace persuade {

namespace {

// Grid Lipschitz estimate of u in the l1 metric, from adjacent lattice pairs.
double grid_lipschitz(const PersuasionInstance& inst, const SimplexGrid& g) {
  const double m = static_cast<double>(g.resolution());
  double lip = 0.0;
  if (g.states() == 2) {
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      double d = std::abs(inst.u(g.point(i + 1)) - inst.u(g.point(i)));
      lip = std::max(lip, d * m / 2.0);  // adjacent points are 2/m apart in l1
    }
    return lip;
  }
  const std::size_t mm = g.resolution();
  for (std::size_t a = 0; a <= mm; ++a) {
    for (std::size_t b = 0; a + b <= mm; ++b) {
      double u0 = inst.u(g.point(g.index_of(a, b)));
      if (a + b < mm) {
        lip = std::max(lip, std::abs(inst.u(g.point(g.index_of(a + 1, b))) - u0) * m / 2.0);
        lip = std::max(lip, std::abs(inst.u(g.point(g.index_of(a, b + 1))) - u0) * m / 2.0);
      }
      if (a > 0 && a + b <= mm && b < mm) {
        lip = std::max(lip, std::abs(inst.u(g.point(g.index_of(a - 1, b + 1))) - u0) * m / 2.0);
      }
    }
  }
  return lip;
}

std::vector<double> sorted_unique(std::vector<double> deltas) {
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  if (deltas.empty()) throw std::invalid_argument("trajectories: empty delta list");
  for (double d : deltas) {
    if (d < 0.0 || d >= 1.0) {
      throw std::invalid_argument("trajectories: delta outside [0,1)");
    }
  }
  return deltas;
}

double psi_of(const GridValueFunction& v, const Belief& pi) {
  const SimplexGrid& g = v.grid();
  double acc = 0.0;
  for (std::size_t l = 0; l < g.states(); ++l) {
    acc += pi[l] * v[g.vertex_index(l)];
  }
  return acc;
}

}  // namespace

double trajectory_tolerance(const PersuasionInstance& inst, const SimplexGrid& grid,
                            double eps_stop) {
  double lip = grid_lipschitz(inst, grid);
  double lattice = 2.0 * lip / static_cast<double>(grid.resolution());
  return 2.0 * (eps_stop + lattice);
}

TrajectoryReport phi_psi(const PersuasionInstance& inst, const StochasticMatrix& m,
                         std::vector<double> deltas, GridPtr grid,
                         double eps_stop) {
  deltas = sorted_unique(std::move(deltas));
  TrajectoryReport rep{.points = {},
                       .pi = invariant_distribution(m),
                       .tolerance = trajectory_tolerance(inst, *grid, eps_stop)};
  const GridValueFunction* warm = nullptr;
  SolveResult res{GridValueFunction(grid, std::vector<double>(grid->size(), 0.0), true)};
  for (double d : deltas) {
    res = solve_discounted_value(inst, m, d, grid, eps_stop, 1000000, warm);
    warm = &res.v;
    rep.points.push_back(TrajectoryPoint{d, res.v.interpolate(rep.pi),
                                         psi_of(res.v, rep.pi), res.iterations});
  }
  for (std::size_t i = 0; i + 1 < rep.points.size(); ++i) {
    double dphi = rep.points[i + 1].phi - rep.points[i].phi;  // should be <= 0
    double dpsi = rep.points[i].psi - rep.points[i + 1].psi;  // should be <= 0
    rep.max_phi_increase = std::max(rep.max_phi_increase, dphi);
    rep.max_psi_decrease = std::max(rep.max_psi_decrease, dpsi);
    if (dphi > rep.tolerance) ++rep.phi_violations;
    if (dpsi > rep.tolerance) ++rep.psi_violations;
  }
  for (const TrajectoryPoint& p : rep.points) {
    rep.max_bracket_violation =
        std::max(rep.max_bracket_violation, p.psi - p.phi);
  }
  return rep;
}

MeetResult meet_check(const TrajectoryReport& report, std::optional<double> tol_in) {
  double tol = tol_in.value_or(report.tolerance);
  MeetResult out;
  std::size_t first = report.points.size();
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    if (report.points[i].phi - report.points[i].psi <= tol) {
      first = i;
      break;
    }
  }
  if (first == report.points.size()) return out;
  out.triggered = true;
  out.delta0 = report.points[first].delta;
  const double phi0 = report.points[first].phi;
  const double psi0 = report.points[first].psi;
  for (std::size_t i = first; i < report.points.size(); ++i) {
    out.max_deviation = std::max({out.max_deviation,
                                  std::abs(report.points[i].phi - phi0),
                                  std::abs(report.points[i].psi - psi0)});
  }
  out.constant_after = out.max_deviation <= tol;
  return out;
}

AsymptoticEstimate asymptotic_bracket(const PersuasionInstance& inst,
                                      const StochasticMatrix& m, double delta,
                                      GridPtr grid, double eps_stop) {
  if (!m.ergodic()) {
    throw std::invalid_argument("asymptotic_bracket: chain must be ergodic");
  }
  SolveResult res = solve_discounted_value(inst, m, delta, grid, eps_stop);
  Belief pi = invariant_distribution(m);
  AsymptoticEstimate est;
  est.upper = res.v.interpolate(pi);
  est.lower = psi_of(res.v, pi);
  est.estimate = 0.5 * (est.lower + est.upper);
  return est;
}

BoundCheck shift_bound_check(const PersuasionInstance& inst,
                             const StochasticMatrix& m, double delta, GridPtr grid,
                             double eps_stop, std::size_t n_steps) {
  if (delta <= 0.0 || delta >= 1.0) {
    throw std::invalid_argument("shift_bound_check: delta must lie in (0,1)");
  }
  if (n_steps == 0) throw std::invalid_argument("shift_bound_check: n_steps >= 1");
  SolveResult res = solve_discounted_value(inst, m, delta, grid, eps_stop);
  double u_inf = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    u_inf = std::max(u_inf, std::abs(inst.u(grid->point(i))));
  }
  BoundCheck chk;
  chk.bound = static_cast<double>(n_steps) * (1.0 - delta) * u_inf / delta;
  chk.slack = trajectory_tolerance(inst, *grid, eps_stop);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    Belief shifted = push_belief(grid->point(i), m, n_steps);
    double diff = std::abs(res.v[i] - res.v.interpolate(shifted));
    double excess = diff - chk.bound;
    chk.max_excess = std::max(chk.max_excess, excess);
    if (excess > chk.slack) ++chk.violations;
  }
  chk.pass = chk.violations == 0;
  return chk;
}

BoundCheck lipschitz_near_pi_check(const PersuasionInstance& inst,
                                   const StochasticMatrix& m, double delta,
                                   GridPtr grid, double eps_stop) {
  SolveResult res = solve_discounted_value(inst, m, delta, grid, eps_stop);
  Belief pi = invariant_distribution(m);
  double cstar = 1.0;
  for (std::size_t l = 0; l < pi.size(); ++l) cstar = std::min(cstar, pi[l]);
  if (cstar <= 0.0) {
    throw std::invalid_argument("lipschitz_near_pi_check: invariant law has a zero entry");
  }
  double u_inf = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    u_inf = std::max(u_inf, std::abs(inst.u(grid->point(i))));
  }
  std::vector<std::size_t> ball;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    if (grid->point(i).l1_distance(pi) < cstar / 2.0) ball.push_back(i);
  }
  BoundCheck chk;
  chk.bound = 2.0 * u_inf / cstar;  // the Lipschitz constant being audited
  chk.slack = trajectory_tolerance(inst, *grid, eps_stop);
  for (std::size_t a = 0; a < ball.size(); ++a) {
    for (std::size_t b = a + 1; b < ball.size(); ++b) {
      double d = grid->point(ball[a]).l1_distance(grid->point(ball[b]));
      double excess = std::abs(res.v[ball[a]] - res.v[ball[b]]) - chk.bound * d;
      chk.max_excess = std::max(chk.max_excess, excess);
      if (excess > chk.slack) ++chk.violations;
    }
  }
  chk.pass = chk.violations == 0;
  return chk;
}

RateReport rate_check(const PersuasionInstance& inst, const StochasticMatrix& m,
                      std::vector<double> deltas, GridPtr grid, double eps_stop,
                      std::optional<double> bracket_delta) {
  deltas = sorted_unique(std::move(deltas));
  if (!m.ergodic()) {
    throw std::invalid_argument("rate_check: chain must be ergodic");
  }
  Belief pi = invariant_distribution(m);
  double cstar = 1.0;
  for (std::size_t l = 0; l < pi.size(); ++l) cstar = std::min(cstar, pi[l]);
  for (double d : deltas) {
    if (d <= 1.0 - cstar / 2.0) {
      throw std::invalid_argument(
          "rate_check: every delta must exceed 1 - c*/2 for the rate regime");
    }
  }
  double dstar = bracket_delta.value_or(deltas.back());

  RateReport rep;
  const GridValueFunction* warm = nullptr;
  SolveResult res{GridValueFunction(grid, std::vector<double>(grid->size(), 0.0), true)};
  std::vector<GridValueFunction> solved;
  solved.reserve(deltas.size());
  for (double d : deltas) {
    res = solve_discounted_value(inst, m, d, grid, eps_stop, 1000000, warm);
    solved.push_back(res.v);
    warm = &solved.back();
  }
  AsymptoticEstimate est;
  auto it = std::find(deltas.begin(), deltas.end(), dstar);
  if (it != deltas.end()) {
    const GridValueFunction& v = solved[static_cast<std::size_t>(it - deltas.begin())];
    est.upper = v.interpolate(pi);
    est.lower = psi_of(v, pi);
    est.estimate = 0.5 * (est.lower + est.upper);
  } else {
    est = asymptotic_bracket(inst, m, dstar, grid, eps_stop);
  }
  rep.vinf_estimate = est.estimate;
  rep.bracket_width = est.width();
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    double supgap = 0.0;
    for (std::size_t j = 0; j < grid->size(); ++j) {
      supgap = std::max(supgap, std::abs(solved[i][j] - rep.vinf_estimate));
    }
    double denom = (1.0 - deltas[i]) * std::log2(1.0 / (1.0 - deltas[i]));
    rep.points.push_back(RatePoint{deltas[i], supgap, supgap / denom});
  }
  std::vector<double> ratios;
  for (const RatePoint& p : rep.points) ratios.push_back(p.ratio);
  std::sort(ratios.begin(), ratios.end());
  rep.median_ratio = ratios[ratios.size() / 2];
  rep.max_ratio = ratios.back();
  rep.bounded = rep.max_ratio <= 3.0 * rep.median_ratio;
  return rep;
}

WeightedFamily shrunken_vertex_family(const StochasticMatrix& m, double margin) {
  const std::size_t k = m.size();
  double min_entry = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) min_entry = std::min(min_entry, m(i, j));
  }
  if (min_entry <= 0.0) {
    throw std::invalid_argument(
        "shrunken_vertex_family: needs a strictly positive matrix");
  }
  // xi_i = (1-s) e_i + s * uniform stays a covering family as long as every
  // row entry is at least s/k.
  double s = margin * static_cast<double>(k) * min_entry;
  s = std::min(s, 0.999);
  WeightedFamily fam;
  Belief pi = invariant_distribution(m);
  std::vector<double> gam(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> w(k, s / static_cast<double>(k));
    w[i] += 1.0 - s;
    fam.xis.push_back(Belief(std::move(w)));
    gam[i] = (pi[i] - s / static_cast<double>(k)) / (1.0 - s);
  }
  fam.gammas = std::move(gam);
  return fam;
}

std::string validate_family(const WeightedFamily& family, const StochasticMatrix& m) {
  const std::size_t k = m.size();
  if (family.xis.size() != k || family.gammas.size() != k) {
    return "family must have exactly k beliefs and k weights";
  }
  Eigen::MatrixXd X(k, k);  // column i holds xi_i
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      X(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(i)) = family.xis[i][l];
    }
  }
  if (std::abs(X.determinant()) <= 1e-9) {
    return "beliefs are not affinely independent";
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(X);
  for (std::size_t r = 0; r < k; ++r) {
    Eigen::VectorXd row(k);
    for (std::size_t j = 0; j < k; ++j) {
      row(static_cast<Eigen::Index>(j)) = m(r, j);
    }
    Eigen::VectorXd lam = lu.solve(row);
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      if (lam(i) < -1e-9) {
        return "row " + std::to_string(r) + " of the matrix escapes the family hull";
      }
    }
  }
  Belief pi = invariant_distribution(m);
  std::vector<double> recon(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    if (family.gammas[i] < -1e-9) return "negative weight";
    for (std::size_t l = 0; l < k; ++l) recon[l] += family.gammas[i] * family.xis[i][l];
  }
  double dist = 0.0;
  for (std::size_t l = 0; l < k; ++l) dist += std::abs(recon[l] - pi[l]);
  if (dist > 1e-8) return "weights do not reproduce the invariant law";
  return "";
}

std::vector<double> weighted_trajectory(const PersuasionInstance& inst,
                                        const StochasticMatrix& m,
                                        std::vector<double> deltas,
                                        const WeightedFamily& family, GridPtr grid,
                                        double eps_stop) {
  deltas = sorted_unique(std::move(deltas));
  std::string err = validate_family(family, m);
  if (!err.empty()) throw std::invalid_argument("weighted_trajectory: " + err);
  std::vector<double> out;
  const GridValueFunction* warm = nullptr;
  SolveResult res{GridValueFunction(grid, std::vector<double>(grid->size(), 0.0), true)};
  for (double d : deltas) {
    res = solve_discounted_value(inst, m, d, grid, eps_stop, 1000000, warm);
    warm = &res.v;
    double acc = 0.0;
    for (std::size_t i = 0; i < family.xis.size(); ++i) {
      acc += family.gammas[i] * res.v.interpolate(family.xis[i]);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace persuade
