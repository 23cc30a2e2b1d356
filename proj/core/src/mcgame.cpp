#include "persuade/mcgame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace persuade {

namespace {

constexpr double kProbFloor = 1e-12;

// All compositions of `res` lattice steps over `dim` actions, as mixed actions.
std::vector<std::vector<double>> action_lattice(std::size_t dim, std::size_t res) {
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> comp(dim, 0);
  const double step = 1.0 / static_cast<double>(res);
  // Odometer over the first dim-1 coordinates; the last takes the remainder.
  while (true) {
    std::size_t used = 0;
    for (std::size_t a = 0; a + 1 < dim; ++a) used += comp[a];
    if (used <= res) {
      std::vector<double> pt(dim, 0.0);
      for (std::size_t a = 0; a + 1 < dim; ++a) pt[a] = step * static_cast<double>(comp[a]);
      pt[dim - 1] = step * static_cast<double>(res - used);
      out.push_back(std::move(pt));
    }
    std::size_t axis = 0;
    while (axis + 1 < dim) {
      if (++comp[axis] <= res) break;
      comp[axis] = 0;
      ++axis;
    }
    if (axis + 1 >= dim) break;
    if (dim == 1) break;
  }
  if (dim == 1) out.assign(1, std::vector<double>{1.0});
  return out;
}

struct SweepContext {
  const MatrixGameFamily* fam;
  const StochasticMatrix* m;
  double delta;
  const GridValueFunction* v;  // previous iterate (null when delta == 0)
  bool identity_chain;
};

// Objective of the recursion at xi for one candidate strategy (rows view).
double evaluate(const SweepContext& ctx, const Belief& xi,
                const std::vector<const std::vector<double>*>& rows) {
  const MatrixGameFamily& fam = *ctx.fam;
  const std::size_t K = fam.states();
  const std::size_t I = fam.rows();
  const std::size_t J = fam.cols();

  double r = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < J; ++j) {
    double acc = 0.0;
    for (std::size_t l = 0; l < K; ++l) {
      const std::vector<double>& chi = *rows[l];
      double inner = 0.0;
      for (std::size_t i = 0; i < I; ++i) inner += chi[i] * fam.payoff(l, i, j);
      acc += xi[l] * inner;
    }
    r = std::min(r, acc);
  }
  if (ctx.delta == 0.0) return r;

  double cont = 0.0;
  std::vector<double> post(K);
  for (std::size_t i = 0; i < I; ++i) {
    double p = 0.0;
    for (std::size_t l = 0; l < K; ++l) p += xi[l] * (*rows[l])[i];
    if (p <= kProbFloor) continue;
    for (std::size_t l = 0; l < K; ++l) post[l] = xi[l] * (*rows[l])[i] / p;
    if (!ctx.identity_chain) {
      std::vector<double> pushed(K, 0.0);
      for (std::size_t l = 0; l < K; ++l) {
        for (std::size_t l2 = 0; l2 < K; ++l2) pushed[l2] += post[l] * (*ctx.m)(l, l2);
      }
      post.swap(pushed);
    }
    cont += p * ctx.v->interpolate(Belief(post));
  }
  return (1.0 - ctx.delta) * r + ctx.delta * cont;
}

}  // namespace

MatrixGameFamily::MatrixGameFamily(std::vector<std::vector<std::vector<double>>> payoffs)
    : payoffs_(std::move(payoffs)) {
  if (payoffs_.empty()) throw std::invalid_argument("MatrixGameFamily: no states");
  const std::size_t I = payoffs_[0].size();
  if (I == 0) throw std::invalid_argument("MatrixGameFamily: no rows");
  const std::size_t J = payoffs_[0][0].size();
  if (J == 0) throw std::invalid_argument("MatrixGameFamily: no columns");
  for (const auto& g : payoffs_) {
    if (g.size() != I) {
      throw std::invalid_argument("MatrixGameFamily: row counts differ across states");
    }
    for (const auto& row : g) {
      if (row.size() != J) {
        throw std::invalid_argument("MatrixGameFamily: column counts differ");
      }
      for (double e : row) {
        if (!std::isfinite(e) || e < 0.0) {
          throw std::invalid_argument("MatrixGameFamily: entries must be finite and >= 0");
        }
        max_abs_ = std::max(max_abs_, e);
      }
    }
  }
}

MatrixGameFamily MatrixGameFamily::example2() {
  return MatrixGameFamily({{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, 1.0}}});
}

StageStrategy::StageStrategy(std::vector<std::vector<double>> rows)
    : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("StageStrategy: no states");
  const std::size_t I = rows_[0].size();
  if (I == 0) throw std::invalid_argument("StageStrategy: no actions");
  for (const auto& row : rows_) {
    if (row.size() != I) throw std::invalid_argument("StageStrategy: ragged rows");
    double s = 0.0;
    for (double p : row) {
      if (!(p >= -1e-12)) throw std::invalid_argument("StageStrategy: negative entry");
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-9) {
      throw std::invalid_argument("StageStrategy: row does not sum to 1");
    }
  }
}

double nonrevealing_value(const MatrixGameFamily& fam, const Belief& xi) {
  if (xi.size() != fam.states()) {
    throw std::invalid_argument("nonrevealing_value: dimension mismatch");
  }
  std::vector<std::vector<double>> avg(fam.rows(), std::vector<double>(fam.cols(), 0.0));
  for (std::size_t l = 0; l < fam.states(); ++l) {
    for (std::size_t i = 0; i < fam.rows(); ++i) {
      for (std::size_t j = 0; j < fam.cols(); ++j) {
        avg[i][j] += xi[l] * fam.payoff(l, i, j);
      }
    }
  }
  return solve_matrix_game(avg).value;
}

PosteriorResult posterior_after_action(const Belief& xi, const StageStrategy& chi,
                                       std::size_t action) {
  if (chi.states() != xi.size()) {
    throw std::invalid_argument("posterior_after_action: dimension mismatch");
  }
  if (action >= chi.actions()) {
    throw std::invalid_argument("posterior_after_action: action out of range");
  }
  double p = 0.0;
  for (std::size_t l = 0; l < xi.size(); ++l) p += xi[l] * chi.prob(l, action);
  if (p <= kProbFloor) return PosteriorResult{xi, 0.0};
  std::vector<double> post(xi.size());
  for (std::size_t l = 0; l < xi.size(); ++l) post[l] = xi[l] * chi.prob(l, action) / p;
  return PosteriorResult{Belief(std::move(post)), p};
}

double stage_reward(const MatrixGameFamily& fam, const Belief& xi,
                    const StageStrategy& chi) {
  if (chi.states() != fam.states() || chi.actions() != fam.rows() ||
      xi.size() != fam.states()) {
    throw std::invalid_argument("stage_reward: dimension mismatch");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < fam.cols(); ++j) {
    double acc = 0.0;
    for (std::size_t l = 0; l < fam.states(); ++l) {
      double inner = 0.0;
      for (std::size_t i = 0; i < fam.rows(); ++i) {
        inner += chi.prob(l, i) * fam.payoff(l, i, j);
      }
      acc += xi[l] * inner;
    }
    best = std::min(best, acc);
  }
  return best;
}

double one_shot_informed_value(const MatrixGameFamily& fam, const Belief& xi) {
  if (xi.size() != fam.states()) {
    throw std::invalid_argument("one_shot_informed_value: dimension mismatch");
  }
  const std::size_t K = fam.states();
  const std::size_t I = fam.rows();
  const std::size_t J = fam.cols();
  std::size_t nmaps = 1;
  for (std::size_t l = 0; l < K; ++l) {
    if (nmaps > 100000 / I) {
      throw std::invalid_argument("one_shot_informed_value: expanded game too large");
    }
    nmaps *= I;
  }
  // Row per map (state -> action); expected payoff is affine in xi.
  std::vector<std::vector<double>> expanded(nmaps, std::vector<double>(J, 0.0));
  for (std::size_t code = 0; code < nmaps; ++code) {
    std::size_t c = code;
    for (std::size_t l = 0; l < K; ++l) {
      const std::size_t i = c % I;
      c /= I;
      for (std::size_t j = 0; j < J; ++j) {
        expanded[code][j] += xi[l] * fam.payoff(l, i, j);
      }
    }
  }
  return solve_matrix_game(expanded).value;
}

GameSolveResult solve_game_value(const MatrixGameFamily& fam,
                                 const StochasticMatrix& m, double delta,
                                 GridPtr grid, std::size_t strategy_res,
                                 double eps_stop, std::size_t iter_cap,
                                 const GridValueFunction* warm) {
  if (m.size() != fam.states() || grid->states() != fam.states()) {
    throw std::invalid_argument("solve_game_value: dimension mismatch");
  }
  if (delta < 0.0 || delta >= 1.0) {
    throw std::invalid_argument("solve_game_value: delta must lie in [0,1)");
  }
  if (strategy_res == 0) {
    throw std::invalid_argument("solve_game_value: strategy_res must be positive");
  }

  const std::size_t K = fam.states();
  const std::size_t I = fam.rows();
  const std::vector<std::vector<double>> lattice = action_lattice(I, strategy_res);
  const double lattice_step = 1.0 / static_cast<double>(strategy_res);

  bool identity = true;
  for (std::size_t i = 0; i < K && identity; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      if (std::abs(m(i, j) - (i == j ? 1.0 : 0.0)) > 1e-15) {
        identity = false;
        break;
      }
    }
  }

  GameSolveResult out{
      warm != nullptr
          ? *warm
          : GridValueFunction(grid, std::vector<double>(grid->size(), 0.0), true)};
  out.delta = delta;
  out.lattice_tolerance = fam.max_abs() * lattice_step;

  std::vector<std::size_t> combo(K, 0);
  std::vector<const std::vector<double>*> rows(K);
  std::vector<std::vector<double>> refined(K);

  for (std::size_t iter = 0; iter < iter_cap; ++iter) {
    SweepContext ctx{&fam, &m, delta, &out.v, identity};
    std::vector<double> swept(grid->size(), 0.0);
    for (std::size_t g = 0; g < grid->size(); ++g) {
      const Belief& xi = grid->point(g);

      // Exhaustive scan of the per-state action lattice.
      double best = -std::numeric_limits<double>::infinity();
      std::vector<std::size_t> best_combo(K, 0);
      std::fill(combo.begin(), combo.end(), 0);
      while (true) {
        for (std::size_t l = 0; l < K; ++l) rows[l] = &lattice[combo[l]];
        double obj = evaluate(ctx, xi, rows);
        if (obj > best) {
          best = obj;
          best_combo = combo;
        }
        std::size_t axis = 0;
        while (axis < K && ++combo[axis] == lattice.size()) {
          combo[axis] = 0;
          ++axis;
        }
        if (axis == K) break;
      }

      // Step-halving hill climb around the incumbent.
      for (std::size_t l = 0; l < K; ++l) refined[l] = lattice[best_combo[l]];
      for (std::size_t round = 0; round < 5; ++round) {
        const double h = lattice_step / static_cast<double>(2u << round);
        for (std::size_t move = 0; move < 32; ++move) {
          double gain = 0.0;
          std::size_t bl = 0, bf = 0, bt = 0;
          for (std::size_t l = 0; l < K; ++l) {
            for (std::size_t f = 0; f < I; ++f) {
              if (refined[l][f] < h) continue;
              for (std::size_t t = 0; t < I; ++t) {
                if (t == f) continue;
                refined[l][f] -= h;
                refined[l][t] += h;
                for (std::size_t l2 = 0; l2 < K; ++l2) rows[l2] = &refined[l2];
                double obj = evaluate(ctx, xi, rows);
                refined[l][f] += h;
                refined[l][t] -= h;
                if (obj > best + gain + 1e-15) {
                  gain = obj - best;
                  bl = l;
                  bf = f;
                  bt = t;
                }
              }
            }
          }
          if (gain <= 0.0) break;
          refined[bl][bf] -= h;
          refined[bl][bt] += h;
          best += gain;
        }
      }
      for (std::size_t l = 0; l < K; ++l) {
        for (std::size_t i = 0; i < I; ++i) {
          double d = std::abs(refined[l][i] - lattice[best_combo[l]][i]);
          out.max_refine_move = std::max(out.max_refine_move, d);
        }
      }
      swept[g] = best;
    }

    GridValueFunction next = concave_envelope(grid, swept);
    double gap = 0.0;
    for (std::size_t g = 0; g < grid->size(); ++g) {
      gap = std::max(gap, std::abs(next[g] - out.v[g]));
    }
    out.v = std::move(next);
    out.iterations = iter + 1;
    out.final_gap = gap;
    if (gap <= eps_stop * (1.0 - delta)) {
      out.lattice_too_coarse = out.max_refine_move > lattice_step + 1e-12;
      return out;
    }
  }
  throw std::runtime_error("solve_game_value: iteration cap exceeded");
}

GameTrajectoryReport game_trajectories(const MatrixGameFamily& fam,
                                       const StochasticMatrix& m,
                                       std::vector<double> deltas, GridPtr grid,
                                       std::size_t strategy_res, double eps_stop) {
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  if (deltas.empty()) {
    throw std::invalid_argument("game_trajectories: empty delta list");
  }

  GameTrajectoryReport rep{.points = {}, .pi = invariant_distribution(m)};

  // Tolerance: solver stop + grid interpolation + strategy lattice, doubled
  // as for the persuasion trajectories.
  double lip = 0.0;
  for (std::size_t g = 0; g + 1 < grid->size(); ++g) {
    double d = grid->point(g).l1_distance(grid->point(g + 1));
    if (d > 0) {
      lip = std::max(lip, std::abs(nonrevealing_value(fam, grid->point(g + 1)) -
                                   nonrevealing_value(fam, grid->point(g))) /
                              d);
    }
  }
  rep.tolerance = 2.0 * (eps_stop + 2.0 * lip / static_cast<double>(grid->resolution()) +
                         fam.max_abs() / static_cast<double>(strategy_res));

  GameSolveResult res{GridValueFunction(grid, std::vector<double>(grid->size(), 0.0), true)};
  const GridValueFunction* warm = nullptr;
  for (double d : deltas) {
    res = solve_game_value(fam, m, d, grid, strategy_res, eps_stop, 100000, warm);
    warm = &res.v;
    double phi = res.v.interpolate(rep.pi);
    double psi = 0.0;
    for (std::size_t l = 0; l < grid->states(); ++l) {
      psi += rep.pi[l] * res.v[grid->vertex_index(l)];
    }
    rep.points.push_back(GameTrajectoryPoint{d, phi, psi, res.iterations});
  }
  for (std::size_t i = 0; i + 1 < rep.points.size(); ++i) {
    double dphi = rep.points[i + 1].phi - rep.points[i].phi;
    double dpsi = rep.points[i].psi - rep.points[i + 1].psi;
    rep.max_phi_increase = std::max(rep.max_phi_increase, dphi);
    rep.max_psi_decrease = std::max(rep.max_psi_decrease, dpsi);
    if (dphi > rep.tolerance) ++rep.phi_violations;
    if (dpsi > rep.tolerance) ++rep.psi_violations;
  }
  rep.bracket_lower = rep.points.back().psi;
  rep.bracket_upper = rep.points.back().phi;
  return rep;
}

}  // namespace persuade
