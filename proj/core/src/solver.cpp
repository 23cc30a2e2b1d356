#include "persuade/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace persuade {

namespace {

// Shared per-solve scratch: u on the grid and the pushed lattice points.
struct Workspace {
  GridPtr grid;
  double delta;
  std::vector<double> u;
  std::vector<Belief> pushed;  // point(i) * M

  Workspace(const PersuasionInstance& inst, const StochasticMatrix& m,
            double delta_, GridPtr g)
      : grid(std::move(g)), delta(delta_) {
    if (inst.states() != m.size() || inst.states() != grid->states()) {
      throw std::invalid_argument("solver: instance, matrix and grid disagree on k");
    }
    if (delta < 0.0 || delta >= 1.0) {
      throw std::invalid_argument("solver: delta must lie in [0,1)");
    }
    const std::size_t n = grid->size();
    u.resize(n);
    pushed.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = inst.u(grid->point(i));
      pushed.push_back(push_belief(grid->point(i), m));
    }
  }

  std::vector<double> f_values(const GridValueFunction& v) const {
    const std::size_t n = grid->size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = (1.0 - delta) * u[i] + delta * v.interpolate(pushed[i]);
    }
    return f;
  }
};

GridValueFunction zero_function(const GridPtr& grid) {
  return GridValueFunction(grid, std::vector<double>(grid->size(), 0.0), true);
}

}  // namespace

Belief Split::barycenter() const {
  const std::size_t k = grid->states();
  std::vector<double> acc(k, 0.0);
  for (std::size_t s = 0; s < atoms.size(); ++s) {
    const Belief& p = grid->point(atoms[s]);
    for (std::size_t l = 0; l < k; ++l) acc[l] += weights[s] * p[l];
  }
  return Belief(std::move(acc));
}

GridValueFunction bellman_step(const GridValueFunction& v,
                               const PersuasionInstance& inst,
                               const StochasticMatrix& m, double delta) {
  Workspace ws(inst, m, delta, v.grid_ptr());
  return concave_envelope(v.grid_ptr(), ws.f_values(v));
}

SolveResult solve_discounted_value(const PersuasionInstance& inst,
                                   const StochasticMatrix& m, double delta,
                                   GridPtr grid, double eps_stop,
                                   std::size_t iter_cap,
                                   const GridValueFunction* warm) {
  if (eps_stop <= 0.0) {
    throw std::invalid_argument("solve_discounted_value: eps_stop must be positive");
  }
  Workspace ws(inst, m, delta, grid);
  GridValueFunction v = warm != nullptr ? *warm : zero_function(grid);
  const double stop = eps_stop * (1.0 - delta);
  for (std::size_t it = 1; it <= iter_cap; ++it) {
    GridValueFunction next = concave_envelope(grid, ws.f_values(v));
    double gap = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      gap = std::max(gap, std::abs(next[i] - v[i]));
    }
    v = std::move(next);
    if (gap <= stop) return SolveResult{std::move(v), it, gap};
  }
  throw std::runtime_error("solve_discounted_value: iteration cap exceeded");
}

SplitPolicy::SplitPolicy(const PersuasionInstance& inst, const StochasticMatrix& m,
                         double delta, const GridValueFunction& v)
    : grid_(v.grid_ptr()),
      f_env_(concave_envelope(grid_, Workspace(inst, m, delta, grid_).f_values(v))),
      cache_(grid_->size()),
      cached_(grid_->size(), false) {}

const Split& SplitPolicy::at_grid(std::size_t idx) const {
  if (idx >= grid_->size()) throw std::invalid_argument("SplitPolicy::at_grid: bad index");
  if (!cached_[idx]) {
    Support s = envelope_support(f_env_, grid_->point(idx));
    cache_[idx] = Split{std::move(s.atoms), std::move(s.weights), grid_};
    cached_[idx] = true;
  }
  return cache_[idx];
}

Split SplitPolicy::at(const Belief& xi) const {
  Support s = envelope_support(f_env_, xi);
  return Split{std::move(s.atoms), std::move(s.weights), grid_};
}

Split extract_optimal_split(const GridValueFunction& v,
                            const PersuasionInstance& inst,
                            const StochasticMatrix& m, double delta,
                            const Belief& xi, double tol_extract) {
  SplitPolicy policy(inst, m, delta, v);
  Split split = policy.at(xi);

  // Sanity of the returned split.
  if (split.barycenter().l1_distance(xi) > kMassTol) {
    throw std::runtime_error("extract_optimal_split: barycenter mismatch");
  }
  double achieved = 0.0;
  for (std::size_t s = 0; s < split.size(); ++s) {
    achieved += split.weights[s] * policy.objective()[split.atoms[s]];
  }
  if (achieved < v.interpolate(xi) - tol_extract) {
    throw std::runtime_error(
        "extract_optimal_split: achieved objective below value (unconverged v?)");
  }
  return split;
}

Belief PosteriorLaw::mean() const {
  const std::size_t k = grid->states();
  std::vector<double> acc(k, 0.0);
  for (const auto& [idx, p] : atoms) {
    const Belief& b = grid->point(idx);
    for (std::size_t l = 0; l < k; ++l) acc[l] += p * b[l];
  }
  return Belief(std::move(acc));
}

double PosteriorLaw::total_mass() const {
  double t = 0.0;
  for (const auto& [idx, p] : atoms) t += p;
  return t;
}

PosteriorLaw advance_law(const PosteriorLaw& law, const SplitPolicy& policy,
                         const StochasticMatrix& m, std::size_t support_cap) {
  std::map<std::size_t, double> acc;
  for (const auto& [idx, p] : law.atoms) {
    Belief prior = push_belief(law.grid->point(idx), m);
    Split s = policy.at(prior);
    for (std::size_t j = 0; j < s.size(); ++j) {
      acc[s.atoms[j]] += p * s.weights[j];
    }
  }
  PosteriorLaw next;
  next.stage = law.stage + 1;
  next.grid = law.grid;
  next.truncated = law.truncated;
  next.atoms.assign(acc.begin(), acc.end());
  if (next.atoms.size() > support_cap) {
    // Documented fallback: keep the heaviest atoms and renormalise.
    std::sort(next.atoms.begin(), next.atoms.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    next.atoms.resize(support_cap);
    std::sort(next.atoms.begin(), next.atoms.end());
    double total = 0.0;
    for (const auto& [idx, p] : next.atoms) total += p;
    for (auto& [idx, p] : next.atoms) p /= total;
    next.truncated = true;
  }
  return next;
}

PosteriorLaw posterior_law(const SplitPolicy& policy, const StochasticMatrix& m,
                           const Belief& q, std::size_t n,
                           std::size_t support_cap) {
  if (n == 0) throw std::invalid_argument("posterior_law: stage must be >= 1");
  PosteriorLaw law;
  law.stage = 1;
  law.grid = policy.grid_ptr();
  Split first = policy.at(q);
  for (std::size_t j = 0; j < first.size(); ++j) {
    law.atoms.emplace_back(first.atoms[j], first.weights[j]);
  }
  std::sort(law.atoms.begin(), law.atoms.end());
  for (std::size_t stage = 1; stage < n; ++stage) {
    law = advance_law(law, policy, m, support_cap);
  }
  return law;
}

PosteriorLaw posterior_law(const PersuasionInstance& inst,
                           const StochasticMatrix& m, double delta,
                           const Belief& q, std::size_t n, GridPtr grid,
                           double eps_stop, std::size_t support_cap) {
  SolveResult res = solve_discounted_value(inst, m, delta, grid, eps_stop);
  SplitPolicy policy(inst, m, delta, res.v);
  return posterior_law(policy, m, q, n, support_cap);
}

}  // namespace persuade
