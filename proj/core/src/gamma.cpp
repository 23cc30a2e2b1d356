#include "persuade/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace persuade {

namespace {

struct SplitLike {
  std::vector<std::size_t> atoms;
  std::vector<double> cum;
  double ubar = 0.0;
};

// atoms + cumulative weights + expected payoff out of a split.
template <typename Cached>
Cached convert_split(const Split& s, const std::vector<double>& u) {
  Cached c;
  c.atoms = s.atoms;
  c.cum.resize(s.weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    c.ubar += s.weights[i] * u[s.atoms[i]];
    acc += s.weights[i];
    c.cum[i] = acc;
  }
  return c;
}

template <typename Cached>
Cached convert_law(const PosteriorLaw& law, const std::vector<double>& u) {
  Cached c;
  c.atoms.reserve(law.atoms.size());
  c.cum.reserve(law.atoms.size());
  double acc = 0.0;
  const double total = law.total_mass();
  for (const auto& [idx, mass] : law.atoms) {
    const double w = mass / total;
    c.atoms.push_back(idx);
    c.ubar += w * u[idx];
    acc += w;
    c.cum.push_back(acc);
  }
  return c;
}

std::vector<double> grid_utilities(const PersuasionInstance& inst,
                                   const SimplexGrid& g) {
  std::vector<double> u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = inst.u(g.point(i));
  return u;
}

double max_abs_utility(const std::vector<double>& u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

// l1 barycenter deviation of a cached split from a target point.
double barycenter_error(const std::vector<std::size_t>& atoms,
                        const std::vector<double>& cum, const SimplexGrid& g,
                        const Belief& target) {
  const std::size_t k = g.states();
  std::vector<double> bar(k, 0.0);
  double prev = 0.0;
  for (std::size_t s = 0; s < atoms.size(); ++s) {
    const double w = cum[s] - prev;
    prev = cum[s];
    const Belief& p = g.point(atoms[s]);
    for (std::size_t l = 0; l < k; ++l) bar[l] += w * p[l];
  }
  double d = 0.0;
  for (std::size_t l = 0; l < k; ++l) d += std::abs(bar[l] - target[l]);
  return d;
}

// Lazy cache of grid-projected one-step pushes of grid atoms.
class PushCache {
 public:
  PushCache(GridPtr grid, const StochasticMatrix& m)
      : grid_(std::move(grid)), m_(&m), index_(grid_->size(), kUnset),
        dist_(grid_->size(), 0.0) {}

  std::pair<std::size_t, double> operator()(std::size_t atom) {
    if (index_[atom] == kUnset) {
      const Belief pushed = push_belief(grid_->point(atom), *m_);
      index_[atom] = grid_->nearest_index(pushed);
      dist_[atom] = grid_->projection_distance(pushed);
    }
    return {index_[atom], dist_[atom]};
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  GridPtr grid_;
  const StochasticMatrix* m_;
  std::vector<std::size_t> index_;
  std::vector<double> dist_;
};

}  // namespace

ThetaStarSender::ThetaStarSender(const PersuasionInstance& inst,
                                 const StochasticMatrix& m, double x,
                                 GridPtr grid, double eps_stop)
    : grid_(std::move(grid)), u_(grid_utilities(inst, *grid_)), m_(m),
      pi_(invariant_distribution(m)) {
  if (!(x > 0.0) || x > 1.0) {
    throw std::invalid_argument("ThetaStarSender: x must lie in (0,1]");
  }
  SolveResult res = solve_discounted_value(inst, m, 1.0 - x, grid_, eps_stop);
  policy_ = std::make_shared<SplitPolicy>(inst, m, 1.0 - x, res.v);
  by_point_.resize(grid_->size());
  pi_index_ = grid_->nearest_index(pi_);
  pi_split_ = convert_split<CachedSplit>(policy_->at(pi_), u_);
}

const ThetaStarSender::CachedSplit& ThetaStarSender::grid_split(std::size_t idx) {
  if (!by_point_[idx]) {
    by_point_[idx] = std::make_unique<CachedSplit>(
        convert_split<CachedSplit>(policy_->at_grid(idx), u_));
  }
  return *by_point_[idx];
}

const ThetaStarSender::CachedSplit& ThetaStarSender::law_split(std::size_t n) {
  while (laws_.size() < n) {
    if (laws_.empty()) {
      frontier_ = posterior_law(*policy_, m_, pi_, 1);
    } else {
      frontier_ = advance_law(frontier_, *policy_, m_);
    }
    truncated_ = truncated_ || frontier_.truncated;
    laws_.push_back(
        std::make_unique<CachedSplit>(convert_law<CachedSplit>(frontier_, u_)));
    const CachedSplit& c = *laws_.back();
    if (barycenter_error(c.atoms, c.cum, *grid_, pi_) > 1e-6) {
      throw std::runtime_error("ThetaStarSender: posterior law drifted from pi");
    }
  }
  return *laws_[n - 1];
}

StageSplit ThetaStarSender::act(const GammaObs& obs) {
  const CachedSplit* c = nullptr;
  switch (obs.tag) {
    case GammaObs::Tag::belief:
      c = &grid_split(obs.grid_index);
      break;
    case GammaObs::Tag::pistar:
      c = &pi_split_;
      break;
    case GammaObs::Tag::pistarstar:
      c = &law_split(obs.offset + 1);
      break;
  }
  return StageSplit{&c->atoms, &c->cum, c->ubar};
}

MyopicSender::MyopicSender(const PersuasionInstance& inst,
                           const StochasticMatrix& m, GridPtr grid,
                           double eps_stop)
    : grid_(std::move(grid)), u_(grid_utilities(inst, *grid_)) {
  SolveResult res = solve_discounted_value(inst, m, 0.0, grid_, eps_stop);
  policy_ = std::make_shared<SplitPolicy>(inst, m, 0.0, res.v);
  by_point_.resize(grid_->size());
  const Belief pi = invariant_distribution(m);
  pi_index_ = grid_->nearest_index(pi);
  pi_split_ = convert_split<CachedSplit>(policy_->at(pi), u_);
}

const MyopicSender::CachedSplit& MyopicSender::grid_split(std::size_t idx) {
  if (!by_point_[idx]) {
    by_point_[idx] = std::make_unique<CachedSplit>(
        convert_split<CachedSplit>(policy_->at_grid(idx), u_));
  }
  return *by_point_[idx];
}

StageSplit MyopicSender::act(const GammaObs& obs) {
  const CachedSplit& c = obs.tag == GammaObs::Tag::belief
                             ? grid_split(obs.grid_index)
                             : pi_split_;
  return StageSplit{&c.atoms, &c.cum, c.ubar};
}

NoRevealSender::NoRevealSender(const PersuasionInstance& inst, GridPtr grid,
                               const StochasticMatrix& m)
    : grid_(std::move(grid)), u_(grid_utilities(inst, *grid_)) {
  atom_.resize(grid_->size());
  for (std::size_t i = 0; i < grid_->size(); ++i) atom_[i] = {i};
  pi_index_ = grid_->nearest_index(invariant_distribution(m));
}

StageSplit NoRevealSender::act(const GammaObs& obs) {
  // Amnesia states are served with the grid point nearest the invariant law;
  // the snap distance is covered by the simulator's projection allowance.
  const std::size_t idx =
      obs.tag == GammaObs::Tag::belief ? obs.grid_index : pi_index_;
  return StageSplit{&atom_[idx], &one_, u_[idx]};
}

IidAdversary::IidAdversary(double beta) : beta_(beta) {
  if (beta < 0.0 || beta > 1.0) {
    throw std::invalid_argument("IidAdversary: beta must lie in [0,1]");
  }
}

std::string IidAdversary::name() const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "iid_beta=%g", beta_);
  return buf;
}

PeriodicAdversary::PeriodicAdversary(std::size_t period) : period_(period) {
  if (period == 0) throw std::invalid_argument("PeriodicAdversary: period >= 1");
}

std::string PeriodicAdversary::name() const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "periodic_%zu", period_);
  return buf;
}

namespace {

class TauYAdversary : public IidAdversary {
 public:
  TauYAdversary(double beta, double y) : IidAdversary(beta), y_(y) {}
  std::string name() const override {
    char buf[48];
    std::snprintf(buf, sizeof buf, "tau_y=%g", y_);
    return buf;
  }

 private:
  double y_;
};

}  // namespace

std::unique_ptr<AdversaryStrategy> tau_y(double x, double y) {
  if (!(x > 0.0) || x >= 1.0) {
    throw std::invalid_argument("tau_y: x must lie in (0,1)");
  }
  if (!(y > x) || y > 1.0) {
    throw std::invalid_argument("tau_y: need x < y <= 1");
  }
  return std::make_unique<TauYAdversary>((y - x) / (1.0 - x), y);
}

GammaRunStats run_gamma(const PersuasionInstance& inst, const StochasticMatrix& m,
                        double x, SenderStrategy& sender,
                        AdversaryStrategy& adversary, std::size_t N,
                        std::size_t trials, std::uint64_t seed, GridPtr grid) {
  if (!(x > 0.0) || x >= 1.0) {
    throw std::invalid_argument("run_gamma: x must lie in (0,1)");
  }
  if (N == 0 || trials == 0) {
    throw std::invalid_argument("run_gamma: N and trials must be positive");
  }

  const std::vector<double> u = grid_utilities(inst, *grid);
  const double u_inf = max_abs_utility(u);
  const Belief pi = invariant_distribution(m);
  const std::size_t pi_index = grid->nearest_index(pi);
  const double proj_threshold =
      1.5 * static_cast<double>(grid->states() - 1) /
      static_cast<double>(grid->resolution());
  // Amnesia-state splits may snap pi to the grid; allow for that in the
  // barycenter validation.
  const double snap_allowance = grid->projection_distance(pi) + 1e-7;

  PushCache push(grid, m);
  GammaRunStats out;
  out.eq9_bound = (1.0 - x) / x * u_inf / static_cast<double>(N);

  std::unordered_set<const void*> validated;
  auto valid_split = [&](const StageSplit& s, const Belief& target,
                         bool amnesia) {
    if (validated.count(s.atoms)) return true;
    const double err = barycenter_error(*s.atoms, *s.cum, *grid, target);
    if (err > (amnesia ? snap_allowance : 1e-7)) return false;
    validated.insert(s.atoms);
    return true;
  };

  double sum_c = 0.0, sumsq_c = 0.0;
  double sum_a = 0.0;
  double sum_b = 0.0, sumsq_b = 0.0;
  double sum_T = 0.0, sum_ell = 0.0;
  std::size_t done = 0;
  std::vector<std::size_t> trial_gaps;  // merged only when the trial completes
  std::uint64_t trial_z_count = 0, trial_z_samples = 0;

  for (std::size_t trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(substream_seed(seed, trial));
    adversary.reset();
    trial_gaps.clear();
    trial_z_count = 0;
    trial_z_samples = 0;

    GammaObs obs;  // stage 1 opens at the chance-erasure state
    obs.tag = GammaObs::Tag::pistar;
    obs.grid_index = pi_index;
    obs.stage = 1;
    obs.offset = 0;

    double payoff = 0.0;
    double payoff_at_last_erasure = 0.0;
    std::size_t last_erasure = 1;
    std::size_t prev_erasure = 1;
    std::size_t chance_count = 0;
    bool aborted = false;

    for (std::size_t n = 1; n <= N; ++n) {
      obs.stage = n;
      const StageSplit split = sender.act(obs);
      const bool amnesia = obs.tag != GammaObs::Tag::belief;
      const Belief& target =
          amnesia ? pi : grid->point(obs.grid_index);
      if (!valid_split(split, target, amnesia)) {
        aborted = true;
        break;
      }
      payoff += split.ubar;
      if (obs.tag == GammaObs::Tag::pistar) {
        payoff_at_last_erasure = payoff;
        last_erasure = n;
      }
      if (n == N) break;

      if (rng.uniform01() < x) {
        obs.tag = GammaObs::Tag::pistar;
        obs.grid_index = pi_index;
        obs.offset = 0;
        trial_gaps.push_back((n + 1) - prev_erasure);
        prev_erasure = n + 1;
        ++chance_count;
        ++trial_z_count;
      } else if (adversary.erase(n + 1, rng)) {
        obs.tag = GammaObs::Tag::pistarstar;
        obs.grid_index = pi_index;
        ++obs.offset;
        ++trial_z_count;
      } else {
        const std::size_t s = rng.from_cumulative(*split.cum);
        const auto [idx, dist] = push((*split.atoms)[s]);
        if (dist > proj_threshold) ++out.projection_events;
        out.max_projection = std::max(out.max_projection, dist);
        obs.tag = GammaObs::Tag::belief;
        obs.grid_index = idx;
        ++obs.offset;
      }
      ++trial_z_samples;
    }

    if (aborted) {
      ++out.aborted_trials;
      continue;
    }
    for (std::size_t gap : trial_gaps) {
      if (gap >= out.kappa_histogram.size()) {
        out.kappa_histogram.resize(gap + 1, 0);
      }
      ++out.kappa_histogram[gap];
    }
    out.z_count += trial_z_count;
    out.z_samples += trial_z_samples;
    out.stages += N;
    const double c = payoff / static_cast<double>(N);
    const double a = payoff_at_last_erasure / static_cast<double>(N);
    const double b = c - a;
    sum_c += c;
    sumsq_c += c * c;
    sum_a += a;
    sum_b += b;
    sumsq_b += b * b;
    sum_T += static_cast<double>(chance_count);
    sum_ell += static_cast<double>(last_erasure);
    ++done;
  }

  if (done == 0) {
    throw std::runtime_error("run_gamma: every trial aborted on an invalid split");
  }
  const double dn = static_cast<double>(done);
  out.cesaro.trials = done;
  out.cesaro.mean = sum_c / dn;
  out.mean_A = sum_a / dn;
  out.mean_B = sum_b / dn;
  out.mean_erasures = sum_T / dn;
  out.mean_last_erasure = sum_ell / dn;
  if (done > 1) {
    const double var_c = std::max(0.0, (sumsq_c - dn * out.cesaro.mean * out.cesaro.mean) / (dn - 1.0));
    out.cesaro.stderr_ = std::sqrt(var_c / dn);
    const double var_b = std::max(0.0, (sumsq_b - dn * out.mean_B * out.mean_B) / (dn - 1.0));
    out.stderr_B = std::sqrt(var_b / dn);
  }
  out.eq9_pass = out.mean_B <= out.eq9_bound + 3.0 * out.stderr_B;
  out.truncation_flagged = sender.truncation_flagged();
  return out;
}

RandomDurationResult random_duration_payoff(const PersuasionInstance& inst,
                                            const StochasticMatrix& m,
                                            const Belief& q,
                                            const SplitPolicy& policy, double x,
                                            std::size_t trials,
                                            std::uint64_t seed) {
  if (!(x > 0.0) || x > 1.0) {
    throw std::invalid_argument("random_duration_payoff: x must lie in (0,1]");
  }
  if (trials == 0) {
    throw std::invalid_argument("random_duration_payoff: trials must be positive");
  }
  GridPtr grid = policy.grid_ptr();
  const std::vector<double> u = grid_utilities(inst, *grid);
  const double proj_threshold =
      1.5 * static_cast<double>(grid->states() - 1) /
      static_cast<double>(grid->resolution());

  // Starting split: exact at q (off-grid priors split exactly through the
  // envelope facets); grid splits cached by index.
  const SplitLike start = convert_split<SplitLike>(policy.at(q), u);
  std::vector<std::unique_ptr<SplitLike>> cache(grid->size());
  auto split_at = [&](std::size_t idx) -> const SplitLike& {
    if (!cache[idx]) {
      cache[idx] =
          std::make_unique<SplitLike>(convert_split<SplitLike>(policy.at_grid(idx), u));
    }
    return *cache[idx];
  };
  PushCache push(grid, m);

  RandomDurationResult out;
  double sum = 0.0, sumsq = 0.0, durations = 0.0;
  std::uint64_t stages = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(substream_seed(seed, trial));
    const std::uint64_t Y = rng.geometric(x);
    durations += static_cast<double>(Y);
    double total = 0.0;
    const SplitLike* cur = &start;
    for (std::uint64_t n = 1; n <= Y; ++n) {
      const std::size_t s = rng.from_cumulative(cur->cum);
      const std::size_t atom = cur->atoms[s];
      total += u[atom];
      ++stages;
      if (n == Y) break;
      const auto [idx, dist] = push(atom);
      if (dist > proj_threshold) ++out.projection_events;
      out.max_projection = std::max(out.max_projection, dist);
      cur = &split_at(idx);
    }
    sum += total;
    sumsq += total * total;
  }
  const double dn = static_cast<double>(trials);
  out.estimate.trials = trials;
  out.estimate.mean = sum / dn;
  if (trials > 1) {
    const double var = std::max(0.0, (sumsq - dn * out.estimate.mean * out.estimate.mean) / (dn - 1.0));
    out.estimate.stderr_ = std::sqrt(var / dn);
  }
  out.mean_duration = durations / dn;
  out.projection_error =
      static_cast<double>(out.projection_events) > 0.01 * static_cast<double>(stages);
  return out;
}

double proposition1_bound(double x, std::size_t N, double u_inf) {
  if (!(x > 0.0) || x >= 1.0) {
    throw std::invalid_argument("proposition1_bound: x must lie in (0,1)");
  }
  const double dN = static_cast<double>(N);
  if ((dN - 1.0) * x - std::pow(dN, 0.75) < 0.0) {
    throw std::invalid_argument("proposition1_bound: N too small for the guarantee");
  }
  return u_inf / x *
         (2.0 / std::pow(dN, 0.25) +
          2.0 * std::exp(-2.0 * std::sqrt(dN)) * (2.0 * x + 3.0) +
          (1.0 - x) / dN);
}

double proposition2_bound(double y, std::size_t N, double u_inf) {
  if (!(y > 0.0) || y > 1.0) {
    throw std::invalid_argument("proposition2_bound: y must lie in (0,1]");
  }
  if (N == 0) throw std::invalid_argument("proposition2_bound: N must be positive");
  const double dN = static_cast<double>(N);
  return (1.0 / (y * std::pow(dN, 0.25)) + 2.0 * std::exp(-2.0 * std::sqrt(dN))) * u_inf +
         (1.0 - y) / y * u_inf / dN;
}

std::vector<std::unique_ptr<AdversaryStrategy>> adversary_panel() {
  std::vector<std::unique_ptr<AdversaryStrategy>> panel;
  panel.push_back(std::make_unique<ConstantAdversary>(false));
  panel.push_back(std::make_unique<ConstantAdversary>(true));
  for (int b = 1; b <= 9; ++b) {
    panel.push_back(std::make_unique<IidAdversary>(0.1 * b));
  }
  panel.push_back(std::make_unique<PeriodicAdversary>(5));
  return panel;
}

std::vector<std::unique_ptr<SenderStrategy>> sender_panel(
    const PersuasionInstance& inst, const StochasticMatrix& m, double x,
    GridPtr grid, double eps_stop) {
  std::vector<std::unique_ptr<SenderStrategy>> panel;
  panel.push_back(std::make_unique<ThetaStarSender>(inst, m, x, grid, eps_stop));
  panel.push_back(std::make_unique<MyopicSender>(inst, m, grid, eps_stop));
  panel.push_back(std::make_unique<NoRevealSender>(inst, grid, m));
  return panel;
}

}  // namespace persuade
