#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "persuade/belief.hpp"
#include "persuade/grid.hpp"
#include "persuade/instance.hpp"
#include "persuade/markov.hpp"
#include "persuade/rng.hpp"
#include "persuade/solver.hpp"

namespace persuade {

/// What the sender observes at the start of a stage: the public state of the
/// erasure game (a belief, or one of the two amnesia states, both of which
/// stand for the invariant law), the stage number, and how many stages have
/// elapsed since the last erasure by chance (0 at such a stage; stage 1
/// starts at the chance-erasure state).
struct GammaObs {
  enum class Tag { belief, pistar, pistarstar };
  Tag tag = Tag::pistar;
  std::size_t grid_index = 0;  // valid when tag == belief (also set to the
                               // invariant point for the amnesia states)
  std::size_t stage = 1;
  std::size_t offset = 0;  // stages since the last chance erasure
};

/// A stage split handed to the simulator: grid-indexed atoms, cumulative
/// weights for sampling, and the split's expected stage payoff.
struct StageSplit {
  const std::vector<std::size_t>* atoms = nullptr;
  const std::vector<double>* cum = nullptr;  // cumulative weights, back() ~ 1
  double ubar = 0.0;                         // sum_s w_s u(atom_s)
};

class SenderStrategy {
 public:
  virtual ~SenderStrategy() = default;
  virtual std::string name() const = 0;
  virtual StageSplit act(const GammaObs& obs) = 0;
  virtual bool truncation_flagged() const { return false; }
};

class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;
  virtual std::string name() const = 0;
  virtual void reset() {}
  /// Decides whether the adversary erases on the transition into `stage`
  /// (consulted only when chance did not erase).
  virtual bool erase(std::size_t stage, SplitMix64& rng) = 0;
};

/// Splits with the stationary optimal policy for discount 1-x everywhere;
/// at the adversary-amnesia state with offset i it re-splits the invariant
/// law directly into the stage-(i+1) posterior law of that policy.
class ThetaStarSender : public SenderStrategy {
 public:
  ThetaStarSender(const PersuasionInstance& inst, const StochasticMatrix& m,
                  double x, GridPtr grid, double eps_stop = 1e-6);
  std::string name() const override { return "theta_star"; }
  StageSplit act(const GammaObs& obs) override;
  bool truncation_flagged() const override { return truncated_; }

 private:
  struct CachedSplit {
    std::vector<std::size_t> atoms;
    std::vector<double> cum;
    double ubar = 0.0;
  };
  const CachedSplit& grid_split(std::size_t idx);
  const CachedSplit& law_split(std::size_t n);  // the stage-n posterior law

  GridPtr grid_;
  std::vector<double> u_;
  std::shared_ptr<SplitPolicy> policy_;
  StochasticMatrix m_;
  Belief pi_;
  CachedSplit pi_split_;  // exact split of the invariant law
  std::vector<std::unique_ptr<CachedSplit>> by_point_;
  std::vector<std::unique_ptr<CachedSplit>> laws_;  // laws_[n-1] = stage-n law
  PosteriorLaw frontier_;  // last computed law (for incremental extension)
  std::size_t pi_index_ = 0;
  bool truncated_ = false;
};

/// Splits to the one-shot concavification support at every belief (the
/// discount-0 policy), regardless of erasures.
class MyopicSender : public SenderStrategy {
 public:
  MyopicSender(const PersuasionInstance& inst, const StochasticMatrix& m,
               GridPtr grid, double eps_stop = 1e-6);
  std::string name() const override { return "myopic"; }
  StageSplit act(const GammaObs& obs) override;

 private:
  struct CachedSplit {
    std::vector<std::size_t> atoms;
    std::vector<double> cum;
    double ubar = 0.0;
  };
  const CachedSplit& grid_split(std::size_t idx);

  GridPtr grid_;
  std::vector<double> u_;
  std::shared_ptr<SplitPolicy> policy_;
  CachedSplit pi_split_;  // exact split of the invariant law
  std::vector<std::unique_ptr<CachedSplit>> by_point_;
  std::size_t pi_index_ = 0;
};

/// Never reveals anything: the single-atom split at the current belief.
class NoRevealSender : public SenderStrategy {
 public:
  NoRevealSender(const PersuasionInstance& inst, GridPtr grid,
                 const StochasticMatrix& m);
  std::string name() const override { return "no_reveal"; }
  StageSplit act(const GammaObs& obs) override;

 private:
  GridPtr grid_;
  std::vector<double> u_;
  std::vector<std::vector<std::size_t>> atom_;  // one per grid point
  std::vector<double> one_{1.0};
  std::size_t pi_index_ = 0;
};

class ConstantAdversary : public AdversaryStrategy {
 public:
  explicit ConstantAdversary(bool always) : always_(always) {}
  std::string name() const override { return always_ ? "const1" : "const0"; }
  bool erase(std::size_t, SplitMix64&) override { return always_; }

 private:
  bool always_;
};

class IidAdversary : public AdversaryStrategy {
 public:
  explicit IidAdversary(double beta);
  std::string name() const override;
  bool erase(std::size_t, SplitMix64& rng) override { return rng.bernoulli(beta_); }

 private:
  double beta_;
};

class PeriodicAdversary : public AdversaryStrategy {
 public:
  explicit PeriodicAdversary(std::size_t period);
  std::string name() const override;
  bool erase(std::size_t stage, SplitMix64&) override {
    return stage % period_ == 0;
  }

 private:
  std::size_t period_;
};

/// The calibrated i.i.d. eraser: total per-stage erasure probability
/// (chance plus adversary) becomes exactly y.  Requires x < y <= 1.
std::unique_ptr<AdversaryStrategy> tau_y(double x, double y);

struct CesaroEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t trials = 0;
};

struct GammaRunStats {
  CesaroEstimate cesaro;  // per-trial N-stage Cesaro means
  double mean_A = 0.0;    // mean of the pre-last-erasure block average
  double mean_B = 0.0;    // mean of the tail block average
  double stderr_B = 0.0;
  double eq9_bound = 0.0;  // ((1-x)/x) ||u|| / N
  bool eq9_pass = false;
  std::vector<std::uint64_t> kappa_histogram;  // complete chance-gap counts
  std::uint64_t z_count = 0;    // erasure indicators among stages 2..N
  std::uint64_t z_samples = 0;
  double mean_erasures = 0.0;   // chance erasures per trial (stages 2..N)
  double mean_last_erasure = 0.0;
  std::size_t projection_events = 0;  // projections beyond the rounding bound
  double max_projection = 0.0;
  std::uint64_t stages = 0;
  std::size_t aborted_trials = 0;
  bool truncation_flagged = false;
};

/// Simulates `trials` independent N-stage plays of the erasure game and
/// aggregates payoff and erasure statistics.  Per-trial RNG substreams make
/// the aggregate independent of scheduling.
GammaRunStats run_gamma(const PersuasionInstance& inst, const StochasticMatrix& m,
                        double x, SenderStrategy& sender,
                        AdversaryStrategy& adversary, std::size_t N,
                        std::size_t trials, std::uint64_t seed, GridPtr grid);

struct RandomDurationResult {
  CesaroEstimate estimate;  // total (undiscounted) payoff per trial
  double mean_duration = 0.0;
  std::size_t projection_events = 0;
  double max_projection = 0.0;
  bool projection_error = false;  // events exceeded 1% of simulated stages
};

/// Total-payoff estimate of the geometric-duration episode: play the split
/// policy from q for Y ~ Geometric(x) stages, scoring the realized posterior
/// each stage.
RandomDurationResult random_duration_payoff(const PersuasionInstance& inst,
                                            const StochasticMatrix& m,
                                            const Belief& q,
                                            const SplitPolicy& policy, double x,
                                            std::size_t trials,
                                            std::uint64_t seed);

/// Explicit finite-horizon guarantee deficit for the erasure-resistant
/// sender: (u_inf/x) (2/N^{1/4} + 2 e^{-2 sqrt(N)} (2x+3) + (1-x)/N).
/// Requires (N-1)x - N^{3/4} >= 0.
double proposition1_bound(double x, std::size_t N, double u_inf);

/// Explicit finite-horizon excess for any sender against the calibrated
/// eraser: (1/(y N^{1/4}) + 2 e^{-2 sqrt(N)}) u_inf + ((1-y)/y) u_inf / N.
double proposition2_bound(double y, std::size_t N, double u_inf);

/// The documented adversary panel: const0, const1, i.i.d. beta for beta in
/// {0.1, ..., 0.9}, and the period-5 eraser.
std::vector<std::unique_ptr<AdversaryStrategy>> adversary_panel();

/// The documented sender panel: theta_star (tuned to x), myopic, no-reveal.
std::vector<std::unique_ptr<SenderStrategy>> sender_panel(
    const PersuasionInstance& inst, const StochasticMatrix& m, double x,
    GridPtr grid, double eps_stop = 1e-6);

}  // namespace persuade
