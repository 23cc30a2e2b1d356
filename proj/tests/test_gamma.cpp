#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "doctest.h"
#include "persuade/gamma.hpp"

using namespace persuade;

TEST_CASE("substreams decorrelate and reproduce") {
  CHECK(substream_seed(42, 7) == substream_seed(42, 7));
  CHECK(substream_seed(42, 7) != substream_seed(42, 8));
  CHECK(substream_seed(42, 7) != substream_seed(43, 7));
  SplitMix64 a(5u), b(5u);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("explicit deficit and excess bounds") {
  // Frozen reference values for the two closed-form expressions.
  CHECK(proposition1_bound(0.5, 10000, 1.0) == doctest::Approx(0.4001).epsilon(1e-6));
  CHECK(proposition2_bound(0.6, 10000, 1.0) ==
        doctest::Approx(0.16673333333).epsilon(1e-6));
  // Bounds scale linearly in the payoff norm.
  CHECK(proposition1_bound(0.5, 10000, 2.0) ==
        doctest::Approx(2.0 * proposition1_bound(0.5, 10000, 1.0)).epsilon(1e-12));
  // The deficit bound needs (N-1) x to clear N^{3/4}.
  CHECK_THROWS_AS(proposition1_bound(0.1, 10, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(proposition2_bound(0.0, 100, 1.0), std::invalid_argument);
}

TEST_CASE("calibrated eraser needs headroom") {
  auto tau = tau_y(0.2, 0.6);
  CHECK(tau != nullptr);
  CHECK_THROWS_AS(tau_y(0.6, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(tau_y(0.6, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(tau_y(0.2, 1.5), std::invalid_argument);
}

TEST_CASE("no-reveal play against constant erasure is deterministic") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 400);
  NoRevealSender sender(inst, grid, m);
  ConstantAdversary always(true);
  GammaRunStats stats = run_gamma(inst, m, 0.5, sender, always, 300, 40, 7u, grid);

  // Every stage restarts from the invariant law and pays u there exactly.
  CHECK(stats.cesaro.mean == doctest::Approx(0.33125).epsilon(1e-12));
  CHECK(stats.cesaro.stderr_ <= 1e-14);
  CHECK(stats.aborted_trials == 0);
  CHECK(stats.stages == 300u * 40u);
}

TEST_CASE("erasure bookkeeping is complete") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 400);
  NoRevealSender sender(inst, grid, m);
  ConstantAdversary never(false);
  const std::size_t N = 200, trials = 50;
  GammaRunStats stats = run_gamma(inst, m, 0.5, sender, never, N, trials, 11u, grid);

  CHECK(stats.aborted_trials == 0);
  // One erasure indicator per stage 2..N per trial; with a passive
  // adversary only chance erases, at rate x.
  CHECK(stats.z_samples == trials * (N - 1));
  CHECK(static_cast<double>(stats.z_count) / static_cast<double>(stats.z_samples) ==
        doctest::Approx(0.5).epsilon(0.1));
  // The Cesaro mean decomposes into the two block averages.
  CHECK(stats.cesaro.mean ==
        doctest::Approx(stats.mean_A + stats.mean_B).epsilon(1e-12));
  CHECK(stats.eq9_bound == doctest::Approx((0.5 / 0.5) * 1.0452 / N).epsilon(0.01));
  // Completed chance gaps are geometric-ish; at least some were observed.
  std::uint64_t gaps = 0;
  for (std::uint64_t c : stats.kappa_histogram) gaps += c;
  CHECK(gaps > 0);
  CHECK(stats.mean_erasures > 0.0);
}

TEST_CASE("tuned sender survives a small smoke run") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 400);
  ThetaStarSender sender(inst, m, 0.5, grid, 1e-6);
  CHECK(sender.name() == "theta_star");
  IidAdversary iid(0.3);
  GammaRunStats stats = run_gamma(inst, m, 0.5, sender, iid, 400, 60, 13u, grid);
  CHECK(stats.aborted_trials == 0);
  CHECK_FALSE(stats.truncation_flagged);
  CHECK(stats.cesaro.mean > 0.3);  // far above the worst payoff, below the peak
  CHECK(stats.cesaro.mean < 0.6);
  CHECK(stats.max_projection <= 1.5 / 400.0 + 1e-12);
  CHECK(stats.projection_events == 0);
}

TEST_CASE("geometric-duration payoff matches the discounted value") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 2000);
  const double x = 0.9;  // short episodes keep this test quick
  SolveResult res = solve_discounted_value(inst, m, 1.0 - x, grid, 1e-8);
  SplitPolicy policy(inst, m, 1.0 - x, res.v);
  Belief pi({0.25, 0.75});
  RandomDurationResult out =
      random_duration_payoff(inst, m, pi, policy, x, 20000, 17u);
  CHECK(out.mean_duration == doctest::Approx(1.0 / x).epsilon(0.03));
  CHECK_FALSE(out.projection_error);
  double target = 0.5125 / x;
  CHECK(std::abs(out.estimate.mean - target) <= 3.0 * out.estimate.stderr_ + 1e-3);
}
