#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "persuade/instance.hpp"
#include "persuade/trajectories.hpp"

using namespace persuade;

TEST_CASE("benchmark trajectories: flat phi, climbing psi") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 400);
  TrajectoryReport rep = phi_psi(inst, m, {0.0, 0.5, 0.9}, grid, 1e-7);

  REQUIRE(rep.points.size() == 3);
  CHECK(rep.pi[0] == doctest::Approx(0.25).epsilon(1e-10));
  for (const auto& pt : rep.points) {
    CHECK(std::abs(pt.phi - 0.5125) <= 2e-3);
    CHECK(pt.psi <= pt.phi + rep.tolerance);
    CHECK(pt.iterations >= 1);
  }
  // psi(0) averages the vertex payoffs under pi: 0.25 * 0.5 + 0.75 * 0.
  CHECK(std::abs(rep.points[0].psi - 0.125) <= 1e-3);
  // The climb is far larger than the documented tolerance.
  CHECK(rep.points[1].psi > rep.points[0].psi + 2.0 * rep.tolerance);
  CHECK(rep.points[2].psi > rep.points[1].psi + 2.0 * rep.tolerance);
  CHECK(rep.phi_non_increasing());
  CHECK(rep.psi_non_decreasing());
  CHECK(rep.max_bracket_violation <= rep.tolerance);
}

TEST_CASE("two-cycle chain pins both trajectories exactly") {
  auto inst = PersuasionInstance::named("periodic");
  auto m = periodic_matrix();
  auto grid = make_grid(2, 200);
  TrajectoryReport rep = phi_psi(inst, m, {0.0, 0.3, 0.8}, grid, 1e-8);
  for (const auto& pt : rep.points) {
    CHECK(std::abs(pt.phi - 0.25) <= 1e-3);
    CHECK(std::abs(pt.psi) <= 1e-9);
  }
  CHECK(rep.phi_non_increasing());
  CHECK(rep.psi_non_decreasing());
}

TEST_CASE("meet check detects a meeting point and constancy after it") {
  TrajectoryReport rep{{{0.0, 0.50, 0.10, 1},
                        {0.3, 0.50, 0.30, 1},
                        {0.6, 0.50, 0.4999, 1},
                        {0.9, 0.5001, 0.4998, 1}},
                       Belief({0.5, 0.5}),
                       1e-3};
  MeetResult met = meet_check(rep);
  CHECK(met.triggered);
  CHECK(met.delta0 == doctest::Approx(0.6));
  CHECK(met.constant_after);
  CHECK(met.max_deviation <= rep.tolerance);

  // A drift after the meeting point is flagged.
  rep.points[3] = {0.9, 0.48, 0.47, 1};
  MeetResult drift = meet_check(rep);
  CHECK(drift.triggered);
  CHECK_FALSE(drift.constant_after);

  // No meeting point at all.
  rep.points = {{0.0, 0.5, 0.1, 1}, {0.9, 0.5, 0.2, 1}};
  CHECK_FALSE(meet_check(rep).triggered);
}

TEST_CASE("asymptotic bracket straddles the benchmark limit") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 400);
  AsymptoticEstimate est = asymptotic_bracket(inst, m, 0.9, grid, 1e-7);
  CHECK(est.lower <= 0.5125 + 1e-3);
  CHECK(est.upper >= 0.5125 - 1e-3);
  CHECK(est.width() >= -1e-9);
  CHECK(est.estimate == doctest::Approx(0.5 * (est.lower + est.upper)).epsilon(1e-12));

  CHECK_THROWS_AS(asymptotic_bracket(inst, periodic_matrix(), 0.9, grid),
                  std::invalid_argument);
}

TEST_CASE("shift and lipschitz bounds hold on the benchmark") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 400);
  for (double delta : {0.5, 0.9}) {
    BoundCheck shift = shift_bound_check(inst, m, delta, grid, 1e-7, 1);
    CHECK(shift.pass);
    CHECK(shift.violations == 0);
    CHECK(shift.bound > 0.0);

    BoundCheck lip = lipschitz_near_pi_check(inst, m, delta, grid, 1e-7);
    CHECK(lip.pass);
    CHECK(lip.violations == 0);
  }
}

TEST_CASE("shrunken vertex family reproduces the invariant law") {
  auto m = appendix_a_matrix();
  WeightedFamily fam = shrunken_vertex_family(m);
  CHECK(validate_family(fam, m).empty());
  REQUIRE(fam.xis.size() == 2);
  REQUIRE(fam.gammas.size() == 2);
  Belief pi = invariant_distribution(m);
  double mean0 = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < fam.xis.size(); ++i) {
    CHECK(fam.gammas[i] >= 0.0);
    mass += fam.gammas[i];
    mean0 += fam.gammas[i] * fam.xis[i][0];
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mean0 == doctest::Approx(pi[0]).epsilon(1e-10));

  // Breaking the reproduction property is reported, not silently accepted.
  WeightedFamily broken = fam;
  broken.gammas[0] += 0.2;
  broken.gammas[1] -= 0.2;
  CHECK_FALSE(validate_family(broken, m).empty());

  // The weighted trajectory inherits the monotone climb.
  auto inst = PersuasionInstance::named("appendixA");
  auto grid = make_grid(2, 300);
  std::vector<double> vals =
      weighted_trajectory(inst, m, {0.0, 0.4, 0.8}, fam, grid, 1e-7);
  REQUIRE(vals.size() == 3);
  double tol = trajectory_tolerance(inst, *grid, 1e-7);
  CHECK(vals[1] >= vals[0] - tol);
  CHECK(vals[2] >= vals[1] - tol);
}

TEST_CASE("rate audit needs an ergodic chain and near-one deltas") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 300);

  CHECK_THROWS_AS(
      rate_check(PersuasionInstance::named("periodic"), periodic_matrix(),
                 {0.9, 0.95}, grid),
      std::invalid_argument);
  // c* = 0.25, so deltas must exceed 1 - c*/2 = 0.875.
  CHECK_THROWS_AS(rate_check(inst, m, {0.5, 0.9}, grid), std::invalid_argument);

  RateReport rep = rate_check(inst, m, {0.9, 0.95, 0.975}, grid, 1e-7);
  REQUIRE(rep.points.size() == 3);
  // The limit estimate is a bracket midpoint, so it inherits half the
  // bracket width at the probe discount.
  CHECK(std::abs(rep.vinf_estimate - 0.5125) <= 0.5 * rep.bracket_width + 1e-6);
  CHECK(rep.bracket_width <= 0.02);
  for (const auto& pt : rep.points) {
    CHECK(pt.supgap >= 0.0);
    CHECK(pt.ratio >= 0.0);
    CHECK(std::isfinite(pt.ratio));
  }
  CHECK(rep.median_ratio <= rep.max_ratio + 1e-15);
}
