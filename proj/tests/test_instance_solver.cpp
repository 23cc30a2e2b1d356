#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "persuade/instance.hpp"
#include "persuade/solver.hpp"

using namespace persuade;

TEST_CASE("built-in instance payoffs") {
  auto a = PersuasionInstance::named("appendixA");
  CHECK(a.states() == 2);
  CHECK(a.is_analytic());
  CHECK_THROWS_AS(a.tables(), std::logic_error);
  CHECK_THROWS_AS(a.best_action(Belief({0.25, 0.75})), std::logic_error);
  CHECK(a.u(Belief({0.25, 0.75})) == doctest::Approx(0.33125).epsilon(1e-12));
  CHECK(a.u(Belief({0.5, 0.5})) == doctest::Approx(1.025).epsilon(1e-12));
  CHECK(a.u(Belief::dirac(2, 0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a.u(Belief::dirac(2, 1)) == doctest::Approx(0.0).epsilon(1e-12));

  auto p = PersuasionInstance::named("periodic");
  CHECK(p.u(Belief({0.5, 0.5})) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(p.u(Belief({0.3, 0.7})) == doctest::Approx(0.21).epsilon(1e-12));

  CHECK_THROWS_AS(PersuasionInstance::named("nope"), std::invalid_argument);
}

TEST_CASE("receiver tie-breaking favours the sender, then the lowest index") {
  ActionTables t;
  t.sender = {{0.7, 0.3, 0.7}, {0.1, 0.3, 0.6}};
  t.receiver = {{1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}};
  auto inst = PersuasionInstance::from_tables("tiebreak", t);
  CHECK_FALSE(inst.is_analytic());

  // At the vertex, actions 0 and 2 tie for the receiver and then tie for
  // the sender too, so the lowest index wins.
  CHECK(inst.best_action(Belief::dirac(2, 0)) == 0);
  CHECK(inst.u(Belief::dirac(2, 0)) == doctest::Approx(0.7));

  // Actions 1 and 2 tie for the receiver; the sender strictly prefers 2.
  CHECK(inst.best_action(Belief::dirac(2, 1)) == 2);
  CHECK(inst.u(Belief::dirac(2, 1)) == doctest::Approx(0.6));

  // Unique receiver best response at the midpoint.
  CHECK(inst.best_action(Belief({0.5, 0.5})) == 2);
  CHECK(inst.u(Belief({0.5, 0.5})) == doctest::Approx(0.65));

  ActionTables bad = t;
  bad.sender[0][1] = -0.1;
  CHECK_THROWS_AS(PersuasionInstance::from_tables("neg", bad), std::invalid_argument);
}

TEST_CASE("closed-form benchmark value is flat at the invariant prior") {
  for (double delta : {0.0, 0.25, 0.5, 0.9}) {
    CHECK(appendix_a_value(delta, 0.25) == doctest::Approx(0.5125).epsilon(1e-12));
  }
}

TEST_CASE("solver reproduces the closed-form value on a medium grid") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 500);
  SolveResult res = solve_discounted_value(inst, m, 0.5, grid, 1e-7);
  CHECK(res.final_gap <= 1e-7 * 0.5);
  for (double p : {0.0, 0.1, 0.25, 0.5, 0.625, 0.9, 1.0}) {
    double got = res.v.interpolate(Belief({p, 1.0 - p}));
    CHECK(std::abs(got - appendix_a_value(0.5, p)) <= 5e-3);
  }
  CHECK(std::abs(res.v.interpolate(Belief({0.25, 0.75})) - 0.5125) <= 1e-3);

  CHECK_THROWS_AS(solve_discounted_value(inst, m, 1.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(solve_discounted_value(inst, m, -0.1, grid), std::invalid_argument);
}

TEST_CASE("splitting operator is a monotone delta-contraction") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 120);
  const double delta = 0.7;

  std::vector<double> zeros(grid->size(), 0.0);
  std::vector<double> bumpy(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    double p = grid->point(i)[0];
    bumpy[i] = 0.4 * std::sin(9.0 * p) + 0.2 * p;
  }
  GridValueFunction v(grid, zeros);
  GridValueFunction w(grid, bumpy);
  GridValueFunction tv = bellman_step(v, inst, m, delta);
  GridValueFunction tw = bellman_step(w, inst, m, delta);

  double dist = 0.0, tdist = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    dist = std::max(dist, std::abs(bumpy[i] - zeros[i]));
    tdist = std::max(tdist, std::abs(tw.values()[i] - tv.values()[i]));
  }
  CHECK(tdist <= delta * dist + 1e-9);

  // Monotone: raising the continuation raises the image.
  std::vector<double> higher(bumpy);
  for (double& x : higher) x += 0.3;
  GridValueFunction th = bellman_step(GridValueFunction(grid, higher), inst, m, delta);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    CHECK(th.values()[i] >= tw.values()[i] - 1e-12);
  }

  // From zero the image is the envelope of the scaled stage payoff.
  GridValueFunction cav_u = concave_envelope(grid, [&] {
    std::vector<double> uu(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) uu[i] = inst.u(grid->point(i));
    return uu;
  }());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    CHECK(tv.values()[i] ==
          doctest::Approx((1.0 - delta) * cav_u.values()[i]).epsilon(1e-10));
  }
}

TEST_CASE("split policy produces exact splittings that attain the value") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 200);
  const double delta = 0.5;
  SolveResult res = solve_discounted_value(inst, m, delta, grid, 1e-8);
  SplitPolicy policy(inst, m, delta, res.v);

  Belief pi({0.25, 0.75});
  Split s = policy.at(pi);
  REQUIRE(s.atoms.size() == s.weights.size());
  CHECK(s.size() <= 2);
  double mass = 0.0;
  for (double w : s.weights) {
    CHECK(w > 0.0);
    mass += w;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.barycenter().l1_distance(pi) < 1e-12);

  // The split attains the envelope objective, which matches the fixed point.
  double attained = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    attained += s.weights[a] * policy.objective().values()[s.atoms[a]];
  }
  CHECK(attained == doctest::Approx(policy.objective().interpolate(pi)).epsilon(1e-10));
  CHECK(std::abs(policy.objective().interpolate(pi) - res.v.interpolate(pi)) <= 1e-6);

  // Grid queries agree with the generic path and are cached consistently.
  std::size_t idx = grid->nearest_index(pi);
  const Split& sg = policy.at_grid(idx);
  CHECK(sg.barycenter().l1_distance(grid->point(idx)) < 1e-12);

  Split direct = extract_optimal_split(res.v, inst, m, delta, pi, 1e-5);
  CHECK(direct.barycenter().l1_distance(pi) < 1e-12);
}

TEST_CASE("posterior laws advance their mean along the chain") {
  auto inst = PersuasionInstance::named("appendixA");
  auto m = appendix_a_matrix();
  auto grid = make_grid(2, 200);
  Belief q({0.9, 0.1});
  PosteriorLaw law1 = posterior_law(inst, m, 0.5, q, 1, grid, 1e-7);
  CHECK(law1.stage == 1);
  CHECK(law1.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(law1.mean().l1_distance(q) < 1e-9);
  CHECK_FALSE(law1.truncated);

  PosteriorLaw law4 = posterior_law(inst, m, 0.5, q, 4, grid, 1e-7);
  CHECK(law4.stage == 4);
  CHECK(law4.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(law4.mean().l1_distance(push_belief(q, m, 3)) < 1e-9);

  // Incremental advance matches the direct construction.
  SolveResult res = solve_discounted_value(inst, m, 0.5, grid, 1e-7);
  SplitPolicy policy(inst, m, 0.5, res.v);
  PosteriorLaw step = posterior_law(policy, m, q, 1);
  for (int i = 0; i < 3; ++i) step = advance_law(step, policy, m);
  CHECK(step.stage == 4);
  CHECK(step.mean().l1_distance(law4.mean()) < 1e-9);
}
