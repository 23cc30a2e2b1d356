#include <stdexcept>

#include "doctest.h"
#include "persuade/instance.hpp"
#include "persuade/markov.hpp"

using namespace persuade;

TEST_CASE("benchmark chain is ergodic with the expected invariant law") {
  auto m = appendix_a_matrix();
  CHECK(m.size() == 2);
  CHECK(m.classification().irreducible);
  CHECK(m.classification().aperiodic);
  CHECK(m.ergodic());

  // pi solves pi = pi M: pi_0 = pi_0/2 + pi_1/6 gives pi_0/pi_1 = 1/3.
  Belief pi = invariant_distribution(m);
  CHECK(pi[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("two-cycle chain is irreducible but periodic") {
  auto m = periodic_matrix();
  CHECK(m.classification().irreducible);
  CHECK_FALSE(m.classification().aperiodic);
  CHECK(m.classification().period == 2);
  CHECK_FALSE(m.ergodic());

  Belief pi = invariant_distribution(m);
  CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("identity chain gets the minimum-norm invariant mixture") {
  StochasticMatrix id({{1.0, 0.0}, {0.0, 1.0}});
  CHECK_FALSE(id.classification().irreducible);
  Belief pi = invariant_distribution(id);
  CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("push_belief multiplies on the right") {
  auto m = appendix_a_matrix();
  Belief one_step = push_belief(Belief::dirac(2, 0), m);
  CHECK(one_step[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(one_step[1] == doctest::Approx(0.5).epsilon(1e-14));

  // Two pushes compose: e_0 M^2 = (1/2, 1/2) M = (1/3, 2/3).
  Belief two_steps = push_belief(Belief::dirac(2, 0), m, 2);
  CHECK(two_steps[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // The invariant law is a fixed point.
  Belief pi = invariant_distribution(m);
  Belief pushed = push_belief(pi, m, 7);
  CHECK(pi.l1_distance(pushed) < 1e-12);
}

TEST_CASE("mixing time matches the eigenvalue-1/3 geometric decay") {
  auto m = appendix_a_matrix();
  Belief pi = invariant_distribution(m);
  // Worst start is e_0: ||e_0 M^n - pi||_1 = (3/2) (1/3)^n, so the first
  // n with value <= 0.1 is n = 3 (1/18 <= 0.1 < 1/6).
  CHECK(mixing_steps(m, pi, 0.1) == 3);
  CHECK(mixing_steps(m, pi, 0.17) == 2);
}

TEST_CASE("mixing time rejects non-mixing chains") {
  auto flip = periodic_matrix();
  Belief pi = invariant_distribution(flip);
  CHECK_THROWS_AS(mixing_steps(flip, pi, 0.1, 50), std::invalid_argument);
  CHECK_THROWS_AS(mixing_steps(appendix_a_matrix(), pi, -1.0), std::invalid_argument);
}

TEST_CASE("matrix validation") {
  CHECK_THROWS_AS(StochasticMatrix({{0.5, 0.5}, {0.3, 0.6}}), std::invalid_argument);
  CHECK_THROWS_AS(StochasticMatrix({{1.2, -0.2}, {0.5, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(StochasticMatrix({{0.5, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(StochasticMatrix({}), std::invalid_argument);
}
