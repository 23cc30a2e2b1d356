#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "persuade/instance.hpp"
#include "persuade/mcgame.hpp"

using namespace persuade;

TEST_CASE("nonrevealing value of the diagonal family") {
  auto fam = MatrixGameFamily::example2();
  CHECK(fam.states() == 2);
  CHECK(fam.rows() == 2);
  CHECK(fam.cols() == 2);
  // Average game at p: [[p,0],[0,1-p]], value p(1-p)/(p + 1-p) = p(1-p).
  CHECK(nonrevealing_value(fam, Belief({0.5, 0.5})) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(nonrevealing_value(fam, Belief({0.2, 0.8})) == doctest::Approx(0.16).epsilon(1e-9));
  CHECK(std::abs(nonrevealing_value(fam, Belief::dirac(2, 0))) <= 1e-10);
}

TEST_CASE("bayes update after an observed action") {
  StageStrategy chi({{0.8, 0.2}, {0.4, 0.6}});
  auto res = posterior_after_action(Belief({0.5, 0.5}), chi, 0);
  CHECK(res.prob == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(res.posterior[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(res.posterior[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // A never-played action leaves the belief alone with probability zero.
  StageStrategy pure({{1.0, 0.0}, {1.0, 0.0}});
  auto none = posterior_after_action(Belief({0.5, 0.5}), pure, 1);
  CHECK(none.prob == doctest::Approx(0.0));
  CHECK(none.posterior[0] == doctest::Approx(0.5));

  CHECK_THROWS_AS(StageStrategy({{0.5, 0.4}, {1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(posterior_after_action(Belief({0.5, 0.5}), chi, 5),
                  std::invalid_argument);
}

TEST_CASE("stage reward under revealing and non-revealing play") {
  auto fam = MatrixGameFamily::example2();
  // Fully revealing: in state 1 play row 0, in state 2 play row 1.  The
  // uninformed player sees through it, and each column then concedes 1/2.
  StageStrategy reveal({{1.0, 0.0}, {0.0, 1.0}});
  CHECK(stage_reward(fam, Belief({0.5, 0.5}), reveal) == doctest::Approx(0.5).epsilon(1e-12));
  // Uniform play in both states is non-revealing and averages the matrices.
  StageStrategy uniform({{0.5, 0.5}, {0.5, 0.5}});
  CHECK(stage_reward(fam, Belief({0.5, 0.5}), uniform) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("one-shot informed value is the tent function") {
  auto fam = MatrixGameFamily::example2();
  for (double p : {0.0, 0.1, 0.25, 0.5, 0.8, 1.0}) {
    CHECK(one_shot_informed_value(fam, Belief({p, 1.0 - p})) ==
          doctest::Approx(std::min(p, 1.0 - p)).epsilon(1e-9));
  }
}

TEST_CASE("frozen chain at delta 0 reduces to the one-shot game") {
  auto fam = MatrixGameFamily::example2();
  StochasticMatrix id({{1.0, 0.0}, {0.0, 1.0}});
  auto grid = make_grid(2, 40);
  GameSolveResult res = solve_game_value(fam, id, 0.0, grid, 10, 1e-8);
  CHECK_FALSE(res.lattice_too_coarse);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    double p = grid->point(i)[0];
    double expect = std::min(p, 1.0 - p);
    CHECK(std::abs(res.v.values()[i] - expect) <= res.lattice_tolerance + 1e-9);
  }
}

TEST_CASE("matching pennies on the two-cycle chain is flat at one half") {
  // chi = (1/2, 1/2) in both states equalises the columns at 1/2 and
  // reveals nothing, so V is identically 1/2 for any discount.
  MatrixGameFamily pennies({{{1.0, 0.0}, {0.0, 1.0}}, {{0.0, 1.0}, {1.0, 0.0}}});
  auto m = periodic_matrix();
  auto grid = make_grid(2, 30);
  GameSolveResult res = solve_game_value(pennies, m, 0.3, grid, 10, 1e-7);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    CHECK(std::abs(res.v.values()[i] - 0.5) <= 1e-6);
  }
}

TEST_CASE("game trajectories keep phi above psi") {
  auto fam = MatrixGameFamily::example2();
  StochasticMatrix id({{1.0, 0.0}, {0.0, 1.0}});
  auto grid = make_grid(2, 40);
  GameTrajectoryReport rep = game_trajectories(fam, id, {0.0, 0.4}, grid, 10, 1e-7);
  REQUIRE(rep.points.size() == 2);
  CHECK(rep.pi[0] == doctest::Approx(0.5).epsilon(1e-10));
  for (const auto& pt : rep.points) {
    // Vertex values vanish for this family, so psi collapses.
    CHECK(std::abs(pt.psi) <= rep.tolerance);
    CHECK(pt.phi >= pt.psi - rep.tolerance);
  }
  CHECK(rep.bracket_upper == doctest::Approx(rep.points.back().phi));
  CHECK(rep.bracket_lower == doctest::Approx(rep.points.back().psi));
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(MatrixGameFamily({}), std::invalid_argument);
  CHECK_THROWS_AS(MatrixGameFamily({{{1.0, 0.0}}, {{0.0}}}), std::invalid_argument);
  CHECK_THROWS_AS(MatrixGameFamily({{{1.0, -0.5}}, {{0.0, 0.2}}}), std::invalid_argument);
}
