#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "persuade/envelope.hpp"
#include "persuade/grid.hpp"

using namespace persuade;

TEST_CASE("spike on the segment gets the tent envelope") {
  auto grid = make_grid(2, 4);
  std::vector<double> f = {0.0, 0.0, 1.0, 0.0, 0.0};
  GridValueFunction cav = concave_envelope(grid, f);
  std::vector<double> tent = {0.0, 0.5, 1.0, 0.5, 0.0};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(cav.values()[i] == doctest::Approx(tent[i]).epsilon(1e-12));
  }
  // The envelope interpolates linearly between lattice points.
  CHECK(cav.interpolate(Belief({0.375, 0.625})) == doctest::Approx(0.75).epsilon(1e-12));

  // Cav is idempotent and dominates the data.
  GridValueFunction again = concave_envelope(grid, cav.values());
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(again.values()[i] == doctest::Approx(cav.values()[i]).epsilon(1e-12));
    CHECK(cav.values()[i] >= f[i] - 1e-12);
  }
}

TEST_CASE("concave data is a fixed point of the envelope") {
  auto grid = make_grid(2, 50);
  std::vector<double> f(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    double p = grid->point(i)[0];
    f[i] = p * (1.0 - p);
  }
  GridValueFunction cav = concave_envelope(grid, f);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    CHECK(cav.values()[i] == doctest::Approx(f[i]).epsilon(1e-12));
  }
}

TEST_CASE("affine data on the triangle is its own envelope") {
  auto grid = make_grid(3, 8);
  std::vector<double> f(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const Belief& p = grid->point(i);
    f[i] = 0.3 * p[0] - 0.7 * p[1] + 1.1 * p[2];
  }
  GridValueFunction cav = concave_envelope(grid, f);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    CHECK(cav.values()[i] == doctest::Approx(f[i]).epsilon(1e-10));
  }
}

TEST_CASE("triangle spike is enveloped by the cone through its peak") {
  auto grid = make_grid(3, 6);
  std::vector<double> f(grid->size(), 0.0);
  std::size_t centre = grid->index_of(2, 2);  // (1/3, 1/3, 1/3)
  f[centre] = 1.0;
  GridValueFunction cav = concave_envelope(grid, f);
  CHECK(cav.values()[centre] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cav.values()[grid->vertex_index(0)] == doctest::Approx(0.0).epsilon(1e-10));
  // Midpoint of vertex 0 and the centre sits on the cone at height 1/2.
  CHECK(cav.interpolate(Belief({2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0})) ==
        doctest::Approx(0.5).epsilon(1e-9));
  for (std::size_t i = 0; i < grid->size(); ++i) CHECK(cav.values()[i] >= -1e-12);
}

TEST_CASE("envelope support recovers a splitting of the prior") {
  auto grid = make_grid(2, 10);
  std::vector<double> f(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    double p = grid->point(i)[0];
    f[i] = p < 0.5 ? 0.0 : 1.0;  // step payoff: reveal-to-threshold is optimal
  }
  GridValueFunction cav = concave_envelope(grid, f);
  Belief prior({0.25, 0.75});
  Support support = envelope_support(cav, prior);
  REQUIRE(support.atoms.size() == support.weights.size());
  REQUIRE(support.atoms.size() >= 1);
  CHECK(support.atoms.size() <= 2);
  double mass = 0.0, mean = 0.0, value = 0.0;
  for (std::size_t a = 0; a < support.atoms.size(); ++a) {
    CHECK(support.weights[a] > 0.0);
    mass += support.weights[a];
    mean += support.weights[a] * grid->point(support.atoms[a])[0];
    value += support.weights[a] * cav.values()[support.atoms[a]];
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mean == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(value == doctest::Approx(cav.interpolate(prior)).epsilon(1e-12));
}

TEST_CASE("grid value function validation") {
  auto grid = make_grid(2, 4);
  CHECK_THROWS_AS(GridValueFunction(grid, {1.0, 2.0}), std::invalid_argument);
  GridValueFunction ok(grid, {0.0, 0.1, 0.2, 0.1, 0.0});
  CHECK(ok.max_abs() == doctest::Approx(0.2));
  CHECK_THROWS_AS(ok.interpolate(Belief({0.2, 0.3, 0.5})), std::invalid_argument);
}
