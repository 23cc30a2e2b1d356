#include <stdexcept>

#include "doctest.h"
#include "persuade/belief.hpp"
#include "persuade/grid.hpp"

using namespace persuade;

TEST_CASE("belief construction and basics") {
  Belief b({0.25, 0.75});
  CHECK(b.size() == 2);
  CHECK(b[0] == doctest::Approx(0.25));
  CHECK(b[1] == doctest::Approx(0.75));

  // Tiny negative noise is clamped, larger mass errors are caller bugs.
  Belief noisy({1.0 + 5e-13, -5e-13});
  CHECK(noisy[1] >= 0.0);
  CHECK_THROWS_AS(Belief({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(Belief({0.5, 0.6}), std::invalid_argument);

  CHECK(Belief::dirac(3, 1)[1] == doctest::Approx(1.0));
  CHECK(Belief::dirac(3, 1).is_vertex());
  CHECK_FALSE(Belief::uniform(2).is_vertex());
  CHECK(Belief::uniform(3)[2] == doctest::Approx(1.0 / 3.0));

  Belief c({0.5, 0.5});
  CHECK(b.l1_distance(c) == doctest::Approx(0.5));
  CHECK(b == Belief({0.25, 0.75}));
}

TEST_CASE("two-state grid indexing and projection") {
  auto grid = make_grid(2, 4);
  CHECK(grid->size() == 5);
  CHECK(grid->states() == 2);
  CHECK(grid->resolution() == 4);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(grid->point(i)[0] == doctest::Approx(i / 4.0));
    CHECK(grid->index_of(grid->coord(i, 0)) == i);
  }
  CHECK(grid->nearest_index(Belief({0.3, 0.7})) == 1);
  CHECK(grid->projection_distance(Belief({0.3, 0.7})) == doctest::Approx(0.1));
  CHECK(grid->projection_distance(grid->point(2)) == doctest::Approx(0.0));
  CHECK(grid->point(grid->vertex_index(0))[0] == doctest::Approx(1.0));
  CHECK(grid->point(grid->vertex_index(1))[1] == doctest::Approx(1.0));
}

TEST_CASE("three-state grid enumerates the simplex lattice") {
  auto grid = make_grid(3, 2);
  CHECK(grid->size() == 6);
  // Every point has nonnegative lattice coordinates summing to <= m, and
  // index_of(coord) round-trips.
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const auto a = grid->coord(i, 0);
    const auto b = grid->coord(i, 1);
    CHECK(a + b <= 2);
    CHECK(grid->index_of(a, b) == i);
    const auto& p = grid->point(i);
    CHECK(p[0] == doctest::Approx(a / 2.0));
    CHECK(p[1] == doctest::Approx(b / 2.0));
  }
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(grid->point(grid->vertex_index(s)).l1_distance(Belief::dirac(3, s)) ==
          doctest::Approx(0.0));
  }
  // Projection of an interior point lands on a nearby lattice point.
  Belief q({0.4, 0.35, 0.25});
  const auto n = grid->nearest_index(q);
  CHECK(grid->point(n).l1_distance(q) == doctest::Approx(grid->projection_distance(q)));
  CHECK(grid->projection_distance(q) <= 1.5 * 2.0 / 2.0);
}

TEST_CASE("grid rejects unsupported dimensions") {
  CHECK_THROWS_AS(make_grid(4, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 10), std::invalid_argument);
}
