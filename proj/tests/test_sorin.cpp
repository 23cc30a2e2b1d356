#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "persuade/rng.hpp"
#include "persuade/sorin.hpp"

using namespace persuade;

TEST_CASE("discounted tail sums against closed forms") {
  // a_n = n: F_lambda^0 = sum lambda (1-lambda)^(n-1) n = 1/lambda.
  std::vector<double> ramp(200);
  for (std::size_t n = 0; n < ramp.size(); ++n) ramp[n] = static_cast<double>(n + 1);
  TailSum f = sorin_F(ramp, 0.5, 0, 1000.0);
  CHECK(std::abs(f.value - 2.0) <= f.tail_bound + 1e-12);
  CHECK(f.tail_bound <= 1e-50);

  // Constant sequence: every shifted sum is exactly 1.
  std::vector<double> ones(120, 1.0);
  for (std::size_t m : {std::size_t{0}, std::size_t{5}, std::size_t{40}}) {
    TailSum g = sorin_F(ones, 0.25, m, 1.0);
    CHECK(std::abs(g.value - 1.0) <= g.tail_bound + 1e-12);
  }

  // lambda = 1 collapses to the next element, with no tail at all.
  std::vector<double> seq = {0.3, 0.7, 0.1, 0.9};
  TailSum h = sorin_F(seq, 1.0, 2, 1.0);
  CHECK(h.value == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(h.tail_bound == doctest::Approx(0.0));
}

TEST_CASE("decomposition identity certifies on random bounded sequences") {
  SplitMix64 rng(99u);
  std::vector<double> a(1200);
  for (double& v : a) v = rng.uniform01();
  SorinCheck chk = sorin_identity_check(a, 0.1, 0.5, 600, 1.0);
  CHECK(chk.pass);
  CHECK(chk.slack <= 1e-10);
  CHECK(chk.residual <= 1e-9);
  CHECK(chk.lhs == doctest::Approx(chk.rhs).epsilon(1e-8));

  // lambda = 1 degenerates to the plain discounted sum of the shifts.
  SorinCheck edge = sorin_identity_check(a, 0.3, 1.0, 600, 1.0);
  CHECK(edge.pass);
}

TEST_CASE("identity preconditions") {
  std::vector<double> a(1200, 0.5);
  CHECK_THROWS_AS(sorin_identity_check(a, 0.5, 0.5, 600, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sorin_identity_check(a, 0.6, 0.5, 600, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sorin_identity_check(a, 0.1, 1.5, 600, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sorin_identity_check(a, 0.1, 0.5, 1300, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sorin_F(a, 0.5, 1300, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sorin_F(a, -0.1, 0, 1.0), std::invalid_argument);
}
