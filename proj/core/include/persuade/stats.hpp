#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace persuade {

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s,x)/Gamma(s),
/// s > 0, x >= 0.  Series for x < s + 1, continued fraction otherwise.
double gamma_q(double s, double x);

/// Survival function of the chi-square distribution with df degrees.
double chi_square_sf(double stat, double df);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t bins = 0;
  double df = 0.0;
  double p_value = 1.0;
  std::size_t samples = 0;
  bool pass = false;
};

/// Goodness of fit of observed inter-erasure gap counts against
/// Geometric(x) on {1, 2, ...}.  `histogram[g]` counts observations of gap
/// g (index 0 unused).  Cells are pooled from the right until every
/// expected count is at least 5; the final cell absorbs the tail mass.
ChiSquareResult chi_square_geometric(const std::vector<std::uint64_t>& histogram,
                                     double x, double alpha = 0.001);

struct BernoulliCheck {
  double empirical = 0.0;
  double expected = 0.0;
  double bound = 0.0;  // 4 standard deviations of the empirical mean
  std::size_t samples = 0;
  bool pass = false;
};

/// |empirical mean - y| <= 4 sqrt(y(1-y)/n).
BernoulliCheck bernoulli_mean_check(std::uint64_t successes, std::uint64_t samples,
                                    double y);

}  // namespace persuade
