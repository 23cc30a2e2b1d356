#include "persuade/sorin.hpp"

#include <cmath>
#include <stdexcept>

namespace persuade {

TailSum sorin_F(const std::vector<double>& a, double lambda, std::size_t m,
                double bound_abs) {
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw std::invalid_argument("sorin_F: lambda must lie in (0,1]");
  }
  if (bound_abs < 0.0) throw std::invalid_argument("sorin_F: negative bound");
  const std::size_t L = a.size();
  if (m >= L) throw std::invalid_argument("sorin_F: offset exceeds prefix");

  TailSum out;
  double w = lambda;  // lambda (1-lambda)^(n-1)
  for (std::size_t n = 1; m + n <= L; ++n) {
    out.value += w * a[m + n - 1];
    w *= 1.0 - lambda;
  }
  // Remaining mass sums to (1-lambda)^(L-m).
  out.tail_bound = bound_abs * std::pow(1.0 - lambda, static_cast<double>(L - m));
  return out;
}

SorinCheck sorin_identity_check(const std::vector<double>& a, double mu,
                                double lambda, std::size_t truncation,
                                double bound_abs) {
  if (!(mu > 0.0) || !(mu < lambda) || lambda > 1.0) {
    throw std::invalid_argument(
        "sorin_identity_check: need 0 < mu < lambda <= 1");
  }
  if (truncation + 1 >= a.size()) {
    throw std::invalid_argument("sorin_identity_check: prefix shorter than truncation");
  }

  const TailSum lhs = sorin_F(a, mu, 0, bound_abs);
  const TailSum head = sorin_F(a, lambda, 0, bound_abs);

  SorinCheck out;
  out.lhs = lhs.value;
  out.slack = lhs.tail_bound + (mu / lambda) * head.tail_bound;

  double series = 0.0;
  double w = 1.0;  // (1-mu)^m
  for (std::size_t m = 0; m <= truncation; ++m) {
    const TailSum term = sorin_F(a, lambda, m + 1, bound_abs);
    series += w * term.value;
    out.slack += (mu / lambda) * (lambda - mu) * w * term.tail_bound;
    w *= 1.0 - mu;
  }
  // Outer tail: each dropped F is bounded by bound_abs, and the dropped
  // geometric weights sum to (1-mu)^(truncation+1) / mu.
  out.slack += (mu / lambda) * (lambda - mu) * bound_abs * w / mu;

  out.rhs = (mu / lambda) * head.value + (mu / lambda) * (lambda - mu) * series;
  if (out.slack > 1e-10) {
    throw std::invalid_argument(
        "sorin_identity_check: prefix/truncation cannot certify below 1e-10");
  }
  out.residual = std::max(0.0, std::abs(out.lhs - out.rhs) - out.slack);
  out.pass = out.residual <= 1e-9;
  return out;
}

}  // namespace persuade
