#pragma once

#include <cstddef>
#include <vector>

namespace persuade {

struct TailSum {
  double value = 0.0;       // truncated evaluation
  double tail_bound = 0.0;  // certified half-width of the dropped tail
};

/**
 * F_lambda^m(a) = sum_{n >= 1} lambda (1-lambda)^(n-1) a_{m+n}, evaluated on
 * the available prefix of the sequence.  Terms beyond the prefix are bounded
 * by `bound_abs` (an a-priori bound on |a_n|), giving the certified tail
 * half-width bound_abs * (1-lambda)^(prefix_len - m).
 */
TailSum sorin_F(const std::vector<double>& a, double lambda, std::size_t m,
                double bound_abs);

struct SorinCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;     // certified truncation allowance (all tails)
  double residual = 0.0;  // max(0, |lhs - rhs| - slack)
  bool pass = false;      // residual <= 1e-9
};

/**
 * Checks the discount decomposition, for 0 < mu < lambda <= 1:
 *
 *   F_mu^0(a) = (mu/lambda) F_lambda^0(a)
 *             + (mu/lambda)(lambda-mu) sum_{m >= 0} (1-mu)^m F_lambda^{m+1}(a)
 *
 * with the outer sum truncated at `truncation` terms.  All truncation error
 * (the three tail families) is accumulated into `slack`; the check demands
 * slack itself certify below 1e-10 and |lhs - rhs| - slack <= 1e-9.
 */
SorinCheck sorin_identity_check(const std::vector<double>& a, double mu,
                                double lambda, std::size_t truncation,
                                double bound_abs);

}  // namespace persuade
