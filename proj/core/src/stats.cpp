#include "persuade/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace persuade {

namespace {

// Lower-tail series: P(s,x) = x^s e^-x / Gamma(s+1) * sum x^n s! / (s+n)!
double gamma_p_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  double ap = s;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Upper-tail Lentz continued fraction for Q(s,x).
double gamma_q_cf(double s, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace

double gamma_q(double s, double x) {
  if (!(s > 0.0) || x < 0.0) {
    throw std::invalid_argument("gamma_q: need s > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
  return gamma_q_cf(s, x);
}

double chi_square_sf(double stat, double df) {
  if (stat <= 0.0) return 1.0;
  return gamma_q(df / 2.0, stat / 2.0);
}

ChiSquareResult chi_square_geometric(const std::vector<std::uint64_t>& histogram,
                                     double x, double alpha) {
  if (!(x > 0.0) || x >= 1.0) {
    throw std::invalid_argument("chi_square_geometric: x must lie in (0,1)");
  }
  std::uint64_t n = 0;
  for (std::uint64_t c : histogram) n += c;
  ChiSquareResult out;
  out.samples = n;
  if (n < 25) {
    throw std::invalid_argument("chi_square_geometric: too few samples");
  }

  // Cells 1..B-1 are single gaps; the last cell is the geometric tail.
  // B is the largest count of leading cells whose expected counts all
  // reach 5 (the tail cell keeps at least 5 expected as well).
  const double dn = static_cast<double>(n);
  std::size_t b = 1;
  double tail = 1.0;  // P(gap >= b)
  while (true) {
    const double cell = dn * tail * x;          // expected count of gap == b
    const double rest = dn * tail * (1.0 - x);  // expected count of gap > b
    if (cell < 5.0 || rest < 5.0) break;
    tail *= 1.0 - x;
    ++b;
  }
  // Cells: {1}, {2}, ..., {b-1}, {>= b}.
  const std::size_t cells = b;
  if (cells < 2) {
    throw std::invalid_argument("chi_square_geometric: too few samples to bin");
  }
  out.bins = cells;
  out.df = static_cast<double>(cells - 1);

  double stat = 0.0;
  double prob = x;
  std::uint64_t seen = 0;
  for (std::size_t g = 1; g <= cells - 1; ++g) {
    const std::uint64_t obs = g < histogram.size() ? histogram[g] : 0;
    seen += obs;
    const double expd = dn * prob;
    stat += (static_cast<double>(obs) - expd) * (static_cast<double>(obs) - expd) / expd;
    prob *= 1.0 - x;
  }
  // Tail cell.
  const std::uint64_t obs_tail = n - seen;
  double tail_prob = std::pow(1.0 - x, static_cast<double>(cells - 1));
  const double expd_tail = dn * tail_prob;
  stat += (static_cast<double>(obs_tail) - expd_tail) *
          (static_cast<double>(obs_tail) - expd_tail) / expd_tail;

  out.statistic = stat;
  out.p_value = chi_square_sf(stat, out.df);
  out.pass = out.p_value >= alpha;
  return out;
}

BernoulliCheck bernoulli_mean_check(std::uint64_t successes, std::uint64_t samples,
                                    double y) {
  if (samples == 0) {
    throw std::invalid_argument("bernoulli_mean_check: no samples");
  }
  if (!(y >= 0.0 && y <= 1.0)) {
    throw std::invalid_argument("bernoulli_mean_check: y must lie in [0, 1]");
  }
  BernoulliCheck out;
  out.samples = samples;
  out.expected = y;
  out.empirical = static_cast<double>(successes) / static_cast<double>(samples);
  out.bound = 4.0 * std::sqrt(y * (1.0 - y) / static_cast<double>(samples));
  out.pass = std::abs(out.empirical - y) <= out.bound;
  return out;
}

}  // namespace persuade
