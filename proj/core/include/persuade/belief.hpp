#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace persuade {

// Tolerances shared by the probability types.  Construction clamps
// componentwise noise below kComponentTol and insists the total mass is
// within kMassTol of one; anything worse is treated as a caller bug.
inline constexpr double kComponentTol = 1e-12;
inline constexpr double kMassTol = 1e-9;

/// A probability vector over the k states of the chain (k >= 2).
class Belief {
 public:
  explicit Belief(std::vector<double> weights);

  static Belief dirac(std::size_t k, std::size_t vertex);
  static Belief uniform(std::size_t k);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& weights() const { return w_; }

  double l1_distance(const Belief& other) const;
  bool is_vertex(double tol = kComponentTol) const;

  std::string to_string() const;

 private:
  std::vector<double> w_;
};

bool operator==(const Belief& a, const Belief& b);

}  // namespace persuade
