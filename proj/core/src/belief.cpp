#include "persuade/belief.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace persuade {

Belief::Belief(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.size() < 2) {
    throw std::invalid_argument("Belief: need at least two states");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    double& x = w_[i];
    if (x < 0.0) {
      if (x < -kComponentTol) {
        throw std::invalid_argument("Belief: negative component at index " +
                                    std::to_string(i));
      }
      x = 0.0;  // clamp numerical noise
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kMassTol) {
    throw std::invalid_argument("Belief: mass " + std::to_string(total) +
                                " is not 1 within tolerance");
  }
  for (double& x : w_) x /= total;  // renormalise the residual drift away
}

Belief Belief::dirac(std::size_t k, std::size_t vertex) {
  if (vertex >= k) throw std::invalid_argument("Belief::dirac: vertex out of range");
  std::vector<double> w(k, 0.0);
  w[vertex] = 1.0;
  return Belief(std::move(w));
}

Belief Belief::uniform(std::size_t k) {
  return Belief(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

double Belief::l1_distance(const Belief& other) const {
  if (other.size() != size()) {
    throw std::invalid_argument("Belief::l1_distance: dimension mismatch");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) d += std::abs(w_[i] - other.w_[i]);
  return d;
}

bool Belief::is_vertex(double tol) const {
  for (double x : w_) {
    if (x > tol && x < 1.0 - tol) return false;
  }
  return true;
}

std::string Belief::to_string() const {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < w_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", w_[i]);
    out += buf;
    if (i + 1 < w_.size()) out += ", ";
  }
  out += ")";
  return out;
}

bool operator==(const Belief& a, const Belief& b) {
  return a.weights() == b.weights();
}

}  // namespace persuade
