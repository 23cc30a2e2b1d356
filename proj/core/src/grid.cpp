#include "persuade/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace persuade {

SimplexGrid::SimplexGrid(std::size_t k, std::size_t m) : k_(k), m_(m) {
  if (m < 1) throw std::invalid_argument("SimplexGrid: resolution must be >= 1");
  if (k == 2) {
    points_.reserve(m + 1);
    coords_.reserve(m + 1);
    for (std::size_t a = 0; a <= m; ++a) {
      double p = static_cast<double>(a) / static_cast<double>(m);
      points_.push_back(Belief({p, 1.0 - p}));
      coords_.push_back(a);
    }
  } else if (k == 3) {
    points_.reserve((m + 1) * (m + 2) / 2);
    for (std::size_t a = 0; a <= m; ++a) {
      for (std::size_t b = 0; b + a <= m; ++b) {
        double x = static_cast<double>(a) / static_cast<double>(m);
        double y = static_cast<double>(b) / static_cast<double>(m);
        points_.push_back(Belief({x, y, 1.0 - x - y}));
        coords_.push_back(a);
        coords_.push_back(b);
      }
    }
  } else {
    throw std::invalid_argument(
        "SimplexGrid: only k = 2 and k = 3 lattices are supported");
  }
}

std::size_t SimplexGrid::coord(std::size_t i, std::size_t axis) const {
  if (axis >= k_ - 1) throw std::invalid_argument("SimplexGrid::coord: bad axis");
  return coords_[i * (k_ - 1) + axis];
}

std::size_t SimplexGrid::index_of(std::size_t a) const {
  if (k_ != 2 || a > m_) throw std::invalid_argument("SimplexGrid::index_of(a)");
  return a;
}

std::size_t SimplexGrid::index_of(std::size_t a, std::size_t b) const {
  if (k_ != 3 || a + b > m_) throw std::invalid_argument("SimplexGrid::index_of(a,b)");
  // Points with first coordinate a' < a fill a(m+1) - a(a-1)/2 slots.
  return a * (m_ + 1) - a * (a - 1) / 2 + b;
}

std::size_t SimplexGrid::nearest_index(const Belief& xi) const {
  if (xi.size() != k_) throw std::invalid_argument("SimplexGrid::nearest_index: dimension mismatch");
  // Floor each scaled coordinate, then hand the leftover units to the
  // largest fractional parts; this is the l1-nearest lattice composition.
  std::vector<std::size_t> n(k_);
  std::vector<double> frac(k_);
  std::size_t total = 0;
  for (std::size_t i = 0; i < k_; ++i) {
    double scaled = xi[i] * static_cast<double>(m_);
    double fl = std::floor(scaled);
    if (fl < 0.0) fl = 0.0;
    n[i] = static_cast<std::size_t>(fl);
    if (n[i] > m_) n[i] = m_;
    frac[i] = scaled - fl;
    total += n[i];
  }
  if (total > m_) {
    // Only possible through rounding noise; shave the smallest fractions.
    std::vector<std::size_t> order(k_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return frac[a] < frac[b]; });
    for (std::size_t j = 0; total > m_ && j < k_; ++j) {
      while (n[order[j]] > 0 && total > m_) {
        --n[order[j]];
        --total;
      }
    }
  }
  std::size_t remaining = m_ - total;
  if (remaining > 0) {
    std::vector<std::size_t> order(k_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (std::size_t j = 0; remaining > 0; j = (j + 1) % k_) {
      ++n[order[j]];
      --remaining;
    }
  }
  if (k_ == 2) return index_of(n[0]);
  return index_of(n[0], n[1]);
}

double SimplexGrid::projection_distance(const Belief& xi) const {
  return xi.l1_distance(point(nearest_index(xi)));
}

std::size_t SimplexGrid::vertex_index(std::size_t state) const {
  if (state >= k_) throw std::invalid_argument("SimplexGrid::vertex_index");
  if (k_ == 2) return state == 0 ? m_ : 0;
  if (state == 0) return index_of(m_, std::size_t{0});
  if (state == 1) return index_of(std::size_t{0}, m_);
  return index_of(std::size_t{0}, std::size_t{0});
}

GridPtr make_grid(std::size_t k, std::size_t m) {
  return std::make_shared<const SimplexGrid>(k, m);
}

}  // namespace persuade
