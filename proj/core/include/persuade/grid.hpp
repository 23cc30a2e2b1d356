#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "persuade/belief.hpp"

namespace persuade {

/**
 * Regular lattice on the belief simplex: all points whose coordinates are
 * integer multiples of 1/m.  Supported for k = 2 (m+1 points, ordered by
 * first coordinate) and k = 3 ((m+1)(m+2)/2 points, ordered
 * lexicographically by the first two integer coordinates).
 */
class SimplexGrid {
 public:
  SimplexGrid(std::size_t k, std::size_t m);

  std::size_t states() const { return k_; }
  std::size_t resolution() const { return m_; }
  std::size_t size() const { return points_.size(); }
  const Belief& point(std::size_t i) const { return points_[i]; }
  const std::vector<Belief>& points() const { return points_; }

  // Integer composition of point i (first k-1 lattice coordinates, each in
  // units of 1/m; the last is implied).
  std::size_t coord(std::size_t i, std::size_t axis) const;

  // Rank of a lattice composition.  k = 2 takes a alone; k = 3 takes (a, b).
  std::size_t index_of(std::size_t a) const;
  std::size_t index_of(std::size_t a, std::size_t b) const;

  // Index of the l1-nearest lattice point, plus the projection distance.
  std::size_t nearest_index(const Belief& xi) const;
  double projection_distance(const Belief& xi) const;

  std::size_t vertex_index(std::size_t state) const;

 private:
  std::size_t k_;
  std::size_t m_;
  std::vector<Belief> points_;
  std::vector<std::size_t> coords_;  // k-1 lattice coords per point
};

using GridPtr = std::shared_ptr<const SimplexGrid>;

GridPtr make_grid(std::size_t k, std::size_t m);

}  // namespace persuade
