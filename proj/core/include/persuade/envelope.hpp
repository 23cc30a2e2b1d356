#pragma once

#include <memory>
#include <vector>

#include "persuade/grid.hpp"
#include "persuade/hull3.hpp"

namespace persuade {

/**
 * Values attached to the points of a SimplexGrid.  Off-grid evaluation is
 * concave: k = 2 interpolates linearly between neighbouring lattice points,
 * k = 3 reads the pointwise minimum of the upper-hull facet planes of the
 * graph (so a non-concave table is read through its concave envelope).
 */
class GridValueFunction {
 public:
  GridValueFunction(GridPtr grid, std::vector<double> values, bool concave = false);

  const SimplexGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  bool concave() const { return concave_; }

  double interpolate(const Belief& xi) const;
  double max_abs() const;

  // Support structure of the concave interpolant; built on demand.
  // k = 2: indices of the upper-hull kinks, ascending in the first
  // coordinate.  k = 3: upper-hull facet planes.
  const std::vector<std::size_t>& hull_vertices() const;
  const std::vector<Plane>& facets() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  bool concave_;
  mutable std::shared_ptr<const std::vector<std::size_t>> hull_;  // k = 2
  mutable std::shared_ptr<const std::vector<Plane>> facets_;      // k = 3

  friend GridValueFunction concave_envelope(GridPtr, const std::vector<double>&);
};

/// Least concave grid function majorising the given values (the upper
/// concave envelope of the graph, evaluated at the lattice points).
GridValueFunction concave_envelope(GridPtr grid, const std::vector<double>& f);
GridValueFunction concave_envelope(const GridValueFunction& f);

/// Atoms (grid indices) and weights of a point of the concave interpolant:
/// xi is a convex combination of at most k lattice points lying on the
/// envelope, with matching barycenter.
struct Support {
  std::vector<std::size_t> atoms;
  std::vector<double> weights;
};
Support envelope_support(const GridValueFunction& env, const Belief& xi);

}  // namespace persuade
