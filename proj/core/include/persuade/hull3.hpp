#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace persuade {

/// One upper facet of a 3d convex hull, stored as the affine function
/// z = a x + b y + c together with the indices of its three vertices.
struct Plane {
  double a = 0.0, b = 0.0, c = 0.0;
  std::array<std::size_t, 3> verts{};
};

/**
 * Upper facets of the convex hull of the lifted points (x_i, y_i, z_i).
 * Every input point lies on or below every returned plane, so the upper
 * envelope of the cloud is the pointwise minimum of the planes.  A cloud
 * that is coplanar within tolerance yields that single plane.  The (x, y)
 * projections must not be collinear.
 */
std::vector<Plane> upper_hull3(const std::vector<std::array<double, 3>>& pts);

/// Pointwise minimum of the facet planes at (x, y).
double eval_planes(const std::vector<Plane>& planes, double x, double y);

}  // namespace persuade
