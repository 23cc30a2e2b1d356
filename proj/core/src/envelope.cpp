#include "persuade/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace persuade {

namespace {

double cross2(double ox, double oy, double ax, double ay, double bx, double by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

// Kinks of the 1d upper concave envelope (monotone chain, collinear points
// dropped).  Input values are indexed by ascending first coordinate.
std::vector<std::size_t> upper_chain(const std::vector<double>& f) {
  std::vector<std::size_t> h;
  h.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x = static_cast<double>(i);
    while (h.size() >= 2) {
      std::size_t a = h[h.size() - 2], b = h[h.size() - 1];
      if (cross2(static_cast<double>(a), f[a], static_cast<double>(b), f[b], x,
                 f[i]) >= 0.0) {
        h.pop_back();
      } else {
        break;
      }
    }
    h.push_back(i);
  }
  return h;
}

std::vector<std::array<double, 3>> lift(const SimplexGrid& g,
                                        const std::vector<double>& f) {
  std::vector<std::array<double, 3>> pts(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Belief& p = g.point(i);
    pts[i] = {p[0], p[1], f[i]};
  }
  return pts;
}

}  // namespace

GridValueFunction::GridValueFunction(GridPtr grid, std::vector<double> values,
                                     bool concave)
    : grid_(std::move(grid)), values_(std::move(values)), concave_(concave) {
  if (!grid_) throw std::invalid_argument("GridValueFunction: null grid");
  if (values_.size() != grid_->size()) {
    throw std::invalid_argument("GridValueFunction: value count does not match grid");
  }
}

double GridValueFunction::interpolate(const Belief& xi) const {
  const SimplexGrid& g = *grid_;
  if (xi.size() != g.states()) {
    throw std::invalid_argument("GridValueFunction::interpolate: dimension mismatch");
  }
  if (g.states() == 2) {
    const double m = static_cast<double>(g.resolution());
    double p = xi[0] * m;
    auto i0 = static_cast<std::size_t>(std::clamp(std::floor(p), 0.0, m - 1.0));
    double t = p - static_cast<double>(i0);
    return (1.0 - t) * values_[i0] + t * values_[i0 + 1];
  }
  return eval_planes(facets(), xi[0], xi[1]);
}

double GridValueFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

const std::vector<std::size_t>& GridValueFunction::hull_vertices() const {
  if (grid_->states() != 2) {
    throw std::logic_error("hull_vertices: only defined for k = 2");
  }
  if (!hull_) {
    hull_ = std::make_shared<const std::vector<std::size_t>>(upper_chain(values_));
  }
  return *hull_;
}

const std::vector<Plane>& GridValueFunction::facets() const {
  if (grid_->states() != 3) {
    throw std::logic_error("facets: only defined for k = 3");
  }
  if (!facets_) {
    facets_ = std::make_shared<const std::vector<Plane>>(
        upper_hull3(lift(*grid_, values_)));
  }
  return *facets_;
}

GridValueFunction concave_envelope(GridPtr grid, const std::vector<double>& f) {
  const SimplexGrid& g = *grid;
  if (f.size() != g.size()) {
    throw std::invalid_argument("concave_envelope: value count does not match grid");
  }
  std::vector<double> env(f.size());
  GridValueFunction out(grid, f, true);  // placeholder values, replaced below
  if (g.states() == 2) {
    std::vector<std::size_t> h = upper_chain(f);
    for (std::size_t s = 0; s + 1 < h.size(); ++s) {
      std::size_t a = h[s], b = h[s + 1];
      for (std::size_t i = a; i <= b; ++i) {
        double t = static_cast<double>(i - a) / static_cast<double>(b - a);
        env[i] = (1.0 - t) * f[a] + t * f[b];
      }
    }
    if (h.size() == 1) env[h[0]] = f[h[0]];
    for (std::size_t i = 0; i < f.size(); ++i) env[i] = std::max(env[i], f[i]);
    out = GridValueFunction(grid, std::move(env), true);
    out.hull_ = std::make_shared<const std::vector<std::size_t>>(std::move(h));
    return out;
  }
  auto planes = std::make_shared<const std::vector<Plane>>(upper_hull3(lift(g, f)));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Belief& p = g.point(i);
    // The hull property guarantees min-over-planes >= f; clamping removes
    // the last word of floating point slack so domination is exact.
    env[i] = std::max(eval_planes(*planes, p[0], p[1]), f[i]);
  }
  out = GridValueFunction(grid, std::move(env), true);
  out.facets_ = std::move(planes);
  return out;
}

GridValueFunction concave_envelope(const GridValueFunction& f) {
  return concave_envelope(f.grid_ptr(), f.values());
}

namespace {

Support support_k2(const GridValueFunction& env, const Belief& xi) {
  const SimplexGrid& g = env.grid();
  const auto& hv = env.hull_vertices();
  const double m = static_cast<double>(g.resolution());
  const double p = xi[0];
  // Hull vertices ascend in the first coordinate; locate the bracketing pair.
  std::size_t lo = 0, hi = hv.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (static_cast<double>(hv[mid]) / m <= p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double xlo = static_cast<double>(hv[lo]) / m;
  double xhi = static_cast<double>(hv[hi]) / m;
  if (p <= xlo + kComponentTol && p >= xlo - kComponentTol) {
    return Support{{hv[lo]}, {1.0}};
  }
  if (p <= xhi + kComponentTol && p >= xhi - kComponentTol) {
    return Support{{hv[hi]}, {1.0}};
  }
  if (hv.size() == 1 || xhi <= xlo) {
    return Support{{hv[lo]}, {1.0}};
  }
  double t = (p - xlo) / (xhi - xlo);
  return Support{{hv[lo], hv[hi]}, {1.0 - t, t}};
}

// Barycentric weights of (x, y) in the projected triangle of a facet.
bool barycentric(const SimplexGrid& g, const Plane& pl, double x, double y,
                 std::array<double, 3>& lam) {
  const Belief& A = g.point(pl.verts[0]);
  const Belief& B = g.point(pl.verts[1]);
  const Belief& C = g.point(pl.verts[2]);
  double m11 = B[0] - A[0], m12 = C[0] - A[0];
  double m21 = B[1] - A[1], m22 = C[1] - A[1];
  double det = m11 * m22 - m12 * m21;
  if (std::abs(det) < 1e-14) return false;
  double rx = x - A[0], ry = y - A[1];
  lam[1] = (rx * m22 - ry * m12) / det;
  lam[2] = (m11 * ry - m21 * rx) / det;
  lam[0] = 1.0 - lam[1] - lam[2];
  return true;
}

Support support_k3(const GridValueFunction& env, const Belief& xi) {
  const SimplexGrid& g = env.grid();
  const auto& planes = env.facets();
  const double x = xi[0], y = xi[1];
  double minval = eval_planes(planes, x, y);
  const double near = 1e-8 * (1.0 + std::abs(minval));

  // Among the planes attaining the minimum, pick the facet whose projected
  // triangle contains the query best.
  const Plane* chosen = nullptr;
  std::array<double, 3> lam{}, best_lam{};
  double best_min = -std::numeric_limits<double>::infinity();
  for (const Plane& pl : planes) {
    if (pl.a * x + pl.b * y + pl.c > minval + near) continue;
    if (!barycentric(g, pl, x, y, lam)) continue;
    double lo = std::min({lam[0], lam[1], lam[2]});
    if (lo > best_min) {
      best_min = lo;
      best_lam = lam;
      chosen = &pl;
    }
  }
  if (chosen == nullptr || best_min < -1e-7) {
    throw std::runtime_error("envelope_support: facet retrieval failed (degenerate hull)");
  }
  Support s;
  for (std::size_t i = 0; i < 3; ++i) {
    if (best_lam[i] > kComponentTol) {
      s.atoms.push_back(chosen->verts[i]);
      s.weights.push_back(best_lam[i]);
    }
  }
  if (s.atoms.empty()) {  // numerically on a vertex
    s.atoms.push_back(chosen->verts[0]);
    s.weights.push_back(1.0);
  }
  double total = 0.0;
  for (double w : s.weights) total += w;
  for (double& w : s.weights) w /= total;
  return s;
}

}  // namespace

Support envelope_support(const GridValueFunction& env, const Belief& xi) {
  if (xi.size() != env.grid().states()) {
    throw std::invalid_argument("envelope_support: dimension mismatch");
  }
  if (env.grid().states() == 2) return support_k2(env, xi);
  return support_k3(env, xi);
}

}  // namespace persuade
