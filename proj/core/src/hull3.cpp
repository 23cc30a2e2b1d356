#include "persuade/hull3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace persuade {

namespace {

using P3 = std::array<double, 3>;

P3 sub(const P3& u, const P3& v) { return {u[0] - v[0], u[1] - v[1], u[2] - v[2]}; }
P3 cross(const P3& u, const P3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
}
double dot(const P3& u, const P3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }
double norm(const P3& u) { return std::sqrt(dot(u, u)); }

struct Face {
  std::size_t a, b, c;
  P3 n;        // unit outward normal
  double off;  // n . p = off on the face plane
  bool alive = true;
};

// splitmix64; used only to shuffle the insertion order deterministically.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d9b19923142e35ULL;
  return x ^ (x >> 31);
}

Face make_face(const std::vector<P3>& pts, std::size_t a, std::size_t b,
               std::size_t c, const P3& interior) {
  Face f{a, b, c, {0, 0, 0}, 0.0};
  P3 n = cross(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
  double len = norm(n);
  if (len > 0.0) {
    n = {n[0] / len, n[1] / len, n[2] / len};
  }
  double off = dot(n, pts[a]);
  if (dot(n, interior) > off) {  // flip so the normal points away from the hull
    std::swap(f.b, f.c);
    n = {-n[0], -n[1], -n[2]};
    off = -off;
  }
  f.n = n;
  f.off = off;
  return f;
}

Plane face_to_plane(const Face& f) {
  // n . p = off  solved for z.
  return Plane{-f.n[0] / f.n[2], -f.n[1] / f.n[2], f.off / f.n[2],
               {f.a, f.b, f.c}};
}

}  // namespace

std::vector<Plane> upper_hull3(const std::vector<P3>& pts) {
  const std::size_t n = pts.size();
  if (n < 3) throw std::invalid_argument("upper_hull3: need at least 3 points");

  double scale = 1.0;
  for (const P3& p : pts) {
    scale = std::max({scale, std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
  }
  const double eps = 1e-10 * scale;

  // Initial simplex: lexicographic minimum, the point farthest from it, the
  // point farthest from their line, the point farthest from their plane.
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (pts[i] < pts[i0]) i0 = i;
  }
  std::size_t i1 = i0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = norm(sub(pts[i], pts[i0]));
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (best <= eps) throw std::invalid_argument("upper_hull3: all points coincide");

  std::size_t i2 = i0;
  best = -1.0;
  const P3 dir = sub(pts[i1], pts[i0]);
  const double dlen = norm(dir);
  for (std::size_t i = 0; i < n; ++i) {
    double d = norm(cross(dir, sub(pts[i], pts[i0]))) / dlen;
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= eps) throw std::invalid_argument("upper_hull3: points are collinear");

  P3 base_n = cross(dir, sub(pts[i2], pts[i0]));
  double blen = norm(base_n);
  base_n = {base_n[0] / blen, base_n[1] / blen, base_n[2] / blen};
  std::size_t i3 = i0;
  best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::abs(dot(base_n, sub(pts[i], pts[i0])));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= eps) {
    // Coplanar cloud: the whole surface is one affine function.
    if (std::abs(base_n[2]) <= 1e-14) {
      throw std::invalid_argument("upper_hull3: coplanar cloud with vertical plane");
    }
    Face f{i0, i1, i2, base_n, dot(base_n, pts[i0])};
    if (f.n[2] < 0.0) {
      f.n = {-f.n[0], -f.n[1], -f.n[2]};
      f.off = -f.off;
      std::swap(f.b, f.c);
    }
    return {face_to_plane(f)};
  }

  P3 interior{(pts[i0][0] + pts[i1][0] + pts[i2][0] + pts[i3][0]) / 4.0,
              (pts[i0][1] + pts[i1][1] + pts[i2][1] + pts[i3][1]) / 4.0,
              (pts[i0][2] + pts[i1][2] + pts[i2][2] + pts[i3][2]) / 4.0};

  std::vector<Face> faces;
  faces.reserve(4 * n);
  faces.push_back(make_face(pts, i0, i1, i2, interior));
  faces.push_back(make_face(pts, i0, i1, i3, interior));
  faces.push_back(make_face(pts, i0, i2, i3, interior));
  faces.push_back(make_face(pts, i1, i2, i3, interior));

  // Deterministically shuffled insertion order.
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != i0 && i != i1 && i != i2 && i != i3) order.push_back(i);
  }
  for (std::size_t i = order.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(mix64(0x5eedULL + i) % i);
    std::swap(order[i - 1], order[j]);
  }

  std::vector<std::size_t> visible;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t p : order) {
    visible.clear();
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
      const Face& f = faces[fi];
      if (f.alive && dot(f.n, pts[p]) - f.off > eps) visible.push_back(fi);
    }
    if (visible.empty()) continue;  // interior (or on the surface)

    edges.clear();
    for (std::size_t fi : visible) {
      const Face& f = faces[fi];
      edges.emplace_back(f.a, f.b);
      edges.emplace_back(f.b, f.c);
      edges.emplace_back(f.c, f.a);
      faces[fi].alive = false;
    }
    // Horizon edges are those whose reverse is not among the visible edges.
    std::sort(edges.begin(), edges.end());
    for (const auto& [u, v] : edges) {
      if (std::binary_search(edges.begin(), edges.end(), std::make_pair(v, u))) {
        continue;
      }
      faces.push_back(make_face(pts, u, v, p, interior));
    }
  }

  std::vector<Plane> upper;
  for (const Face& f : faces) {
    if (f.alive && f.n[2] > 1e-9) upper.push_back(face_to_plane(f));
  }
  if (upper.empty()) throw std::runtime_error("upper_hull3: no upward facet found");
  return upper;
}

double eval_planes(const std::vector<Plane>& planes, double x, double y) {
  double best = std::numeric_limits<double>::infinity();
  for (const Plane& pl : planes) {
    best = std::min(best, pl.a * x + pl.b * y + pl.c);
  }
  return best;
}

}  // namespace persuade
