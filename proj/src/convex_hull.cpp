#include "ubo/convex_hull.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

namespace ubo {

namespace {

using Eigen::Vector3d;
using Rational = boost::multiprecision::cpp_rational;

// Static filter constant from Shewchuk's robust predicates.
const double kOrientErrBound = (7.0 + 56.0 * 1.1102230246251565e-16) *
                               1.1102230246251565e-16;

int orient3d_exact(const Vector3d& a, const Vector3d& b, const Vector3d& c,
                   const Vector3d& d) {
  const Rational adx = Rational(a.x()) - Rational(d.x());
  const Rational ady = Rational(a.y()) - Rational(d.y());
  const Rational adz = Rational(a.z()) - Rational(d.z());
  const Rational bdx = Rational(b.x()) - Rational(d.x());
  const Rational bdy = Rational(b.y()) - Rational(d.y());
  const Rational bdz = Rational(b.z()) - Rational(d.z());
  const Rational cdx = Rational(c.x()) - Rational(d.x());
  const Rational cdy = Rational(c.y()) - Rational(d.y());
  const Rational cdz = Rational(c.z()) - Rational(d.z());
  const Rational det = adx * (bdy * cdz - bdz * cdy) +
                       ady * (bdz * cdx - bdx * cdz) +
                       adz * (bdx * cdy - bdy * cdx);
  // det here is det(a-d, b-d, c-d) = det(b-a, c-a, d-a) up to sign; align
  // with the double path below by negating.
  if (det > 0) return -1;
  if (det < 0) return 1;
  return 0;
}

}  // namespace

int orient3d_sign(const Vector3d& a, const Vector3d& b, const Vector3d& c,
                  const Vector3d& d) {
  const double adx = a.x() - d.x(), ady = a.y() - d.y(), adz = a.z() - d.z();
  const double bdx = b.x() - d.x(), bdy = b.y() - d.y(), bdz = b.z() - d.z();
  const double cdx = c.x() - d.x(), cdy = c.y() - d.y(), cdz = c.z() - d.z();

  const double det = adx * (bdy * cdz - bdz * cdy) +
                     ady * (bdz * cdx - bdx * cdz) +
                     adz * (bdx * cdy - bdy * cdx);
  const double permanent = std::abs(adx) * (std::abs(bdy * cdz) + std::abs(bdz * cdy)) +
                           std::abs(ady) * (std::abs(bdz * cdx) + std::abs(bdx * cdz)) +
                           std::abs(adz) * (std::abs(bdx * cdy) + std::abs(bdy * cdx));
  const double errbound = kOrientErrBound * permanent;
  if (det > errbound) return -1;  // det(a-d,...) > 0 means d below plane (a,b,c)
  if (det < -errbound) return 1;
  return orient3d_exact(a, b, c, d);
}

namespace {

struct Face {
  int a, b, c;
};

// Initial non-degenerate simplex, or empty when the set is affinely
// degenerate. Indices are deterministic (lowest candidates win).
std::vector<int> initial_simplex(const std::vector<Vector3d>& pts) {
  const int n = static_cast<int>(pts.size());

  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    const Vector3d& p = pts[i];
    const Vector3d& q = pts[i0];
    if (p.x() < q.x() || (p.x() == q.x() && (p.y() < q.y() ||
        (p.y() == q.y() && p.z() < q.z()))))
      i0 = i;
  }

  int i1 = -1;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).squaredNorm();
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (i1 < 0) return {};

  int i2 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).cross(pts[i1] - pts[i0]).squaredNorm();
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (i2 < 0) return {};

  int i3 = -1;
  best = 0.0;
  int best_sign = 0;
  for (int i = 0; i < n; ++i) {
    const Vector3d r = pts[i] - pts[i0];
    const double d =
        std::abs((pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).dot(r));
    if (d > best) {
      const int sign = orient3d_sign(pts[i0], pts[i1], pts[i2], pts[i]);
      if (sign != 0) {
        best = d;
        i3 = i;
        best_sign = sign;
      }
    }
  }
  if (i3 < 0) {
    // The double measure may be nonzero only for exactly coplanar points;
    // rescan with the exact test before declaring degeneracy.
    for (int i = 0; i < n; ++i) {
      const int sign = orient3d_sign(pts[i0], pts[i1], pts[i2], pts[i]);
      if (sign != 0) {
        i3 = i;
        best_sign = sign;
        break;
      }
    }
    if (i3 < 0) return {};
  }
  if (best_sign < 0) std::swap(i1, i2);
  return {i0, i1, i2, i3};
}

}  // namespace

double convex_hull_volume(const std::vector<Vector3d>& points) {
  if (points.size() < 4) return 0.0;
  const int n = static_cast<int>(points.size());

  const std::vector<int> simplex = initial_simplex(points);
  if (simplex.empty()) return 0.0;
  const int s0 = simplex[0], s1 = simplex[1], s2 = simplex[2], s3 = simplex[3];

  // Outward-oriented faces of the initial tetrahedron: the remaining vertex
  // sits on the negative side of each.
  std::vector<Face> faces = {{s0, s2, s1}, {s0, s1, s3}, {s1, s2, s3}, {s2, s0, s3}};
  const Vector3d interior =
      0.25 * (points[s0] + points[s1] + points[s2] + points[s3]);

  for (int p = 0; p < n; ++p) {
    if (p == s0 || p == s1 || p == s2 || p == s3) continue;

    std::vector<char> visible(faces.size(), 0);
    bool any_visible = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const int sign = orient3d_sign(points[faces[f].a], points[faces[f].b],
                                     points[faces[f].c], points[p]);
      visible[f] = sign > 0 ? 1 : 0;  // coplanar points add no volume
      any_visible |= visible[f];
    }
    if (!any_visible) continue;

    // Horizon: directed edges of visible faces whose twin is not visible.
    std::map<std::pair<int, int>, int> edge_count;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      const Face& face = faces[f];
      const std::pair<int, int> edges[3] = {
          {face.a, face.b}, {face.b, face.c}, {face.c, face.a}};
      for (const auto& e : edges) {
        ++edge_count[e];
        // A twin inside the visible region cancels this edge.
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& [e, cnt] : edge_count) {
      (void)cnt;
      if (!edge_count.count({e.second, e.first})) horizon.push_back(e);
    }

    std::vector<Face> next;
    next.reserve(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (!visible[f]) next.push_back(faces[f]);
    for (const auto& [u, v] : horizon) next.push_back({u, v, p});
    faces = std::move(next);
  }

  double six_volume = 0.0;
  for (const Face& f : faces) {
    const Vector3d a = points[f.a] - interior;
    const Vector3d b = points[f.b] - interior;
    const Vector3d c = points[f.c] - interior;
    six_volume += a.cross(b).dot(c);
  }
  return std::abs(six_volume) / 6.0;
}

}  // namespace ubo
