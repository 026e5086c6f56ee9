#include "ubo/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ubo/errors.hpp"

namespace ubo {

namespace {

int orientation_sign(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = cross2(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment_collinear(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

}  // namespace

Vec2 closest_point_on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  return (p - closest_point_on_segment(p, a, b)).norm();
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                        const Vec2& d) {
  const int o1 = orientation_sign(a, b, c);
  const int o2 = orientation_sign(a, b, d);
  const int o3 = orientation_sign(c, d, a);
  const int o4 = orientation_sign(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment_collinear(a, b, c)) return true;
  if (o2 == 0 && on_segment_collinear(a, b, d)) return true;
  if (o3 == 0 && on_segment_collinear(c, d, a)) return true;
  if (o4 == 0 && on_segment_collinear(c, d, b)) return true;
  return false;
}

double dist_segment_segment(const Vec2& a, const Vec2& b, const Vec2& c,
                            const Vec2& d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  double best = dist_point_segment(a, c, d);
  best = std::min(best, dist_point_segment(b, c, d));
  best = std::min(best, dist_point_segment(c, a, b));
  best = std::min(best, dist_point_segment(d, a, b));
  return best;
}

Polygon::Polygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3)
    throw std::invalid_argument("Polygon: fewer than 3 vertices");
}

Segment Polygon::edge(std::size_t i) const {
  return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
}

double Polygon::signed_area() const {
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Segment e = edge(i);
    twice += cross2(e.a, e.b);
  }
  return 0.5 * twice;
}

Vec2 Polygon::centroid() const {
  double twice_area = 0.0;
  Vec2 acc = Vec2::Zero();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Segment e = edge(i);
    const double w = cross2(e.a, e.b);
    twice_area += w;
    acc += w * (e.a + e.b);
  }
  return acc / (3.0 * twice_area);
}

double Polygon::max_radius_from(const Vec2& point) const {
  double best = 0.0;
  for (const Vec2& v : vertices_) best = std::max(best, (v - point).norm());
  return best;
}

bool Polygon::is_simple() const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Skip adjacent edges (they share an endpoint by construction).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      const Segment e1 = edge(i);
      const Segment e2 = edge(j);
      if (segments_intersect(e1.a, e1.b, e2.a, e2.b)) return false;
    }
  }
  return true;
}

bool Polygon::contains(const Vec2& p) const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e = edge(i);
    if (orientation_sign(e.a, e.b, p) == 0 && on_segment_collinear(e.a, e.b, p))
      return true;  // boundary counts as inside
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& vi = vertices_[i];
    const Vec2& vj = vertices_[j];
    if ((vi.y() > p.y()) != (vj.y() > p.y())) {
      const double x_cross =
          vj.x() + (p.y() - vj.y()) / (vi.y() - vj.y()) * (vi.x() - vj.x());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

double Polygon::boundary_distance(const Segment& s) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Segment e = edge(i);
    best = std::min(best, dist_segment_segment(s.a, s.b, e.a, e.b));
    if (best == 0.0) break;
  }
  return best;
}

bool Polygon::collides(const Segment& s) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Segment e = edge(i);
    if (segments_intersect(s.a, s.b, e.a, e.b)) return true;
  }
  return contains(s.a) || contains(s.b);
}

Polygon::BoundaryPoint Polygon::closest_boundary_point(const Segment& s) const {
  // Crossing case first: the contact is where the segment enters the
  // boundary, i.e. the intersection with the smallest parameter along a->b.
  // (Penetration is bounded by one closing step, so this stays within a
  // step's motion of the true tangency and mirrors exactly on mirrored
  // scenes.)
  double best_t = std::numeric_limits<double>::infinity();
  Vec2 best_point = Vec2::Zero();
  std::size_t best_edge = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Segment e = edge(i);
    if (!segments_intersect(s.a, s.b, e.a, e.b)) continue;
    const Vec2 dir = s.b - s.a;
    const Vec2 edge_dir = e.b - e.a;
    const double denom = cross2(dir, edge_dir);
    double t;
    if (std::abs(denom) > 1e-300) {
      t = std::clamp(cross2(e.a - s.a, edge_dir) / denom, 0.0, 1.0);
    } else {
      t = 0.0;  // collinear overlap
    }
    if (t < best_t) {
      best_t = t;
      best_point = closest_point_on_segment(s.a + t * dir, e.a, e.b);
      best_edge = i;
    }
  }

  double best = std::numeric_limits<double>::infinity();
  if (best_t < std::numeric_limits<double>::infinity()) {
    best = 0.0;
  } else {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const Segment e = edge(i);
      // Closest pair between two non-crossing segments: one of the four
      // endpoint projections realizes it.
      const Vec2 pa = closest_point_on_segment(s.a, e.a, e.b);
      const Vec2 pb = closest_point_on_segment(s.b, e.a, e.b);
      const Vec2 qa = closest_point_on_segment(e.a, s.a, s.b);
      const Vec2 qb = closest_point_on_segment(e.b, s.a, s.b);
      const struct {
        Vec2 on_edge;
        double d;
      } candidates[] = {
          {pa, (pa - s.a).norm()},
          {pb, (pb - s.b).norm()},
          {e.a, (qa - e.a).norm()},
          {e.b, (qb - e.b).norm()},
      };
      for (const auto& candidate : candidates) {
        if (candidate.d < best) {
          best = candidate.d;
          best_point = candidate.on_edge;
          best_edge = i;
        }
      }
    }
  }

  BoundaryPoint result;
  result.point = best_point;
  result.distance = best;

  const Segment e = edge(best_edge);
  const Vec2 dir = (e.b - e.a).normalized();
  Vec2 normal = rot90(dir);  // CCW boundary: interior is to the left
  constexpr double kVertexTol = 1e-9;
  const bool at_a = (best_point - e.a).norm() < kVertexTol;
  const bool at_b = (best_point - e.b).norm() < kVertexTol;
  if (at_a || at_b) {
    const std::size_t n = vertices_.size();
    const std::size_t other = at_a ? (best_edge + n - 1) % n : (best_edge + 1) % n;
    const Segment e2 = edge(other);
    const Vec2 n2 = rot90((e2.b - e2.a).normalized());
    const Vec2 sum = normal + n2;
    if (sum.norm() > 1e-12) normal = sum.normalized();
  }
  result.inward_normal = normal;
  return result;
}

Polygon load_polygon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open polygon file: " + path);
  std::vector<Vec2> vertices;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double x, y;
    if (ss >> x >> y) {
      vertices.emplace_back(x, y);
    } else if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
      throw IoError("malformed polygon line " + std::to_string(line_no) +
                    " in " + path);
    }
  }
  Polygon poly(std::move(vertices));
  if (!poly.is_ccw())
    throw IoError("polygon file is not counter-clockwise: " + path);
  if (!poly.is_simple())
    throw IoError("polygon file self-intersects: " + path);
  return poly;
}

void save_polygon(const Polygon& poly, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write polygon file: " + path);
  for (const Vec2& v : poly.vertices())
    out << v.x() << " " << v.y() << "\n";
}

}  // namespace ubo
