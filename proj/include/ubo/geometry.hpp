#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace ubo {

using Vec2 = Eigen::Vector2d;

inline double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

inline Vec2 rot90(const Vec2& v) { return Vec2(-v.y(), v.x()); }

struct Segment {
  Vec2 a;
  Vec2 b;
};

struct Pose2 {
  Vec2 position = Vec2::Zero();
  double angle = 0.0;

  Vec2 apply(const Vec2& p) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return position + Vec2(c * p.x() - s * p.y(), s * p.x() + c * p.y());
  }
  Vec2 rotate(const Vec2& v) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return Vec2(c * v.x() - s * v.y(), s * v.x() + c * v.y());
  }
};

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b);
Vec2 closest_point_on_segment(const Vec2& p, const Vec2& a, const Vec2& b);
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                        const Vec2& d);
double dist_segment_segment(const Vec2& a, const Vec2& b, const Vec2& c,
                            const Vec2& d);

/// Simple CCW polygon.
class Polygon {
 public:
  Polygon() = default;
  explicit Polygon(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Segment edge(std::size_t i) const;

  double signed_area() const;
  Vec2 centroid() const;
  double max_radius_from(const Vec2& point) const;
  bool is_ccw() const { return signed_area() > 0.0; }
  bool is_simple() const;

  /// Boundary-inclusive point membership.
  bool contains(const Vec2& p) const;

  /// Min distance from a segment to the boundary; 0 when they cross.
  double boundary_distance(const Segment& s) const;

  /// True when the segment crosses the boundary or lies inside.
  bool collides(const Segment& s) const;

  struct BoundaryPoint {
    Vec2 point = Vec2::Zero();
    Vec2 inward_normal = Vec2::Zero();
    double distance = 0.0;
  };
  /// Closest boundary point to a segment, with the inward surface normal
  /// there (averaged at vertices).
  BoundaryPoint closest_boundary_point(const Segment& s) const;

 private:
  std::vector<Vec2> vertices_;
};

/// One "x y" vertex pair per line (meters, CCW); '#' starts a comment.
Polygon load_polygon(const std::string& path);
void save_polygon(const Polygon& poly, const std::string& path);

}  // namespace ubo
