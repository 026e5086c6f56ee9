#include "ubo/grasp.hpp"

#include <cmath>
#include <stdexcept>

#include "ubo/convex_hull.hpp"
#include "ubo/mathutil.hpp"

namespace ubo {

ObjectShape::ObjectShape(Polygon poly, std::string shape_name)
    : boundary(std::move(poly)), name(std::move(shape_name)) {
  if (!boundary.is_ccw())
    throw std::invalid_argument("ObjectShape: boundary must be CCW");
  if (!boundary.is_simple())
    throw std::invalid_argument("ObjectShape: boundary self-intersects");
}

int HandModel::joint_count() const {
  int count = 0;
  for (const Finger& f : fingers) count += static_cast<int>(f.joints.size());
  return count;
}

Segment HandModel::palm_segment(const Pose2& pose) const {
  return {pose.apply(palm.a), pose.apply(palm.b)};
}

std::vector<Segment> HandModel::finger_links(std::size_t finger, double s,
                                             const Pose2& pose) const {
  const Finger& f = fingers.at(finger);
  std::vector<Segment> links;
  links.reserve(f.link_lengths.size());
  Vec2 p = pose.apply(f.base);
  double dir = pose.angle + f.base_direction;
  for (std::size_t k = 0; k < f.link_lengths.size(); ++k) {
    dir += f.joints[k].angle(s);
    const Vec2 q = p + f.link_lengths[k] * Vec2(std::cos(dir), std::sin(dir));
    links.push_back({p, q});
    p = q;
  }
  return links;
}

HandModel HandModel::pinch_hand() {
  HandModel hand;
  hand.palm = {Vec2(-0.04, 0.0), Vec2(0.04, 0.0)};
  hand.approach_direction = kPi / 2.0;

  Finger left;
  left.base = Vec2(-0.04, 0.0);
  left.base_direction = kPi / 2.0;
  left.link_lengths = {0.045, 0.035};
  left.joints = {{0.0, -1.75}, {0.0, -1.40}};

  Finger right = left;
  right.base = Vec2(0.04, 0.0);
  right.joints = {{0.0, 1.75}, {0.0, 1.40}};

  hand.fingers = {left, right};
  return hand;
}

PoseOffsets GraspScene::map_unit(const Vector& u) const {
  if (u.size() != dimension)
    throw std::invalid_argument("GraspScene: query dimension mismatch");
  PoseOffsets offsets;
  offsets.dx = (2.0 * u(0) - 1.0) * bounds.dx;
  offsets.dy = (2.0 * u(1) - 1.0) * bounds.dy;
  if (dimension == 3) offsets.dtheta = (2.0 * u(2) - 1.0) * bounds.dtheta;
  return offsets;
}

Pose2 GraspScene::offset_pose(const PoseOffsets& offsets) const {
  Pose2 pose = canonical_pose;
  pose.position += Vec2(offsets.dx, offsets.dy);
  pose.angle += offsets.dtheta;
  return pose;
}

double GraspScene::effective_torque_scale() const {
  if (torque_scale > 0.0) return torque_scale;
  return object.boundary.max_radius_from(object.boundary.centroid());
}

namespace {

// Adjacent links of every joint in the open-hand posture: the base joint of
// each finger neighbors the palm.
int count_colliding_joints(const GraspScene& scene, const Pose2& pose) {
  const Polygon& poly = scene.object.boundary;
  const Segment palm = scene.hand.palm_segment(pose);
  const bool palm_hit = poly.collides(palm);
  int n_j = 0;
  for (std::size_t f = 0; f < scene.hand.fingers.size(); ++f) {
    const std::vector<Segment> links = scene.hand.finger_links(f, 0.0, pose);
    std::vector<char> link_hit(links.size());
    for (std::size_t k = 0; k < links.size(); ++k)
      link_hit[k] = poly.collides(links[k]) ? 1 : 0;
    for (std::size_t k = 0; k < links.size(); ++k) {
      const bool prev_hit = (k == 0) ? palm_hit : link_hit[k - 1] != 0;
      if (prev_hit || link_hit[k]) ++n_j;
    }
  }
  return n_j;
}

}  // namespace

std::pair<Pose2, int> place_hand(const GraspScene& scene, const Vector& u) {
  const Pose2 pose = scene.offset_pose(scene.map_unit(u));
  return {pose, count_colliding_joints(scene, pose)};
}

namespace {

bool finger_touches(const GraspScene& scene, const Pose2& pose, std::size_t f,
                    double s) {
  const Polygon& poly = scene.object.boundary;
  for (const Segment& link : scene.hand.finger_links(f, s, pose))
    if (poly.boundary_distance(link) <= kTouchTolerance || poly.collides(link))
      return true;
  return false;
}

void append_finger_contacts(const GraspScene& scene, const Pose2& pose,
                            std::size_t f, double s,
                            std::vector<Contact>& contacts) {
  const Polygon& poly = scene.object.boundary;
  for (const Segment& link : scene.hand.finger_links(f, s, pose)) {
    if (poly.boundary_distance(link) <= kTouchTolerance || poly.collides(link)) {
      const Polygon::BoundaryPoint bp = poly.closest_boundary_point(link);
      contacts.push_back({bp.point, bp.inward_normal});
    }
  }
}

}  // namespace

std::vector<Contact> close_fingers(const GraspScene& scene, const Pose2& pose) {
  if (count_colliding_joints(scene, pose) > 0)
    throw std::logic_error("close_fingers: called on a colliding pose");

  const std::size_t finger_count = scene.hand.fingers.size();
  std::vector<char> frozen(finger_count, 0);
  std::vector<Contact> contacts;

  // Scan at the fixed increment; once a step brackets the first touch,
  // bisect the touch instant so the recorded contact is the tangency
  // configuration rather than a penetrated one. A link can sweep several
  // touch tolerances per increment, so the raw grid point would otherwise
  // land a full step's motion past the surface.
  const int steps = static_cast<int>(std::round(1.0 / kSynergyStep));
  for (std::size_t f = 0; f < finger_count; ++f)
    if (finger_touches(scene, pose, f, 0.0)) {
      frozen[f] = 1;
      append_finger_contacts(scene, pose, f, 0.0, contacts);
    }
  for (int step = 1; step <= steps; ++step) {
    const double s = step * kSynergyStep;
    bool all_frozen = true;
    for (std::size_t f = 0; f < finger_count; ++f) {
      if (frozen[f]) continue;
      if (finger_touches(scene, pose, f, s)) {
        frozen[f] = 1;
        double lo = s - kSynergyStep;
        double hi = s;
        while (hi - lo > 1e-12) {
          const double mid = 0.5 * (lo + hi);
          (finger_touches(scene, pose, f, mid) ? hi : lo) = mid;
        }
        append_finger_contacts(scene, pose, f, hi, contacts);
      } else {
        all_frozen = false;
      }
    }
    if (all_frozen) break;
  }
  return contacts;
}

std::vector<Eigen::Vector3d> contact_wrenches(
    const std::vector<Contact>& contacts, double friction_coefficient,
    double torque_scale) {
  if (torque_scale <= 0.0)
    throw std::invalid_argument("contact_wrenches: torque_scale must be > 0");
  std::vector<Eigen::Vector3d> wrenches;
  wrenches.reserve(2 * contacts.size());
  for (const Contact& contact : contacts) {
    if (contact.normal.norm() == 0.0)
      throw std::invalid_argument("contact_wrenches: zero contact normal");
    const Vec2 n = contact.normal.normalized();
    const Vec2 t = rot90(n);
    for (const double sign : {+1.0, -1.0}) {
      const Vec2 force = (n + sign * friction_coefficient * t).normalized();
      const double torque = cross2(contact.point, force);
      wrenches.emplace_back(force.x(), force.y(), torque / torque_scale);
    }
  }
  return wrenches;
}

double grasp_wrench_volume(const std::vector<Eigen::Vector3d>& wrenches) {
  std::vector<Eigen::Vector3d> points = wrenches;
  points.emplace_back(0.0, 0.0, 0.0);
  return convex_hull_volume(points);
}

GraspOutcome evaluate_grasp(const GraspScene& scene, const Vector& u) {
  GraspOutcome outcome;
  const auto [pose, n_j] = place_hand(scene, u);
  outcome.colliding_joints = n_j;
  if (n_j >= 1) {
    outcome.collided = true;
    return outcome;  // grasp not executed
  }
  outcome.contacts = close_fingers(scene, pose);
  if (outcome.contacts.empty()) return outcome;

  const Vec2 centroid = scene.object.boundary.centroid();
  std::vector<Contact> relative = outcome.contacts;
  for (Contact& c : relative) c.point -= centroid;
  outcome.quality = grasp_wrench_volume(contact_wrenches(
      relative, scene.friction_coefficient, scene.effective_torque_scale()));
  return outcome;
}

namespace {

Polygon glass_polygon() {
  return Polygon({{-0.022, -0.05},
                  {0.022, -0.05},
                  {0.03, -0.042},
                  {0.03, 0.042},
                  {0.022, 0.05},
                  {-0.022, 0.05},
                  {-0.03, 0.042},
                  {-0.03, -0.042}});
}

Polygon bottle_polygon() {
  return Polygon({{-0.0375, -0.09},
                  {0.0375, -0.09},
                  {0.035, -0.03},
                  {0.028, 0.02},
                  {0.015, 0.09},
                  {-0.015, 0.09},
                  {-0.028, 0.02},
                  {-0.035, -0.03}});
}

// Body with a hook-shaped handle on the right; the pocket between the body
// wall and the hook is reachable from above, so the polygon stays simple.
Polygon mug_polygon() {
  return Polygon({{-0.0325, -0.045},
                  {0.0325, -0.045},
                  {0.0325, -0.04},
                  {0.065, -0.04},
                  {0.065, 0.02},
                  {0.055, 0.02},
                  {0.055, -0.03},
                  {0.0325, -0.03},
                  {0.0325, 0.045},
                  {-0.0325, 0.045}});
}

constexpr double kPalmStandoff = 0.02;

}  // namespace

GraspScene make_scene(const std::string& object_name, int dimension) {
  if (dimension != 2 && dimension != 3)
    throw std::invalid_argument("make_scene: dimension must be 2 or 3");

  GraspScene scene;
  scene.hand = HandModel::pinch_hand();
  scene.dimension = dimension;

  // Rotation range is object-specific, like the translation bounds: wide for
  // the mug whose handle invites (and punishes) reoriented approaches,
  // narrow for the straight-walled glass where tilts only shift the pinch.
  if (object_name == "glass") {
    scene.object = ObjectShape(glass_polygon(), "glass");
    scene.bounds = {0.06, 0.05, kPi / 36.0};
  } else if (object_name == "bottle") {
    scene.object = ObjectShape(bottle_polygon(), "bottle");
    scene.bounds = {0.075, 0.05, kPi / 12.0};
  } else if (object_name == "mug") {
    scene.object = ObjectShape(mug_polygon(), "mug");
    scene.bounds = {0.075, 0.05, kPi / 3.0};
  } else {
    throw std::invalid_argument("make_scene: unknown object " + object_name);
  }
  if (dimension == 2) scene.bounds.dtheta = 0.0;

  double top = -1.0;
  for (const Vec2& v : scene.object.boundary.vertices())
    top = std::max(top, v.y());
  scene.canonical_pose = {Vec2(0.0, top + kPalmStandoff), kPi};
  return scene;
}

}  // namespace ubo
