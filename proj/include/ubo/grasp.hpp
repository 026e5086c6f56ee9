#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "ubo/geometry.hpp"
#include "ubo/gp.hpp"

namespace ubo {

/// Planar object cross-section. Boundary is a simple CCW polygon in meters.
struct ObjectShape {
  Polygon boundary;
  std::string name;

  ObjectShape() = default;
  ObjectShape(Polygon poly, std::string shape_name);
};

/// Relative rotation applied at a joint, linear in the synergy parameter
/// s in [0,1] (monotone in every joint by construction).
struct FingerJoint {
  double open_angle = 0.0;
  double closed_angle = 0.0;
  double angle(double s) const {
    return open_angle + s * (closed_angle - open_angle);
  }
};

/// Serial chain anchored on the palm. Link k points along
/// base_direction + sum of joint angles 0..k.
struct Finger {
  Vec2 base = Vec2::Zero();  // palm frame
  double base_direction = 0.0;
  std::vector<double> link_lengths;
  std::vector<FingerJoint> joints;  // one per link
};

struct HandModel {
  Segment palm{Vec2::Zero(), Vec2::Zero()};  // palm frame
  double approach_direction = 0.0;           // palm frame, informational
  std::vector<Finger> fingers;

  int joint_count() const;
  /// Link segments of one finger at synergy s, in world coordinates.
  std::vector<Segment> finger_links(std::size_t finger, double s,
                                    const Pose2& pose) const;
  Segment palm_segment(const Pose2& pose) const;

  /// Default hand: two opposing two-link fingers on an 8 cm palm, closing
  /// toward each other. 4 joints total.
  static HandModel pinch_hand();
};

/// Search-space definition: offsets from the canonical pose. 2-D mode maps
/// u to (dx, dy); 3-D mode to (dx, dy, dtheta). Every range is symmetric
/// about zero.
struct PoseBounds {
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;  // radians; only used in 3-D mode
};

struct PoseOffsets {
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;
};

struct GraspScene {
  ObjectShape object;
  HandModel hand;
  Pose2 canonical_pose;
  int dimension = 2;  // 2 or 3
  PoseBounds bounds;
  double friction_coefficient = 0.5;
  double torque_scale = 0.0;  // defaults to max centroid-to-boundary distance

  int dim() const { return dimension; }
  PoseOffsets map_unit(const Vector& u) const;
  Pose2 offset_pose(const PoseOffsets& offsets) const;
  double effective_torque_scale() const;
};

struct Contact {
  Vec2 point = Vec2::Zero();    // world frame
  Vec2 normal = Vec2::Zero();   // unit inward surface normal
};

struct GraspOutcome {
  double quality = 0.0;
  int colliding_joints = 0;
  std::vector<Contact> contacts;
  bool collided = false;
};

/// Maps u through the scene bounds, composes with the canonical pose, and
/// counts joints whose adjacent links (open-hand posture) cross or lie
/// inside the object. The palm counts as the link before each finger's base
/// joint.
std::pair<Pose2, int> place_hand(const GraspScene& scene, const Vector& u);

/// Closes the fingers from s = 0 in steps of 1e-3; each finger freezes the
/// first time one of its links comes within 1e-6 m of the boundary, with the
/// touch instant bisected inside the bracketing step. One contact per
/// touching link. Requires a collision-free pose.
std::vector<Contact> close_fingers(const GraspScene& scene, const Pose2& pose);

/// Friction-cone edge wrenches (fx, fy, tau/rho) for contacts given relative
/// to the object centroid; forces are unit magnitude.
std::vector<Eigen::Vector3d> contact_wrenches(
    const std::vector<Contact>& contacts, double friction_coefficient,
    double torque_scale);

/// Grasp Wrench Volume: volume of the convex hull of the wrench set unioned
/// with the origin.
double grasp_wrench_volume(const std::vector<Eigen::Vector3d>& wrenches);

/// Full pipeline: place, bail out on collision, close fingers, hull volume.
GraspOutcome evaluate_grasp(const GraspScene& scene, const Vector& u);

/// Bundled test scenes ("glass", "bottle", "mug") in 2-D or 3-D mode.
GraspScene make_scene(const std::string& object_name, int dimension);

constexpr double kSynergyStep = 1e-3;
constexpr double kTouchTolerance = 1e-6;

}  // namespace ubo
