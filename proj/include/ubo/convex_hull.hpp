#pragma once

#include <Eigen/Core>
#include <vector>

namespace ubo {

/// Volume of the convex hull of a 3-D point set. Returns 0 for fewer than
/// four points or affinely degenerate input. Incremental construction; the
/// orientation test uses a floating-point filter with an exact rational
/// fallback, so near-coplanar sets do not corrupt the hull.
double convex_hull_volume(const std::vector<Eigen::Vector3d>& points);

/// Sign of det(b-a, c-a, d-a): +1 when d lies on the positive side of the
/// oriented plane (a,b,c), -1 below, 0 exactly on it.
int orient3d_sign(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                  const Eigen::Vector3d& c, const Eigen::Vector3d& d);

}  // namespace ubo
