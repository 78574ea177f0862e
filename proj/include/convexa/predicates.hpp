#pragma once

#include <Eigen/Dense>

namespace convexa {

// Exact signs of the orientation determinants: a floating-point filter with a rational
// fallback. orient3d > 0 when d lies below the plane through a, b, c (counterclockwise
// seen from above); orient2d > 0 for a left turn.
int orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c);
int orient3d(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
             const Eigen::Vector3d& d);

// Closed segment against closed triangle; touching counts as intersecting.
bool segment_meets_triangle(const Eigen::Vector3d& p, const Eigen::Vector3d& q,
                            const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                            const Eigen::Vector3d& c);
// Closed triangles; touching counts as intersecting.
bool triangles_intersect(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                         const Eigen::Vector3d& a2, const Eigen::Vector3d& b0,
                         const Eigen::Vector3d& b1, const Eigen::Vector3d& b2);

// Number of times the exact fallback ran in this thread (diagnostics).
long exact_fallback_count();

}  // namespace convexa
