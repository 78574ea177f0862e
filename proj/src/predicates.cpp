#include "convexa/predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace convexa {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;
constexpr double kErr2 = (3.0 + 16.0 * kEps) * kEps;
constexpr double kErr3 = (7.0 + 56.0 * kEps) * kEps;

thread_local long fallbacks = 0;

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

int orient2d_exact(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  ++fallbacks;
  const Rational ax = Rational(a.x()) - Rational(c.x()), ay = Rational(a.y()) - Rational(c.y());
  const Rational bx = Rational(b.x()) - Rational(c.x()), by = Rational(b.y()) - Rational(c.y());
  return sign_of(ax * by - ay * bx);
}

int orient3d_exact(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                   const Eigen::Vector3d& d) {
  ++fallbacks;
  std::array<std::array<Rational, 3>, 3> m;
  const Eigen::Vector3d* rows[3] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) m[i][k] = Rational((*rows[i])[k]) - Rational(d[k]);
  const Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return sign_of(det);
}

Eigen::Vector2d drop(const Eigen::Vector3d& p, int axis) {
  if (axis == 0) return {p.y(), p.z()};
  if (axis == 1) return {p.z(), p.x()};
  return {p.x(), p.y()};
}

bool on_segment_2d(const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& r) {
  // r collinear with p, q
  return std::min(p.x(), q.x()) <= r.x() && r.x() <= std::max(p.x(), q.x()) &&
         std::min(p.y(), q.y()) <= r.y() && r.y() <= std::max(p.y(), q.y());
}

bool segments_meet_2d(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                      const Eigen::Vector2d& q2) {
  const int d1 = orient2d(q1, q2, p1), d2 = orient2d(q1, q2, p2);
  const int d3 = orient2d(p1, p2, q1), d4 = orient2d(p1, p2, q2);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment_2d(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment_2d(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment_2d(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment_2d(p1, p2, q2)) return true;
  return false;
}

bool point_in_triangle_2d(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                          const Eigen::Vector2d& c) {
  const int s1 = orient2d(a, b, p), s2 = orient2d(b, c, p), s3 = orient2d(c, a, p);
  const bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
  const bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(has_neg && has_pos);
}

int dominant_axis(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  const Eigen::Vector3d n = (b - a).cross(c - a).cwiseAbs();
  int axis = 0;
  n.maxCoeff(&axis);
  return axis;
}

bool segment_meets_triangle_2d(const Eigen::Vector3d& p, const Eigen::Vector3d& q,
                               const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                               const Eigen::Vector3d& c) {
  const int ax = dominant_axis(a, b, c);
  const Eigen::Vector2d p2 = drop(p, ax), q2 = drop(q, ax);
  const Eigen::Vector2d a2 = drop(a, ax), b2 = drop(b, ax), c2 = drop(c, ax);
  return point_in_triangle_2d(p2, a2, b2, c2) || point_in_triangle_2d(q2, a2, b2, c2) ||
         segments_meet_2d(p2, q2, a2, b2) || segments_meet_2d(p2, q2, b2, c2) ||
         segments_meet_2d(p2, q2, c2, a2);
}

}  // namespace

int orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const double l = (a.x() - c.x()) * (b.y() - c.y());
  const double r = (a.y() - c.y()) * (b.x() - c.x());
  const double det = l - r;
  const double bound = kErr2 * (std::abs(l) + std::abs(r));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  if (l == 0.0 && r == 0.0) return 0;
  return orient2d_exact(a, b, c);
}

int orient3d(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
             const Eigen::Vector3d& d) {
  const Eigen::Vector3d ad = a - d, bd = b - d, cd = c - d;
  const double bdxcdy = bd.x() * cd.y(), cdxbdy = cd.x() * bd.y();
  const double cdxady = cd.x() * ad.y(), adxcdy = ad.x() * cd.y();
  const double adxbdy = ad.x() * bd.y(), bdxady = bd.x() * ad.y();
  const double det = ad.z() * (bdxcdy - cdxbdy) + bd.z() * (cdxady - adxcdy) + cd.z() * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(ad.z()) +
                           (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bd.z()) +
                           (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cd.z());
  const double bound = kErr3 * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  if (permanent == 0.0) return 0;
  return orient3d_exact(a, b, c, d);
}

bool segment_meets_triangle(const Eigen::Vector3d& p, const Eigen::Vector3d& q,
                            const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                            const Eigen::Vector3d& c) {
  const int sp = orient3d(a, b, c, p), sq = orient3d(a, b, c, q);
  if (sp == 0 && sq == 0) return segment_meets_triangle_2d(p, q, a, b, c);
  if (sp * sq > 0) return false;
  const int s1 = orient3d(p, q, a, b), s2 = orient3d(p, q, b, c), s3 = orient3d(p, q, c, a);
  const bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
  const bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(has_neg && has_pos);
}

bool triangles_intersect(const Eigen::Vector3d& a0, const Eigen::Vector3d& a1,
                         const Eigen::Vector3d& a2, const Eigen::Vector3d& b0,
                         const Eigen::Vector3d& b1, const Eigen::Vector3d& b2) {
  const int sb0 = orient3d(a0, a1, a2, b0), sb1 = orient3d(a0, a1, a2, b1),
            sb2 = orient3d(a0, a1, a2, b2);
  if ((sb0 > 0 && sb1 > 0 && sb2 > 0) || (sb0 < 0 && sb1 < 0 && sb2 < 0)) return false;
  if (sb0 == 0 && sb1 == 0 && sb2 == 0) {
    const int ax = dominant_axis(a0, a1, a2);
    const std::array<Eigen::Vector2d, 3> A{drop(a0, ax), drop(a1, ax), drop(a2, ax)};
    const std::array<Eigen::Vector2d, 3> B{drop(b0, ax), drop(b1, ax), drop(b2, ax)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (segments_meet_2d(A[i], A[(i + 1) % 3], B[j], B[(j + 1) % 3])) return true;
    return point_in_triangle_2d(A[0], B[0], B[1], B[2]) || point_in_triangle_2d(B[0], A[0], A[1], A[2]);
  }
  const int sa0 = orient3d(b0, b1, b2, a0), sa1 = orient3d(b0, b1, b2, a1),
            sa2 = orient3d(b0, b1, b2, a2);
  if ((sa0 > 0 && sa1 > 0 && sa2 > 0) || (sa0 < 0 && sa1 < 0 && sa2 < 0)) return false;
  return segment_meets_triangle(a0, a1, b0, b1, b2) || segment_meets_triangle(a1, a2, b0, b1, b2) ||
         segment_meets_triangle(a2, a0, b0, b1, b2) || segment_meets_triangle(b0, b1, a0, a1, a2) ||
         segment_meets_triangle(b1, b2, a0, a1, a2) || segment_meets_triangle(b2, b0, a0, a1, a2);
}

long exact_fallback_count() { return fallbacks; }

}  // namespace convexa
