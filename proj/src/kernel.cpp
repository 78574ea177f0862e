#include "convexa/kernel.hpp"

#include <cmath>
#include <sstream>

namespace convexa {

namespace {

constexpr double kDefaultStep = 1e-5;
constexpr double kDegenerateGram = 1e-10;
constexpr double kMaxSpeedDrift = 1e-3;

void check_vec(const AmbientSpace& space, const Vec& v, const char* what) {
  if (v.size() != space.chart_dim()) {
    std::ostringstream os;
    os << what << " has " << v.size() << " components, space " << space.id() << " expects "
       << space.chart_dim();
    throw InputError(os.str());
  }
}

double scaled_step(double h, double coordinate) { return h * std::max(1.0, std::abs(coordinate)); }

// Determinant of the 4x4 matrix with columns a, b, c and the unit vector e_k.
double det4_with_unit(const Vec& a, const Vec& b, const Vec& c, int k) {
  Eigen::Matrix4d m;
  m.col(0) = a;
  m.col(1) = b;
  m.col(2) = c;
  m.col(3) = Eigen::Vector4d::Unit(k);
  return m.determinant();
}

// Unit metric normal to a constrained chart's hypersurface.
Vec unit_metric_normal(const AmbientSpace& space, const Vec& p) {
  const Mat g = space.metric(p);
  const Vec m = g.ldlt().solve(space.constraint_normal(p));
  return m / std::sqrt(m.dot(g * m));
}

}  // namespace

Vec ChristoffelAtPoint::contract(const Vec& x, const Vec& y) const {
  Vec out = Vec::Zero(dim_);
  for (int k = 0; k < dim_; ++k) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      if (x[i] == 0.0) continue;
      for (int j = 0; j < dim_; ++j) s += (*this)(k, i, j) * x[i] * y[j];
    }
    out[k] = s;
  }
  return out;
}

double ChristoffelAtPoint::symmetry_defect() const {
  double worst = 0.0;
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        worst = std::max(worst, std::abs((*this)(k, i, j) - (*this)(k, j, i)));
  return worst;
}

void AmbientSpace::check_point(const Vec& p) const {
  check_vec(*this, p, "point");
  if (!p.allFinite()) throw InputError("point has non-finite coordinates");
}

Vec AmbientSpace::constraint_normal(const Vec& p) const {
  (void)p;
  throw InputError(id() + " has no constraint");
}

VectorFieldJet AmbientSpace::killing_jet(const Vec& p) const {
  (void)p;
  throw InputError(id() + " has no vertical Killing field");
}

Vec AmbientSpace::killing_flow(const Vec& p, double t) const {
  (void)p;
  (void)t;
  throw InputError(id() + " has no vertical Killing field");
}

Mat AmbientSpace::killing_flow_differential(const Vec& p, double t) const {
  (void)p;
  (void)t;
  throw InputError(id() + " has no vertical Killing field");
}

Vec project_tangent(const AmbientSpace& space, const Vec& p, const Vec& v) {
  if (!space.constrained()) return v;
  const Vec n = space.constraint_normal(p);
  const Vec m = space.metric(p).ldlt().solve(n);
  return v - (n.dot(v) / n.dot(m)) * m;
}

MetricAtPoint metric_at(const AmbientSpace& space, const Vec& p) {
  space.check_point(p);
  return {space.metric(p)};
}

double metric_apply(const AmbientSpace& space, const Vec& p, const Vec& x, const Vec& y) {
  space.check_point(p);
  check_vec(space, x, "X");
  check_vec(space, y, "Y");
  return x.dot(space.metric(p) * y);
}

double metric_apply(const AmbientSpace& space, const TangentVec& x, const TangentVec& y) {
  if (x.base.space_id != y.base.space_id || (x.base.coords - y.base.coords).norm() > 0.0)
    throw InputError("tangent vectors are based at different points");
  return metric_apply(space, x.base.coords, x.components, y.components);
}

ChristoffelAtPoint christoffel_fd(const AmbientSpace& space, const Vec& p, double h) {
  const int n = space.chart_dim();
  check_vec(space, p, "point");
  std::vector<Mat> dg(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    const double step = scaled_step(h, p[l]);
    Vec plus = p, minus = p;
    plus[l] += step;
    minus[l] -= step;
    dg[static_cast<size_t>(l)] = (space.metric(plus) - space.metric(minus)) / (2.0 * step);
  }
  const Mat ginv = space.metric(p).inverse();
  ChristoffelAtPoint gamma(n, ConnectionMode::FiniteDifference);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
          const double first = dg[static_cast<size_t>(i)](l, j) + dg[static_cast<size_t>(j)](l, i);
          s += ginv(k, l) * (first - dg[static_cast<size_t>(l)](i, j));
        }
        gamma(k, i, j) = 0.5 * s;
      }
  return gamma;
}

ChristoffelAtPoint christoffel(const AmbientSpace& space, const Vec& p, ConnectionMode mode) {
  check_vec(space, p, "point");
  if (mode == ConnectionMode::FiniteDifference) return christoffel_fd(space, p, kDefaultStep);
  if (auto analytic = space.analytic_christoffel(p)) return *analytic;
  if (mode == ConnectionMode::Analytic)
    throw InputError(space.id() + " supplies no analytic connection");
  return christoffel_fd(space, p, kDefaultStep);
}

Vec covariant_derivative(const AmbientSpace& space, const Vec& p, const Vec& x,
                         const VectorFieldJet& y, ConnectionMode mode) {
  check_vec(space, x, "X");
  if (y.value.size() != space.chart_dim() || y.jacobian.rows() != space.chart_dim() ||
      y.jacobian.cols() != space.chart_dim())
    throw InputError("vector field jet is missing or has the wrong shape");
  const ChristoffelAtPoint gamma = christoffel(space, p, mode);
  return project_tangent(space, p, y.jacobian * x + gamma.contract(x, y.value));
}

TangentVec covariant_derivative(const AmbientSpace& space, const TangentVec& x,
                                const VectorFieldJet& y, ConnectionMode mode) {
  return {covariant_derivative(space, x.base.coords, x.components, y, mode), x.base};
}

Vec wedge(const AmbientSpace& space, const Vec& p, const Vec& x, const Vec& y) {
  if (space.dim() != 3) throw InputError("wedge product needs a 3-dimensional space");
  const Mat g = space.metric(p);
  const double vol = space.orientation() * std::sqrt(g.determinant());
  Vec covector(space.chart_dim());
  if (!space.constrained()) {
    const Eigen::Vector3d a = x.head<3>(), b = y.head<3>();
    covector = a.cross(b);
  } else {
    const Vec nu = unit_metric_normal(space, p);
    for (int k = 0; k < 4; ++k) covector[k] = det4_with_unit(nu, x, y, k);
  }
  return g.ldlt().solve(vol * covector);
}

Vec rotate_quarter(const AmbientSpace& space, const Vec& p, const Vec& x) {
  if (space.chart_dim() != 2) throw InputError("quarter rotation needs a 2-dimensional chart");
  const Mat g = space.metric(p);
  Vec covector(2);
  covector << -x[1], x[0];
  return g.ldlt().solve(space.orientation() * std::sqrt(g.determinant()) * covector);
}

double sectional_curvature(const AmbientSpace& space, const Vec& p, const Vec& x_in,
                           const Vec& y_in) {
  space.check_point(p);
  check_vec(space, x_in, "X");
  check_vec(space, y_in, "Y");
  const Vec x = project_tangent(space, p, x_in);
  const Vec y = project_tangent(space, p, y_in);
  const Mat g = space.metric(p);
  const double xx = x.dot(g * x), yy = y.dot(g * y), xy = x.dot(g * y);
  const double gram = xx * yy - xy * xy;
  if (!(xx > 0.0 && yy > 0.0) || gram < kDegenerateGram * xx * yy)
    throw DegenerateError("sectional curvature of a degenerate plane");

  const ChristoffelAtPoint gamma = christoffel(space, p);
  auto directional = [&](const Vec& dir, const Vec& a, const Vec& b) {
    const double h = kDefaultStep * std::max(1.0, p.cwiseAbs().maxCoeff()) /
                     std::max(1e-300, dir.cwiseAbs().maxCoeff());
    // fourth-order central stencil
    auto at = [&](double s) { return christoffel(space, p + s * h * dir).contract(a, b); };
    return Vec((8.0 * (at(1.0) - at(-1.0)) - (at(2.0) - at(-2.0))) / (12.0 * h));
  };
  // R(X,Y)Y = (∂_X Γ)(Y,Y) − (∂_Y Γ)(X,Y) + Γ(X, Γ(Y,Y)) − Γ(Y, Γ(X,Y))
  const Vec rxyy = directional(x, y, y) - directional(y, x, y) +
                   gamma.contract(x, gamma.contract(y, y)) -
                   gamma.contract(y, gamma.contract(x, y));
  double k = rxyy.dot(g * x) / gram;

  if (space.constrained()) {
    // Gauss equation for the constraint hypersurface: h(U,W) = −⟨∇_U ν, W⟩.
    auto shape = [&](const Vec& u) {
      const double h = kDefaultStep / std::max(1e-300, u.cwiseAbs().maxCoeff());
      const Vec dnu =
          (unit_metric_normal(space, p + h * u) - unit_metric_normal(space, p - h * u)) /
          (2.0 * h);
      return Vec(dnu + gamma.contract(u, unit_metric_normal(space, p)));
    };
    const Vec sx = shape(x), sy = shape(y);
    const double hxx = -sx.dot(g * x), hyy = -sy.dot(g * y), hxy = -sx.dot(g * y);
    k += (hxx * hyy - hxy * hxy) / gram;
  }
  return k;
}

Curve geodesic_integrate(const AmbientSpace& space, const Vec& p, const Vec& v, double length,
                         double step) {
  space.check_point(p);
  check_vec(space, v, "velocity");
  if (!(step > 0.0)) throw InputError("geodesic step must be positive");
  if (!(length >= 0.0)) throw InputError("geodesic length must be non-negative");
  const Vec v0 = project_tangent(space, p, v);
  const double speed0 = std::sqrt(v0.dot(space.metric(p) * v0));
  if (!(speed0 > 0.0)) throw InputError("geodesic needs a nonzero initial velocity");

  const bool sphere_constraint = space.constrained();
  auto accel = [&](const Vec& x, const Vec& u) {
    Vec a = -christoffel(space, x).contract(u, u);
    if (!sphere_constraint) return a;
    // Tangential part from the ambient connection, normal part from |x| = const.
    a = project_tangent(space, x, a);
    const Vec n = space.constraint_normal(x);
    return Vec(a - (u.squaredNorm() / x.norm()) * n);
  };

  const int steps = std::max(1, static_cast<int>(std::ceil(length / step - 1e-12)));
  const double h = length / steps;
  Curve curve;
  Vec x = p, u = v0 / speed0;
  curve.points.push_back(x);
  curve.velocities.push_back(u);
  for (int s = 0; s < steps; ++s) {
    const Vec k1x = u, k1v = accel(x, u);
    const Vec k2x = u + 0.5 * h * k1v, k2v = accel(x + 0.5 * h * k1x, k2x);
    const Vec k3x = u + 0.5 * h * k2v, k3v = accel(x + 0.5 * h * k2x, k3x);
    const Vec k4x = u + h * k3v, k4v = accel(x + h * k3x, k4x);
    x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    u += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (sphere_constraint) {
      x = space.retract(x);
      u = project_tangent(space, x, u);
    }
    const double speed = std::sqrt(u.dot(space.metric(x) * u));
    const double drift = std::abs(speed - 1.0);
    curve.max_relative_speed_drift = std::max(curve.max_relative_speed_drift, drift);
    if (!(drift <= kMaxSpeedDrift))
      throw NumericalError("geodesic speed drift exceeded 1e-3; reduce the step");
    curve.points.push_back(x);
    curve.velocities.push_back(u);
  }
  return curve;
}

}  // namespace convexa
