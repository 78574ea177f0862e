#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace convexa {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Raised on malformed input: dimension mismatch, points off the chart, bad specs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a geometric quantity is undefined (degenerate plane, immersion, normal).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a numerical procedure leaves its accuracy envelope.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChartPoint {
  Vec coords;
  std::string space_id;
};

struct TangentVec {
  Vec components;
  ChartPoint base;
};

struct MetricAtPoint {
  Mat g;
};

enum class ConnectionMode { Auto, Analytic, FiniteDifference };

// Levi-Civita connection coefficients Γ^k_{ij} at a point, stored k-major.
class ChristoffelAtPoint {
 public:
  ChristoffelAtPoint(int dim, ConnectionMode mode)
      : dim_(dim), mode_(mode), gamma_(static_cast<size_t>(dim * dim * dim), 0.0) {}

  int dim() const { return dim_; }
  ConnectionMode mode() const { return mode_; }

  double& operator()(int k, int i, int j) { return gamma_[index(k, i, j)]; }
  double operator()(int k, int i, int j) const { return gamma_[index(k, i, j)]; }

  // Γ^k_{ij} X^i Y^j
  Vec contract(const Vec& x, const Vec& y) const;

  // max_{k,i,j} |Γ^k_{ij} − Γ^k_{ji}|
  double symmetry_defect() const;

 private:
  size_t index(int k, int i, int j) const {
    return static_cast<size_t>((k * dim_ + i) * dim_ + j);
  }
  int dim_;
  ConnectionMode mode_;
  std::vector<double> gamma_;
};

// Value and first derivatives of a vector field at a point: jacobian(:, i) = ∂_i Y.
struct VectorFieldJet {
  Vec value;
  Mat jacobian;
};

// A Riemannian 3-manifold (or surface) presented in a single chart. Spaces whose
// chart is an ambient R^n with a constraint hypersurface (the Berger 3-sphere in
// R^4) report constrained() and supply the Euclidean constraint normal; their
// metric() must extend to a neighborhood of the constraint with that normal
// metric-orthogonal to the constraint.
class AmbientSpace {
 public:
  virtual ~AmbientSpace() = default;

  virtual std::string id() const = 0;
  virtual int chart_dim() const = 0;
  int dim() const { return constrained() ? chart_dim() - 1 : chart_dim(); }

  virtual Mat metric(const Vec& p) const = 0;
  virtual std::optional<ChristoffelAtPoint> analytic_christoffel(const Vec& p) const {
    (void)p;
    return std::nullopt;
  }

  // Throws InputError when p is not a valid chart point.
  virtual void check_point(const Vec& p) const;

  virtual bool constrained() const { return false; }
  virtual Vec constraint_normal(const Vec& p) const;
  // Maps a nearby point back onto the constraint.
  virtual Vec retract(const Vec& p) const { return p; }

  // +1 when the chart's coordinate orientation is the space orientation.
  virtual double orientation() const { return 1.0; }

  // Period of each chart coordinate (0 = not periodic).
  virtual std::vector<double> periods() const {
    return std::vector<double>(static_cast<size_t>(chart_dim()), 0.0);
  }

  // Killing structure (vertical unit Killing field ξ). Absent by default.
  virtual bool has_killing_field() const { return false; }
  virtual VectorFieldJet killing_jet(const Vec& p) const;
  virtual Vec killing_flow(const Vec& p, double t) const;
  virtual Mat killing_flow_differential(const Vec& p, double t) const;
  // Chart index of the fiber coordinate for trivial fibrations (products, Nil).
  virtual std::optional<int> fiber_coordinate() const { return std::nullopt; }
};

// Tangent-space projection for constrained charts; identity otherwise.
Vec project_tangent(const AmbientSpace& space, const Vec& p, const Vec& v);

double metric_apply(const AmbientSpace& space, const TangentVec& x, const TangentVec& y);
double metric_apply(const AmbientSpace& space, const Vec& p, const Vec& x, const Vec& y);
MetricAtPoint metric_at(const AmbientSpace& space, const Vec& p);

// Central differences of the metric, step h scaled by max(1, |p_i|).
ChristoffelAtPoint christoffel_fd(const AmbientSpace& space, const Vec& p, double h = 1e-5);
ChristoffelAtPoint christoffel(const AmbientSpace& space, const Vec& p,
                               ConnectionMode mode = ConnectionMode::Auto);

// (∇_X Y)^k = X(Y^k) + Γ^k_{ij} X^i Y^j, projected to the constraint's tangent space.
Vec covariant_derivative(const AmbientSpace& space, const Vec& p, const Vec& x,
                         const VectorFieldJet& y, ConnectionMode mode = ConnectionMode::Auto);
TangentVec covariant_derivative(const AmbientSpace& space, const TangentVec& x,
                                const VectorFieldJet& y,
                                ConnectionMode mode = ConnectionMode::Auto);

// Oriented cross product in the (3-dimensional) tangent space: the unique Z with
// ⟨Z, W⟩ = vol(X, Y, W). Only defined when dim() == 3.
Vec wedge(const AmbientSpace& space, const Vec& p, const Vec& x, const Vec& y);

// Metric rotation by +π/2 in a 2-dimensional space.
Vec rotate_quarter(const AmbientSpace& space, const Vec& p, const Vec& x);

// ⟨R(X,Y)Y, X⟩ / (|X|²|Y|² − ⟨X,Y⟩²), with R assembled from differentiated
// Christoffels; constrained spaces get the Gauss-equation correction.
double sectional_curvature(const AmbientSpace& space, const Vec& p, const Vec& x, const Vec& y);

struct Curve {
  std::vector<Vec> points;
  std::vector<Vec> velocities;
  double max_relative_speed_drift = 0.0;
};

// RK4 on the geodesic equation. Throws NumericalError when the relative speed
// drift exceeds 1e-3.
Curve geodesic_integrate(const AmbientSpace& space, const Vec& p, const Vec& v, double length,
                         double step);

}  // namespace convexa
