#pragma once

#include "convexa/kernel.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace convexa {

// ---------------------------------------------------------------------------
// Base surfaces (2-dimensional spaces)

enum class SurfaceKind { RoundSphere, CappedCylinder, FlatPlane };

struct ChartRect {
  double u0, u1, v0, v1;
};

class Surface2D : public AmbientSpace {
 public:
  int chart_dim() const override { return 2; }
  virtual SurfaceKind kind() const = 0;
  // Closed-form Gaussian curvature of the model.
  virtual double gauss_curvature(const Vec& p) const = 0;
  // Chart rectangle away from coordinate singularities, used for curvature sampling.
  virtual ChartRect sample_domain() const = 0;
};

// Round sphere of the given radius in the polar chart (θ, φ); φ is 2π-periodic.
class RoundSphere final : public Surface2D {
 public:
  explicit RoundSphere(double radius = 1.0);

  std::string id() const override;
  SurfaceKind kind() const override { return SurfaceKind::RoundSphere; }
  Mat metric(const Vec& p) const override;
  std::optional<ChristoffelAtPoint> analytic_christoffel(const Vec& p) const override;
  void check_point(const Vec& p) const override;
  std::vector<double> periods() const override;
  double gauss_curvature(const Vec& p) const override;
  ChartRect sample_domain() const override;

  double radius() const { return radius_; }
  // Chart ↔ unit vector in R^3 (θ from +z, φ from +x).
  static Vec chart_from_unit(const Eigen::Vector3d& n);
  static Eigen::Vector3d unit_from_chart(const Vec& p);

 private:
  double radius_;
};

// Revolution profile ds² + f(s)² dθ² for the capped cylinder: curvature K(s) is
// `flat_curvature` on |s| ≤ l/2, a quintic smoothstep of width `blend` up to the
// cap curvature, then constant; the cap curvature is tuned so the profile closes
// smoothly (f' = ∓1) at the poles.
class CappedProfile {
 public:
  CappedProfile(double length, double blend, double flat_curvature);

  double f(double s) const;
  double df(double s) const;
  double curvature(double s) const;  // K = −f''/f
  double pole() const { return pole_; }
  double cap_curvature() const { return cap_curvature_; }
  double length() const { return length_; }
  double blend() const { return blend_; }
  double flat_curvature() const { return flat_curvature_; }

 private:
  std::array<double, 2> state(double s) const;  // (f, f') for s ≥ 0
  std::array<double, 2> integrate_blend(double kc, std::vector<std::array<double, 2>>* table) const;

  double length_, blend_, flat_curvature_;
  double cap_curvature_ = 1.0;
  double cap_amplitude_ = 1.0, cap_phase_ = 0.0;
  double pole_ = 0.0;
  double node_step_ = 0.0;
  std::vector<std::array<double, 2>> nodes_;
};

// Capped cylinder C(l) ∪ S1 ∪ S2 in the chart (s, θ); θ is 2π-periodic.
class CappedCylinder final : public Surface2D {
 public:
  static constexpr double kDefaultFlatCurvature = 1e-3;
  CappedCylinder(double length, double blend, double flat_curvature = kDefaultFlatCurvature);

  std::string id() const override;
  SurfaceKind kind() const override { return SurfaceKind::CappedCylinder; }
  Mat metric(const Vec& p) const override;
  std::optional<ChristoffelAtPoint> analytic_christoffel(const Vec& p) const override;
  void check_point(const Vec& p) const override;
  std::vector<double> periods() const override;
  double gauss_curvature(const Vec& p) const override;
  ChartRect sample_domain() const override;

  const CappedProfile& profile() const { return profile_; }

 private:
  CappedProfile profile_;
};

class FlatPlane final : public Surface2D {
 public:
  std::string id() const override { return "flat"; }
  SurfaceKind kind() const override { return SurfaceKind::FlatPlane; }
  Mat metric(const Vec& p) const override;
  std::optional<ChristoffelAtPoint> analytic_christoffel(const Vec& p) const override;
  double gauss_curvature(const Vec&) const override { return 0.0; }
  ChartRect sample_domain() const override { return {-1.0, 1.0, -1.0, 1.0}; }
};

// ---------------------------------------------------------------------------
// Ambient 3-manifolds

struct Fiber {
  enum class Kind { Line, Circle } kind = Kind::Line;
  double period = 0.0;
};

// M² × R or M² × S¹ in the chart (u, v, t).
class ProductSpace final : public AmbientSpace {
 public:
  ProductSpace(std::shared_ptr<const Surface2D> base, Fiber fiber);

  std::string id() const override;
  int chart_dim() const override { return 3; }
  Mat metric(const Vec& p) const override;
  std::optional<ChristoffelAtPoint> analytic_christoffel(const Vec& p) const override;
  void check_point(const Vec& p) const override;
  std::vector<double> periods() const override;

  bool has_killing_field() const override { return true; }
  VectorFieldJet killing_jet(const Vec& p) const override;
  Vec killing_flow(const Vec& p, double t) const override;
  Mat killing_flow_differential(const Vec& p, double t) const override;
  std::optional<int> fiber_coordinate() const override { return 2; }

  const Surface2D& base() const { return *base_; }
  std::shared_ptr<const Surface2D> base_ptr() const { return base_; }
  const Fiber& fiber() const { return fiber_; }

 private:
  std::shared_ptr<const Surface2D> base_;
  Fiber fiber_;
};

// Nil₃(τ): R³ with dx² + dy² + (τ(y dx − x dy) + dz)².
class Heisenberg final : public AmbientSpace {
 public:
  explicit Heisenberg(double tau);

  std::string id() const override;
  int chart_dim() const override { return 3; }
  Mat metric(const Vec& p) const override;
  std::optional<ChristoffelAtPoint> analytic_christoffel(const Vec& p) const override;

  bool has_killing_field() const override { return true; }
  VectorFieldJet killing_jet(const Vec& p) const override;
  Vec killing_flow(const Vec& p, double t) const override;
  Mat killing_flow_differential(const Vec& p, double t) const override;
  std::optional<int> fiber_coordinate() const override { return 2; }

  double tau() const { return tau_; }

 private:
  double tau_;
};

struct BergerFrame {
  Vec e1, e2, v;
};

enum class BergerFrameIndex { E1 = 0, E2 = 1, V = 2 };

enum class ConnectionTable {
  Printed,     // the table exactly as published (second row's third slot read as ∇_{E2}V)
  LeviCivita,  // the Levi-Civita connection of the metric
};

// S³_B(κ,τ) kept extrinsically in R⁴ ≅ C² with |z|² + |w|² = 1. The metric is
// extended to R⁴∖{0} as a cone so that the radial direction is orthogonal to S³.
class BergerSphere final : public AmbientSpace {
 public:
  BergerSphere(double kappa, double tau);

  std::string id() const override;
  int chart_dim() const override { return 4; }
  Mat metric(const Vec& p) const override;
  std::optional<ChristoffelAtPoint> analytic_christoffel(const Vec& p) const override;
  void check_point(const Vec& p) const override;

  bool constrained() const override { return true; }
  Vec constraint_normal(const Vec& p) const override;
  Vec retract(const Vec& p) const override;
  double orientation() const override;

  bool has_killing_field() const override { return true; }
  VectorFieldJet killing_jet(const Vec& p) const override;
  Vec killing_flow(const Vec& p, double t) const override;
  Mat killing_flow_differential(const Vec& p, double t) const override;

  double kappa() const { return kappa_; }
  double tau() const { return tau_; }
  // 4τ²/κ − 1, the Hopf-direction deformation factor.
  double deformation() const { return 4.0 * tau_ * tau_ / kappa_ - 1.0; }

  // Coefficients of ∇_{E_i} E_j in the frame (E1, E2, V).
  Eigen::Vector3d connection(BergerFrameIndex i, BergerFrameIndex j,
                             ConnectionTable table = ConnectionTable::LeviCivita) const;

  // Multiplication by i on C², i.e. V(p) = J p.
  static Eigen::Matrix4d complex_structure();
  // The linear maps p ↦ E1(p), E2(p), V(p).
  static std::array<Eigen::Matrix4d, 3> frame_maps();

 private:
  double kappa_, tau_;
};

BergerFrame berger_frame(const Vec& p);
std::array<VectorFieldJet, 3> berger_frame_jets(const Vec& p);

// Unit vertical Killing field ξ at p.
Vec killing_field(const AmbientSpace& space, const Vec& p);

struct TauEstimate {
  double tau = 0.0;
  double residual = 0.0;      // |∇_X ξ − τ̂ X∧ξ| for the primary X
  double independence = 0.0;  // |τ̂(X₁) − τ̂(X₂)| over two horizontal directions
};

// τ̂ with ∇_X ξ = τ̂ X∧ξ for horizontal unit X.
TauEstimate tau_estimate(const AmbientSpace& space, const Vec& p,
                         ConnectionMode mode = ConnectionMode::Auto);

struct PinchingResult {
  double kappa_minus = 0.0;
  double kappa_plus = 0.0;
  double ratio = 0.0;
};

// Min/max Gaussian curvature over an n×n grid of the surface's sample domain.
PinchingResult pinching_ratio(const Surface2D& surface, int samples);

// Space grammar:
//   berger kappa=<f> tau=<f>
//   heisenberg tau=<f>
//   product base=(sphere r=<f> | capped l=<f> blend=<f> | flat) fiber=(line | circle period=<f>)
std::shared_ptr<const AmbientSpace> parse_space(const std::string& spec);
std::shared_ptr<const Surface2D> parse_base(const std::string& spec);

}  // namespace convexa
