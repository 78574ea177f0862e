#pragma once

#include "convexa/spaces.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace convexa {

struct Rect {
  double u0, u1, v0, v1;
};

// Position and chart derivatives of ψ at (u, v).
struct SurfaceJet {
  Vec point, du, dv, duu, duv, dvv;
};

enum class SurfaceFamily { Equator, AffinePlane, VerticalPlane, RotationalSphere, Graph, Custom };

std::string to_string(SurfaceFamily family);

class ParametricSurface {
 public:
  using Map = std::function<Vec(double, double)>;
  using JetProvider = std::function<SurfaceJet(double, double)>;
  // A vector the unit normal should have positive inner product with.
  using NormalHint = std::function<Vec(const SurfaceJet&, double, double)>;

  ParametricSurface(std::string name, SurfaceFamily family, Rect domain, Map map,
                    std::optional<JetProvider> jets = std::nullopt);

  const std::string& name() const { return name_; }
  SurfaceFamily family() const { return family_; }
  const Rect& domain() const { return domain_; }

  Vec operator()(double u, double v) const { return map_(u, v); }
  // Analytic jets when supplied, else Richardson-extrapolated central differences
  // with base step 1e-4 (periodic chart coordinates are unwrapped).
  SurfaceJet jet(double u, double v) const;
  bool analytic_jets() const { return jets_.has_value(); }

  void set_chart_periods(std::vector<double> periods) { periods_ = std::move(periods); }
  void set_normal_hint(NormalHint hint) { hint_ = std::move(hint); }
  const std::optional<NormalHint>& normal_hint() const { return hint_; }

 private:
  std::string name_;
  SurfaceFamily family_;
  Rect domain_;
  Map map_;
  std::optional<JetProvider> jets_;
  std::optional<NormalHint> hint_;
  std::vector<double> periods_;
};

struct FundamentalForms {
  double E = 0, F = 0, G = 0;
  double e = 0, f = 0, g = 0;
};

struct ShapeReport {
  double u = 0, v = 0;
  FundamentalForms forms;
  double k1 = 0, k2 = 0;  // k1 ≤ k2
  double H = 0;
  double Ke = 0;
  std::optional<double> nu;
  Vec normal;
};

struct AngleFunction {
  double nu = 0;
  Vec T;
};

FundamentalForms first_form(const ParametricSurface& s, const AmbientSpace& space, double u, double v);
Vec unit_normal(const ParametricSurface& s, const AmbientSpace& space, double u, double v);
ShapeReport shape_report(const ParametricSurface& s, const AmbientSpace& space, double u, double v,
                         ConnectionMode mode = ConnectionMode::Auto);
AngleFunction angle_function(const ParametricSurface& s, const AmbientSpace& space, double u,
                             double v);

struct Grid {
  int nu = 0, nv = 0;
};

// Sample (i, j) of an inclusive nu × nv grid over the domain.
std::pair<double, double> grid_sample(const Rect& r, const Grid& grid, int i, int j);

enum class ConvexityCriterion { Positive, KillingBound, BergerBound };

ConvexityCriterion parse_criterion(const std::string& name);
std::string to_string(ConvexityCriterion c);

struct ConvexitySample {
  double u, v;
  double k1, k2;
  double margin;  // smallest (quantity − bound) at the sample
};

struct ConvexityResult {
  ConvexityCriterion criterion;
  double bound = 0;
  int samples = 0;
  int skipped = 0;  // degenerate immersion samples
  double min_margin = 0;
  std::vector<ConvexitySample> failures;
  bool all_pass() const { return failures.empty(); }
};

// positive:      k_i > 0
// killing-bound: k_i > |τ|
// berger-bound:  |k_i| ≥ |κ − 4τ²| / (4|τ|)
// Strict inequalities need margin > slack, the non-strict one margin ≥ −slack.
ConvexityResult convexity_predicate(const ParametricSurface& s, const AmbientSpace& space,
                                    ConvexityCriterion criterion, const Grid& grid,
                                    double slack = 1e-9);

// ---------------------------------------------------------------------------
// Surface families

// ψ(x,y) = (cos x sin y, cos x cos y, sin x sin θ, sin x cos θ) in S³_B(κ,τ); the
// normal is oriented like −α(cos x sin(y+θ)E1 + cos x cos(y+θ)E2 − (κ/4τ²) sin x V).
ParametricSurface equator_surface(double kappa, double tau, double theta);
// The closed-form unit normal above, at (x, y).
Vec equator_reference_normal(double kappa, double tau, double theta, double x, double y);
double equator_alpha(double kappa, double tau, double x);

// Affine plane a x + b y + c z = d over [−R,R]² in an orthonormal (Euclidean) frame of the plane.
ParametricSurface affine_plane(double a, double b, double c, double d, double half_extent = 1.0);
// Vertical plane over the base line through the origin with direction angle `dir`.
ParametricSurface vertical_plane(double dir, double half_extent = 1.0);
// z = x² + y² over [−R,R]².
ParametricSurface paraboloid_graph(double half_extent = 1.0);
// Geodesic sphere of radius R about (θ0, φ0, t0) in S²(r) × R, as a function of
// (β, φ) ∈ [margin, π − margin] × [0, 2π]; normal points inward.
ParametricSurface product_geodesic_sphere(double sphere_radius, double R, double theta0,
                                          double phi0, double t0);

// Surface grammar:
//   equator theta=<f>
//   heis-plane a=<f> b=<f> c=<f> d=<f> [extent=<f>]
//   vertical-plane dir=<f> [extent=<f>]
ParametricSurface parse_surface(const std::string& spec, const AmbientSpace& space);

}  // namespace convexa
