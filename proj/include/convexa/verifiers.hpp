#pragma once

#include "convexa/immersion.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace convexa {

struct VerificationReport {
  std::string check;
  std::map<std::string, double> params;
  double max_residual = 0.0;
  double slack = 0.0;  // min over samples of (bound − quantity); +inf when no bound applies
  bool pass = false;
  std::vector<std::string> notes;
  std::map<std::string, double> metrics;  // named sub-results
};

nlohmann::json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Berger equators

// −4τ²(κ−4τ²)² cos⁴x / (κ + 4τ² − (κ−4τ²) cos 2x)²
double equator_Ke_closed_form(double kappa, double tau, double x);
// |κ − 4τ²| / (4|τ|)
double equator_curvature_bound(double kappa, double tau);

struct EquatorTolerances {
  double mean_curvature = 1e-6;
  double ke_relative = 1e-4;
  double bound = 1e-6;
  double attainment = 1e-4;
};

// Oracle sweep over an n×n grid of [0,2π]²: H = 0, K_e against the closed form,
// |k_i| ≤ bound with equality where |cos x| = 1. Singular samples (cos x = 0) are skipped.
VerificationReport verify_equator(double kappa, double tau, double theta, int grid,
                                  const EquatorTolerances& tol = {});

// Curvature profile in x is the same for every θ.
VerificationReport equator_theta_invariance(double kappa, double tau,
                                            const std::vector<double>& thetas, int grid,
                                            double tol = 1e-8);

struct ProfileRow {
  double x, k1, k2, H, Ke_oracle, Ke_closed;
};
std::vector<ProfileRow> equator_profile(double kappa, double tau, double theta, int samples,
                                        double y = 0.3);

struct IIAdjudication {
  // identity residual max |K_e E G + f_c²| / max(|K_e E G|, floor) for each candidate
  double printed_identity_residual = 0.0;
  double implied_identity_residual = 0.0;
  // max relative distance of each candidate to the oracle |II(ψx,ψy)|
  double printed_oracle_residual = 0.0;
  double implied_oracle_residual = 0.0;
  double factor = 0.0;           // printed / implied, averaged over samples
  double factor_deviation = 0.0;  // max relative deviation of that ratio from κ²
  std::string matching;           // "printed", "implied", "both (indistinguishable)", "none"
  VerificationReport report;
};

// Printed: 4α(κ−4τ²)cos³x. Implied: sgn((κ−4τ²)cos³x)·√(−K_e E G) with the printed
// K_e and the closed-form E = 4/κ, G = 4τ²cos²x/(κα²).
double equator_II_printed(double kappa, double tau, double x);
double equator_II_implied(double kappa, double tau, double x);
IIAdjudication adjudicate_II_coefficient(double kappa, double tau, int grid, double theta = 0.0,
                                         double tol = 1e-4);

// ---------------------------------------------------------------------------
// Heisenberg planes

struct PlaneCoefficients {
  double a, b, c, d;
};

// max |k_i| ≤ |τ| + 1e-6 over the grid on the patch [−extent, extent]²; vertical
// planes (c = 0) must also have |H| < 1e-7.
VerificationReport heisenberg_plane_bound(double tau, const PlaneCoefficients& plane, int grid,
                                          double extent = 1.0);

// ---------------------------------------------------------------------------
// Comparability, pinching, diameter

// a² = (4/κ)(1 + |4τ²/κ − 1|)
double comparability_constant(double kappa, double tau);
// a²·I − g_B positive semidefinite and ⟨X,X⟩_B ≤ a²‖X‖² at random samples.
VerificationReport comparability_check(double kappa, double tau, int samples, unsigned seed = 1);

struct PinchingInequality {
  double ratio = 0.0;
  bool contradiction_possible = false;  // κ⁻/κ⁺ ≤ 1/4
  double lower = 0.0;                    // l ≥ 2π/√κ⁺
  double upper = 0.0;                    // l ≤ π/√κ⁻
  double slack = 0.0;                    // upper − lower
  bool compatible = false;               // some l satisfies both
};
PinchingInequality pinching_inequality_check(double kappa_minus, double kappa_plus);

double bonnet_diameter_bound(double c);
// π/2 − π/c: the largest ε with π/c < π/2 − ε (κ⁺ = 1); ≤ 0 when c ≤ 2.
double disk_radius_margin(double c);

// ---------------------------------------------------------------------------
// Convex curves in the flat plane

using Polyline = std::vector<Eigen::Vector2d>;

// Exterior turning angle over mean adjacent edge length at each vertex of a closed polyline.
std::vector<double> discrete_curvature(const Polyline& closed);

struct Circle {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.0;
};
Circle minimal_enclosing_circle(const Polyline& points);

struct CurveRadiusCheck {
  double min_curvature = 0.0;
  Circle enclosing;
  double tolerance = 0.0;  // 2 × longest segment
  double limit = 0.0;      // 1/c
  bool certified = false;  // enclosing radius ≤ 1/c + tolerance
};
// Throws InputError when some vertex has discrete curvature below c.
CurveRadiusCheck convex_curve_radius_check(const Polyline& closed, double c);

Polyline circle_polyline(double radius, int segments, Eigen::Vector2d center = Eigen::Vector2d::Zero());
Polyline ellipse_polyline(double a, double b, int segments);

}  // namespace convexa
