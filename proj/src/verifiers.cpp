#include "convexa/verifiers.hpp"

#include "convexa/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace convexa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_equator_params(double kappa, double tau) {
  if (!(std::isfinite(kappa) && kappa > 0.0)) throw InputError("kappa must be positive");
  if (!std::isfinite(tau) || tau == 0.0) throw InputError("tau must be nonzero");
}

void require_grid(int grid) {
  if (grid < 2) throw InputError("grid needs at least 2 samples per side");
}

nlohmann::json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

double number_from(const nlohmann::json& j) {
  if (j.is_null()) return kInf;
  return j.get<double>();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["check"] = r.check;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.params) params[k] = number_or_null(v);
  j["params"] = params;
  j["max_residual"] = number_or_null(r.max_residual);
  j["slack"] = number_or_null(r.slack);
  j["pass"] = r.pass;
  j["notes"] = r.notes;
  nlohmann::json metrics = nlohmann::json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = number_or_null(v);
  j["metrics"] = metrics;
  return j;
}

VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport r;
  try {
    r.check = j.at("check").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) r.params[k] = number_from(v);
    r.max_residual = number_from(j.at("max_residual"));
    r.slack = number_from(j.at("slack"));
    r.pass = j.at("pass").get<bool>();
    if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("metrics"))
      for (const auto& [k, v] : j.at("metrics").items()) r.metrics[k] = number_from(v);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed verification report: ") + e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------

double equator_Ke_closed_form(double kappa, double tau, double x) {
  require_equator_params(kappa, tau);
  const double t2 = tau * tau, dk = kappa - 4.0 * t2;
  const double d = kappa + 4.0 * t2 - dk * std::cos(2.0 * x);
  const double c2 = std::cos(x) * std::cos(x);
  return -4.0 * t2 * dk * dk * c2 * c2 / (d * d);
}

double equator_curvature_bound(double kappa, double tau) {
  require_equator_params(kappa, tau);
  return std::abs(kappa - 4.0 * tau * tau) / (4.0 * std::abs(tau));
}

namespace {

struct EquatorSample {
  bool degenerate = true;
  double x = 0, H = 0, Ke = 0, Ke_closed = 0, maxk = 0;
  double E = 0, G = 0, f = 0;
  double k1 = 0, k2 = 0;
};

std::vector<EquatorSample> sweep_equator(double kappa, double tau, double theta, int grid) {
  const BergerSphere space(kappa, tau);
  const ParametricSurface eq = equator_surface(kappa, tau, theta);
  const Grid g{grid, grid};
  std::vector<EquatorSample> out(static_cast<size_t>(grid) * static_cast<size_t>(grid));
  parallel_for(static_cast<size_t>(grid), [&](size_t i) {
    for (int j = 0; j < grid; ++j) {
      const auto [x, y] = grid_sample(eq.domain(), g, static_cast<int>(i), j);
      EquatorSample& s = out[i * static_cast<size_t>(grid) + static_cast<size_t>(j)];
      s.x = x;
      try {
        const ShapeReport r = shape_report(eq, space, x, y);
        s.degenerate = false;
        s.H = r.H;
        s.Ke = r.Ke;
        s.k1 = r.k1;
        s.k2 = r.k2;
        s.maxk = std::max(std::abs(r.k1), std::abs(r.k2));
        s.E = r.forms.E;
        s.G = r.forms.G;
        s.f = r.forms.f;
        s.Ke_closed = equator_Ke_closed_form(kappa, tau, x);
      } catch (const DegenerateError&) {
        s.degenerate = true;
      }
    }
  });
  return out;
}

}  // namespace

VerificationReport verify_equator(double kappa, double tau, double theta, int grid,
                                  const EquatorTolerances& tol) {
  require_equator_params(kappa, tau);
  require_grid(grid);
  const double bound = equator_curvature_bound(kappa, tau);
  const std::vector<EquatorSample> samples = sweep_equator(kappa, tau, theta, grid);

  double max_h = 0, max_rel = 0, max_k = 0, gap = 0, ke_x0 = kInf;
  int used = 0, skipped = 0, attained = 0;
  for (const EquatorSample& s : samples) {
    if (s.degenerate) {
      ++skipped;
      continue;
    }
    ++used;
    max_h = std::max(max_h, std::abs(s.H));
    const double rel = std::abs(s.Ke - s.Ke_closed) / std::max(std::abs(s.Ke_closed), 1e-10);
    max_rel = std::max(max_rel, rel);
    max_k = std::max(max_k, s.maxk);
    if (std::abs(std::cos(s.x)) >= 1.0 - 1e-12) {
      ++attained;
      gap = std::max(gap, std::abs(bound - s.maxk));
      if (s.x == 0.0 && !std::isfinite(ke_x0)) ke_x0 = s.Ke;
    }
  }

  VerificationReport r;
  r.check = "equator";
  r.params = {{"kappa", kappa}, {"tau", tau}, {"theta", theta}, {"grid", grid}};
  r.max_residual = max_rel;
  r.slack = bound - max_k;
  r.metrics = {{"max_abs_H", max_h},        {"max_rel_Ke_error", max_rel},
               {"max_abs_k", max_k},        {"bound", bound},
               {"attainment_gap", gap},     {"samples", used},
               {"skipped", skipped},        {"Ke_at_x0", ke_x0}};
  const bool h_ok = max_h < tol.mean_curvature;
  const bool ke_ok = max_rel < tol.ke_relative;
  const bool bound_ok = max_k <= bound + tol.bound;
  const bool attain_ok = attained > 0 && gap < tol.attainment;
  r.pass = used > 0 && h_ok && ke_ok && bound_ok && attain_ok;
  if (std::abs(kappa - 4.0 * tau * tau) <= 1e-12 * kappa)
    r.notes.push_back("round case kappa = 4 tau^2: Ke and k_i vanish identically");
  if (skipped > 0)
    r.notes.push_back(std::to_string(skipped) + " samples at cos x = 0 skipped (parametrization singular)");
  if (!h_ok) r.notes.push_back("mean curvature exceeds " + fmt(tol.mean_curvature));
  if (!ke_ok) r.notes.push_back("Ke differs from the closed form by " + fmt(max_rel) + " (relative)");
  if (!bound_ok) r.notes.push_back("principal curvature exceeds the bound by " + fmt(max_k - bound));
  if (!attain_ok) r.notes.push_back("bound not attained at |cos x| = 1 (gap " + fmt(gap) + ")");
  return r;
}

VerificationReport equator_theta_invariance(double kappa, double tau,
                                            const std::vector<double>& thetas, int grid,
                                            double tol) {
  require_equator_params(kappa, tau);
  require_grid(grid);
  if (thetas.size() < 2) throw InputError("theta invariance needs at least two angles");
  std::vector<std::vector<EquatorSample>> runs;
  for (double th : thetas) runs.push_back(sweep_equator(kappa, tau, th, grid));
  // every sample at abscissa x is compared with the first-θ sample at (x, y₀)
  double worst = 0.0;
  const size_t n = static_cast<size_t>(grid);
  for (const auto& run : runs)
    for (size_t i = 0; i < n; ++i) {
      const EquatorSample& ref = runs[0][i * n];
      for (size_t j = 0; j < n; ++j) {
        const EquatorSample& s = run[i * n + j];
        if (s.degenerate != ref.degenerate) {
          worst = kInf;
          continue;
        }
        if (s.degenerate) continue;
        worst = std::max({worst, std::abs(s.k1 - ref.k1), std::abs(s.k2 - ref.k2)});
      }
    }
  VerificationReport r;
  r.check = "equator-theta-invariance";
  r.params = {{"kappa", kappa}, {"tau", tau}, {"grid", grid}, {"thetas", static_cast<double>(thetas.size())}};
  r.max_residual = worst;
  r.slack = kInf;
  r.pass = worst < tol;
  r.metrics = {{"max_profile_difference", worst}};
  if (!r.pass) r.notes.push_back("curvature profile depends on theta beyond " + fmt(tol));
  return r;
}

std::vector<ProfileRow> equator_profile(double kappa, double tau, double theta, int samples,
                                        double y) {
  require_equator_params(kappa, tau);
  require_grid(samples);
  const BergerSphere space(kappa, tau);
  const ParametricSurface eq = equator_surface(kappa, tau, theta);
  std::vector<ProfileRow> rows;
  for (int i = 0; i < samples; ++i) {
    const double x = 2.0 * kPi * i / (samples - 1);
    ProfileRow row{x, 0, 0, 0, 0, equator_Ke_closed_form(kappa, tau, x)};
    try {
      const ShapeReport r = shape_report(eq, space, x, y);
      row.k1 = r.k1;
      row.k2 = r.k2;
      row.H = r.H;
      row.Ke_oracle = r.Ke;
    } catch (const DegenerateError&) {
      row.k1 = row.k2 = row.H = row.Ke_oracle = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

double equator_II_printed(double kappa, double tau, double x) {
  return 4.0 * equator_alpha(kappa, tau, x) * (kappa - 4.0 * tau * tau) * std::pow(std::cos(x), 3);
}

double equator_II_implied(double kappa, double tau, double x) {
  const double alpha = equator_alpha(kappa, tau, x);
  const double e = 4.0 / kappa;
  const double g = 4.0 * tau * tau * std::cos(x) * std::cos(x) / (kappa * alpha * alpha);
  const double magnitude = std::sqrt(std::max(0.0, -equator_Ke_closed_form(kappa, tau, x) * e * g));
  const double sign = (kappa - 4.0 * tau * tau) * std::pow(std::cos(x), 3) < 0.0 ? -1.0 : 1.0;
  return sign * magnitude;
}

IIAdjudication adjudicate_II_coefficient(double kappa, double tau, int grid, double theta,
                                         double tol) {
  require_equator_params(kappa, tau);
  require_grid(grid);
  const std::vector<EquatorSample> samples = sweep_equator(kappa, tau, theta, grid);
  IIAdjudication a;
  double factor_sum = 0.0;
  int factor_count = 0;
  for (const EquatorSample& s : samples) {
    if (s.degenerate) continue;
    const double fa = equator_II_printed(kappa, tau, s.x);
    const double fb = equator_II_implied(kappa, tau, s.x);
    const double keg = s.Ke_closed * s.E * s.G;
    const double floor = 1e-12;
    a.printed_identity_residual =
        std::max(a.printed_identity_residual, std::abs(keg + fa * fa) / std::max(std::abs(keg), floor));
    a.implied_identity_residual =
        std::max(a.implied_identity_residual, std::abs(keg + fb * fb) / std::max(std::abs(keg), floor));
    const double fo = std::abs(s.f);
    a.printed_oracle_residual =
        std::max(a.printed_oracle_residual, std::abs(fo - std::abs(fa)) / std::max(std::abs(fa), floor));
    a.implied_oracle_residual =
        std::max(a.implied_oracle_residual, std::abs(fo - std::abs(fb)) / std::max(std::abs(fb), floor));
    if (std::abs(fb) > 1e-8) {
      const double ratio = fa / fb;
      factor_sum += ratio;
      ++factor_count;
      a.factor_deviation = std::max(a.factor_deviation, std::abs(ratio - kappa * kappa) / (kappa * kappa));
    }
  }
  a.factor = factor_count > 0 ? factor_sum / factor_count : std::numeric_limits<double>::quiet_NaN();

  const bool printed_ok = a.printed_identity_residual < tol && a.printed_oracle_residual < tol;
  const bool implied_ok = a.implied_identity_residual < tol && a.implied_oracle_residual < tol;
  if (printed_ok && implied_ok) a.matching = "both (indistinguishable)";
  else if (printed_ok) a.matching = "printed";
  else if (implied_ok) a.matching = "implied";
  else a.matching = "none";

  VerificationReport& r = a.report;
  r.check = "equator-II-adjudication";
  r.params = {{"kappa", kappa}, {"tau", tau}, {"theta", theta}, {"grid", grid}};
  r.max_residual = std::min(a.printed_identity_residual, a.implied_identity_residual);
  r.slack = kInf;
  r.metrics = {{"printed_identity_residual", a.printed_identity_residual},
               {"implied_identity_residual", a.implied_identity_residual},
               {"printed_oracle_residual", a.printed_oracle_residual},
               {"implied_oracle_residual", a.implied_oracle_residual},
               {"factor", a.factor},
               {"factor_deviation_from_kappa_squared", a.factor_deviation}};
  const bool factor_ok = factor_count == 0 || a.factor_deviation < 1e-6;
  const bool decided = a.matching == "printed" || a.matching == "implied";
  const bool indistinguishable = a.matching == "both (indistinguishable)";
  r.pass = (decided || indistinguishable) && factor_ok;
  r.notes.push_back("matching candidate: " + a.matching);
  if (decided)
    r.notes.push_back("printed II(psi_x, psi_y) differs from the oracle by the factor " + fmt(a.factor) +
                      " = kappa^2");
  if (indistinguishable)
    r.notes.push_back(factor_count == 0 ? "II(psi_x, psi_y) vanishes identically (round case)"
                                        : "kappa^2 = 1: both candidates coincide");
  return a;
}

// ---------------------------------------------------------------------------

VerificationReport heisenberg_plane_bound(double tau, const PlaneCoefficients& plane, int grid,
                                          double extent) {
  require_grid(grid);
  const Heisenberg space(tau);
  const ParametricSurface s = affine_plane(plane.a, plane.b, plane.c, plane.d, extent);
  const Grid g{grid, grid};
  std::vector<std::pair<double, double>> kh(static_cast<size_t>(grid) * static_cast<size_t>(grid));
  parallel_for(static_cast<size_t>(grid), [&](size_t i) {
    for (int j = 0; j < grid; ++j) {
      const auto [u, v] = grid_sample(s.domain(), g, static_cast<int>(i), j);
      const ShapeReport r = shape_report(s, space, u, v);
      kh[i * static_cast<size_t>(grid) + static_cast<size_t>(j)] = {
          std::max(std::abs(r.k1), std::abs(r.k2)), std::abs(r.H)};
    }
  });
  double max_k = 0, max_h = 0;
  for (const auto& [k, h] : kh) {
    max_k = std::max(max_k, k);
    max_h = std::max(max_h, h);
  }
  const bool vertical = plane.c == 0.0;
  VerificationReport r;
  r.check = vertical ? "heisenberg-vertical-plane" : "heisenberg-plane";
  r.params = {{"tau", tau}, {"a", plane.a}, {"b", plane.b}, {"c", plane.c}, {"d", plane.d},
              {"grid", grid}, {"extent", extent}};
  r.slack = std::abs(tau) - max_k;
  r.max_residual = vertical ? max_h : std::max(0.0, -r.slack);
  r.metrics = {{"max_abs_k", max_k}, {"max_abs_H", max_h}, {"bound", std::abs(tau)}};
  r.pass = max_k <= std::abs(tau) + 1e-6 && (!vertical || max_h < 1e-7);
  if (max_k > std::abs(tau) + 1e-6) r.notes.push_back("principal curvature exceeds |tau|");
  if (vertical && max_h >= 1e-7) r.notes.push_back("vertical plane is not minimal");
  return r;
}

// ---------------------------------------------------------------------------

double comparability_constant(double kappa, double tau) {
  if (!(std::isfinite(kappa) && kappa > 0.0)) throw InputError("kappa must be positive");
  return (4.0 / kappa) * (1.0 + std::abs(4.0 * tau * tau / kappa - 1.0));
}

VerificationReport comparability_check(double kappa, double tau, int samples, unsigned seed) {
  if (samples < 1) throw InputError("comparability check needs samples");
  const BergerSphere space(kappa, tau);
  const double a2 = comparability_constant(kappa, tau);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double min_eig = kInf, min_slack = kInf;
  for (int n = 0; n < samples; ++n) {
    Vec p(4), x(4);
    for (int i = 0; i < 4; ++i) p[i] = normal(rng);
    p /= p.norm();
    for (int i = 0; i < 4; ++i) x[i] = normal(rng);
    x -= x.dot(p) * p;
    const Mat g = space.metric(p);
    const Mat diff = a2 * Mat::Identity(4, 4) - g;
    min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat>(diff, Eigen::EigenvaluesOnly)
                                    .eigenvalues()
                                    .minCoeff());
    const double xx = x.squaredNorm();
    min_slack = std::min(min_slack, (a2 * xx - x.dot(g * x)) / xx);
  }
  VerificationReport r;
  r.check = "comparability";
  r.params = {{"kappa", kappa}, {"tau", tau}, {"samples", samples}};
  r.max_residual = std::max(0.0, -min_eig);
  r.slack = min_slack;
  r.metrics = {{"a_squared", a2}, {"min_eigenvalue", min_eig}, {"min_relative_slack", min_slack}};
  r.pass = min_eig >= -1e-12 && min_slack >= -1e-12;
  if (!r.pass) r.notes.push_back("a^2 g_round - g_Berger is not positive semidefinite");
  return r;
}

PinchingInequality pinching_inequality_check(double kappa_minus, double kappa_plus) {
  if (!(kappa_minus > 0.0 && kappa_plus > 0.0 && std::isfinite(kappa_plus)))
    throw InputError("pinching constants must be positive");
  if (kappa_minus > kappa_plus) throw InputError("kappa_minus must not exceed kappa_plus");
  PinchingInequality p;
  p.ratio = kappa_minus / kappa_plus;
  p.contradiction_possible = p.ratio <= 0.25;
  p.lower = 2.0 * kPi / std::sqrt(kappa_plus);
  p.upper = kPi / std::sqrt(kappa_minus);
  p.slack = p.upper - p.lower;
  p.compatible = p.lower <= p.upper;
  return p;
}

double bonnet_diameter_bound(double c) {
  if (!(c > 0.0 && std::isfinite(c))) throw InputError("curvature bound c must be positive");
  return kPi / c;
}

double disk_radius_margin(double c) { return 0.5 * kPi - bonnet_diameter_bound(c); }

// ---------------------------------------------------------------------------

std::vector<double> discrete_curvature(const Polyline& closed) {
  const size_t n = closed.size();
  if (n < 3) throw InputError("closed polyline needs at least 3 vertices");
  std::vector<double> turning(n), mean_len(n);
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d a = closed[i] - closed[(i + n - 1) % n];
    const Eigen::Vector2d b = closed[(i + 1) % n] - closed[i];
    const double la = a.norm(), lb = b.norm();
    if (!(la > 0.0 && lb > 0.0)) throw InputError("polyline has repeated vertices");
    turning[i] = std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    mean_len[i] = 0.5 * (la + lb);
    total += turning[i];
  }
  const double orientation = total < 0.0 ? -1.0 : 1.0;
  std::vector<double> k(n);
  for (size_t i = 0; i < n; ++i) k[i] = orientation * turning[i] / mean_len[i];
  return k;
}

namespace {

Circle circle_from(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return {0.5 * (a + b), 0.5 * (a - b).norm()};
}

Circle circle_from(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const Eigen::Vector2d ab = b - a, ac = c - a;
  const double d = 2.0 * (ab.x() * ac.y() - ab.y() * ac.x());
  if (std::abs(d) < 1e-300) {
    Circle best = circle_from(a, b);
    for (const Circle& alt : {circle_from(a, c), circle_from(b, c)})
      if (alt.radius > best.radius) best = alt;
    return best;
  }
  const double ab2 = ab.squaredNorm(), ac2 = ac.squaredNorm();
  const Eigen::Vector2d off((ac.y() * ab2 - ab.y() * ac2) / d, (ab.x() * ac2 - ac.x() * ab2) / d);
  return {a + off, off.norm()};
}

bool contains(const Circle& c, const Eigen::Vector2d& p) {
  return (p - c.center).norm() <= c.radius * (1.0 + 1e-12) + 1e-15;
}

}  // namespace

Circle minimal_enclosing_circle(const Polyline& points) {
  if (points.empty()) throw InputError("enclosing circle of an empty point set");
  Polyline pts = points;
  std::mt19937 rng(20240521u);
  std::shuffle(pts.begin(), pts.end(), rng);
  Circle c{pts[0], 0.0};
  for (size_t i = 1; i < pts.size(); ++i) {
    if (contains(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (size_t j = 0; j < i; ++j) {
      if (contains(c, pts[j])) continue;
      c = circle_from(pts[i], pts[j]);
      for (size_t k = 0; k < j; ++k)
        if (!contains(c, pts[k])) c = circle_from(pts[i], pts[j], pts[k]);
    }
  }
  return c;
}

CurveRadiusCheck convex_curve_radius_check(const Polyline& closed, double c) {
  if (!(c > 0.0 && std::isfinite(c))) throw InputError("curvature bound c must be positive");
  const std::vector<double> k = discrete_curvature(closed);
  CurveRadiusCheck out;
  out.min_curvature = *std::min_element(k.begin(), k.end());
  if (out.min_curvature < c * (1.0 - 1e-12))
    throw InputError("discrete curvature " + fmt(out.min_curvature) + " is below the declared c = " +
                     fmt(c));
  double longest = 0.0;
  for (size_t i = 0; i < closed.size(); ++i)
    longest = std::max(longest, (closed[(i + 1) % closed.size()] - closed[i]).norm());
  out.enclosing = minimal_enclosing_circle(closed);
  out.tolerance = 2.0 * longest;
  out.limit = 1.0 / c;
  out.certified = out.enclosing.radius <= out.limit + out.tolerance;
  return out;
}

Polyline circle_polyline(double radius, int segments, Eigen::Vector2d center) {
  if (segments < 3 || !(radius > 0.0)) throw InputError("circle needs radius > 0 and >= 3 segments");
  Polyline p;
  for (int i = 0; i < segments; ++i) {
    const double t = 2.0 * kPi * i / segments;
    p.emplace_back(center + radius * Eigen::Vector2d(std::cos(t), std::sin(t)));
  }
  return p;
}

Polyline ellipse_polyline(double a, double b, int segments) {
  if (segments < 3 || !(a > 0.0 && b > 0.0)) throw InputError("ellipse needs a, b > 0 and >= 3 segments");
  Polyline p;
  for (int i = 0; i < segments; ++i) {
    const double t = 2.0 * kPi * i / segments;
    p.emplace_back(a * std::cos(t), b * std::sin(t));
  }
  return p;
}

}  // namespace convexa
