#include "convexa/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace convexa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSphereTolerance = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Quintic smoothstep with vanishing first and second derivatives at both ends.
double smoothstep5(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

void require_finite_positive(double x, const char* what) {
  if (!(std::isfinite(x) && x > 0.0)) throw InputError(std::string(what) + " must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------
// RoundSphere

RoundSphere::RoundSphere(double radius) : radius_(radius) {
  require_finite_positive(radius, "sphere radius");
}

std::string RoundSphere::id() const { return "sphere r=" + fmt(radius_); }

Mat RoundSphere::metric(const Vec& p) const {
  const double s = std::sin(p[0]);
  Mat g = Mat::Zero(2, 2);
  g(0, 0) = radius_ * radius_;
  g(1, 1) = radius_ * radius_ * s * s;
  return g;
}

std::optional<ChristoffelAtPoint> RoundSphere::analytic_christoffel(const Vec& p) const {
  const double s = std::sin(p[0]), c = std::cos(p[0]);
  ChristoffelAtPoint gamma(2, ConnectionMode::Analytic);
  gamma(0, 1, 1) = -s * c;
  gamma(1, 0, 1) = gamma(1, 1, 0) = c / s;
  return gamma;
}

void RoundSphere::check_point(const Vec& p) const {
  AmbientSpace::check_point(p);
  if (std::abs(std::sin(p[0])) < 1e-9) throw InputError("polar chart is singular at the poles");
}

std::vector<double> RoundSphere::periods() const { return {0.0, 2.0 * kPi}; }

double RoundSphere::gauss_curvature(const Vec&) const { return 1.0 / (radius_ * radius_); }

ChartRect RoundSphere::sample_domain() const { return {0.05, kPi - 0.05, 0.0, 2.0 * kPi}; }

Vec RoundSphere::chart_from_unit(const Eigen::Vector3d& n) {
  Vec p(2);
  p << std::acos(std::clamp(n.z() / n.norm(), -1.0, 1.0)), std::atan2(n.y(), n.x());
  return p;
}

Eigen::Vector3d RoundSphere::unit_from_chart(const Vec& p) {
  const double s = std::sin(p[0]);
  return {s * std::cos(p[1]), s * std::sin(p[1]), std::cos(p[0])};
}

// ---------------------------------------------------------------------------
// CappedProfile

CappedProfile::CappedProfile(double length, double blend, double flat_curvature)
    : length_(length), blend_(blend), flat_curvature_(flat_curvature) {
  require_finite_positive(length, "cylinder length");
  require_finite_positive(blend, "blend width");
  if (!(flat_curvature >= 0.0 && flat_curvature < 0.1))
    throw InputError("flat-section curvature must lie in [0, 0.1)");
  const double half = 0.5 * length_;
  if (std::sqrt(flat_curvature_) * (half + blend_) >= 0.5 * kPi)
    throw InputError("cylinder too long for the requested flat-section curvature");

  // Tune the cap curvature so the constant-curvature cap closes with |f'| = 1.
  double kc = 1.0;
  for (int it = 0; it < 500; ++it) {
    const auto [fb, dfb] = integrate_blend(kc, nullptr);
    if (!(fb > 0.0) || std::abs(dfb) >= 1.0)
      throw InputError("capped-cylinder profile does not close for these parameters");
    const double next = (1.0 - dfb * dfb) / (fb * fb);
    if (std::abs(next - kc) <= 1e-15 * next) {
      kc = next;
      break;
    }
    kc = next;
  }
  cap_curvature_ = kc;
  const auto [fb, dfb] = integrate_blend(kc, &nodes_);
  const double root = std::sqrt(kc);
  cap_amplitude_ = std::hypot(fb, dfb / root);
  cap_phase_ = std::atan2(-dfb / root, fb);
  pole_ = half + blend_ + (0.5 * kPi - cap_phase_) / root;
}

std::array<double, 2> CappedProfile::integrate_blend(
    double kc, std::vector<std::array<double, 2>>* table) const {
  const double half = 0.5 * length_;
  const double re = std::sqrt(flat_curvature_);
  std::array<double, 2> y{std::cos(re * half), -re * std::sin(re * half)};
  const int steps = 4000;
  const double h = blend_ / steps;
  auto k_of = [&](double s) {
    return flat_curvature_ + (kc - flat_curvature_) * smoothstep5((s - half) / blend_);
  };
  auto rhs = [&](double s, const std::array<double, 2>& v) {
    return std::array<double, 2>{v[1], -k_of(s) * v[0]};
  };
  if (table) {
    table->clear();
    table->push_back(y);
  }
  for (int i = 0; i < steps; ++i) {
    const double s = half + i * h;
    const auto k1 = rhs(s, y);
    const auto k2 = rhs(s + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const auto k3 = rhs(s + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const auto k4 = rhs(s + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
    for (int c = 0; c < 2; ++c) y[c] += (h / 6.0) * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    if (table) table->push_back(y);
  }
  return y;
}

double CappedProfile::curvature(double s) const {
  const double a = std::abs(s), half = 0.5 * length_;
  if (a <= half) return flat_curvature_;
  return flat_curvature_ + (cap_curvature_ - flat_curvature_) * smoothstep5((a - half) / blend_);
}

std::array<double, 2> CappedProfile::state(double s) const {
  const double half = 0.5 * length_;
  if (s <= half) {
    const double re = std::sqrt(flat_curvature_);
    return {std::cos(re * s), -re * std::sin(re * s)};
  }
  if (s >= half + blend_) {
    const double root = std::sqrt(cap_curvature_);
    const double arg = root * (s - half - blend_) + cap_phase_;
    return {cap_amplitude_ * std::cos(arg), -cap_amplitude_ * root * std::sin(arg)};
  }
  // One RK4 step from the nearest tabulated node below s.
  const double step = blend_ / static_cast<double>(nodes_.size() - 1);
  const size_t i = std::min(nodes_.size() - 2, static_cast<size_t>((s - half) / step));
  const double s0 = half + static_cast<double>(i) * step, h = s - s0;
  std::array<double, 2> y = nodes_[i];
  auto rhs = [&](double t, const std::array<double, 2>& v) {
    return std::array<double, 2>{v[1], -curvature(t) * v[0]};
  };
  const auto k1 = rhs(s0, y);
  const auto k2 = rhs(s0 + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
  const auto k3 = rhs(s0 + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
  const auto k4 = rhs(s0 + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
  for (int c = 0; c < 2; ++c) y[c] += (h / 6.0) * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
  return y;
}

double CappedProfile::f(double s) const { return state(std::abs(s))[0]; }

double CappedProfile::df(double s) const {
  const double d = state(std::abs(s))[1];
  return s < 0.0 ? -d : d;
}

// ---------------------------------------------------------------------------
// CappedCylinder

CappedCylinder::CappedCylinder(double length, double blend, double flat_curvature)
    : profile_(length, blend, flat_curvature) {}

std::string CappedCylinder::id() const {
  return "capped l=" + fmt(profile_.length()) + " blend=" + fmt(profile_.blend());
}

Mat CappedCylinder::metric(const Vec& p) const {
  const double f = profile_.f(p[0]);
  Mat g = Mat::Zero(2, 2);
  g(0, 0) = 1.0;
  g(1, 1) = f * f;
  return g;
}

std::optional<ChristoffelAtPoint> CappedCylinder::analytic_christoffel(const Vec& p) const {
  const double f = profile_.f(p[0]), df = profile_.df(p[0]);
  ChristoffelAtPoint gamma(2, ConnectionMode::Analytic);
  gamma(0, 1, 1) = -f * df;
  gamma(1, 0, 1) = gamma(1, 1, 0) = df / f;
  return gamma;
}

void CappedCylinder::check_point(const Vec& p) const {
  AmbientSpace::check_point(p);
  if (std::abs(p[0]) >= profile_.pole() - 1e-9)
    throw InputError("capped-cylinder chart is singular at the poles");
}

std::vector<double> CappedCylinder::periods() const { return {0.0, 2.0 * kPi}; }

double CappedCylinder::gauss_curvature(const Vec& p) const { return profile_.curvature(p[0]); }

ChartRect CappedCylinder::sample_domain() const {
  const double margin = 0.02 * profile_.pole();
  return {-profile_.pole() + margin, profile_.pole() - margin, 0.0, 2.0 * kPi};
}

// ---------------------------------------------------------------------------
// FlatPlane

Mat FlatPlane::metric(const Vec&) const { return Mat::Identity(2, 2); }

std::optional<ChristoffelAtPoint> FlatPlane::analytic_christoffel(const Vec&) const {
  return ChristoffelAtPoint(2, ConnectionMode::Analytic);
}

// ---------------------------------------------------------------------------
// ProductSpace

ProductSpace::ProductSpace(std::shared_ptr<const Surface2D> base, Fiber fiber)
    : base_(std::move(base)), fiber_(fiber) {
  if (!base_) throw InputError("product space needs a base surface");
  if (fiber_.kind == Fiber::Kind::Circle) require_finite_positive(fiber_.period, "circle period");
}

std::string ProductSpace::id() const {
  std::string fiber = fiber_.kind == Fiber::Kind::Line ? "line" : "circle period=" + fmt(fiber_.period);
  return "product base=" + base_->id() + " fiber=" + fiber;
}

Mat ProductSpace::metric(const Vec& p) const {
  Mat g = Mat::Zero(3, 3);
  g.topLeftCorner(2, 2) = base_->metric(p.head(2));
  g(2, 2) = 1.0;
  return g;
}

std::optional<ChristoffelAtPoint> ProductSpace::analytic_christoffel(const Vec& p) const {
  const auto base = base_->analytic_christoffel(p.head(2));
  if (!base) return std::nullopt;
  ChristoffelAtPoint gamma(3, ConnectionMode::Analytic);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) gamma(k, i, j) = (*base)(k, i, j);
  return gamma;
}

void ProductSpace::check_point(const Vec& p) const {
  AmbientSpace::check_point(p);
  base_->check_point(p.head(2));
}

std::vector<double> ProductSpace::periods() const {
  std::vector<double> out = base_->periods();
  out.push_back(fiber_.kind == Fiber::Kind::Circle ? fiber_.period : 0.0);
  return out;
}

VectorFieldJet ProductSpace::killing_jet(const Vec&) const {
  return {Eigen::Vector3d::UnitZ(), Mat::Zero(3, 3)};
}

Vec ProductSpace::killing_flow(const Vec& p, double t) const {
  Vec q = p;
  q[2] += t;
  return q;
}

Mat ProductSpace::killing_flow_differential(const Vec&, double) const {
  return Mat::Identity(3, 3);
}

// ---------------------------------------------------------------------------
// Heisenberg

Heisenberg::Heisenberg(double tau) : tau_(tau) {
  if (!std::isfinite(tau) || tau == 0.0) throw InputError("Heisenberg space needs tau != 0");
}

std::string Heisenberg::id() const { return "heisenberg tau=" + fmt(tau_); }

Mat Heisenberg::metric(const Vec& p) const {
  const double x = p[0], y = p[1], t = tau_;
  Mat g(3, 3);
  g << 1.0 + t * t * y * y, -t * t * x * y, t * y,
       -t * t * x * y, 1.0 + t * t * x * x, -t * x,
       t * y, -t * x, 1.0;
  return g;
}

std::optional<ChristoffelAtPoint> Heisenberg::analytic_christoffel(const Vec& p) const {
  const double x = p[0], y = p[1], t = tau_, t2 = t * t, t3 = t2 * t;
  ChristoffelAtPoint gamma(3, ConnectionMode::Analytic);
  auto set = [&](int k, int i, int j, double v) { gamma(k, i, j) = gamma(k, j, i) = v; };
  set(0, 0, 1, t2 * y);
  set(0, 1, 1, -2.0 * t2 * x);
  set(0, 1, 2, t);
  set(1, 0, 0, -2.0 * t2 * y);
  set(1, 0, 1, t2 * x);
  set(1, 0, 2, -t);
  set(2, 0, 0, -2.0 * t3 * x * y);
  set(2, 0, 1, t3 * (x * x - y * y));
  set(2, 0, 2, -t2 * x);
  set(2, 1, 1, 2.0 * t3 * x * y);
  set(2, 1, 2, -t2 * y);
  return gamma;
}

VectorFieldJet Heisenberg::killing_jet(const Vec&) const {
  return {Eigen::Vector3d::UnitZ(), Mat::Zero(3, 3)};
}

Vec Heisenberg::killing_flow(const Vec& p, double t) const {
  Vec q = p;
  q[2] += t;
  return q;
}

Mat Heisenberg::killing_flow_differential(const Vec&, double) const {
  return Mat::Identity(3, 3);
}

// ---------------------------------------------------------------------------
// BergerSphere

BergerSphere::BergerSphere(double kappa, double tau) : kappa_(kappa), tau_(tau) {
  require_finite_positive(kappa, "Berger kappa");
  if (!std::isfinite(tau) || tau == 0.0) throw InputError("Berger sphere needs tau != 0");
}

std::string BergerSphere::id() const {
  return "berger kappa=" + fmt(kappa_) + " tau=" + fmt(tau_);
}

Eigen::Matrix4d BergerSphere::complex_structure() {
  Eigen::Matrix4d j;
  j << 0, -1, 0, 0,
       1, 0, 0, 0,
       0, 0, 0, -1,
       0, 0, 1, 0;
  return j;
}

std::array<Eigen::Matrix4d, 3> BergerSphere::frame_maps() {
  // E1(z,w) = (−w̄, z̄), E2(z,w) = (−i w̄, i z̄), V(z,w) = (iz, iw)
  Eigen::Matrix4d e1, e2;
  e1 << 0, 0, -1, 0,
        0, 0, 0, 1,
        1, 0, 0, 0,
        0, -1, 0, 0;
  e2 << 0, 0, 0, -1,
        0, 0, -1, 0,
        0, 1, 0, 0,
        1, 0, 0, 0;
  return {e1, e2, complex_structure()};
}

Mat BergerSphere::metric(const Vec& p) const {
  const Eigen::Vector4d v = complex_structure() * p;
  const double r2 = p.squaredNorm();
  return (4.0 / kappa_) * (Mat::Identity(4, 4) + deformation() * (v * v.transpose()) / r2);
}

std::optional<ChristoffelAtPoint> BergerSphere::analytic_christoffel(const Vec& p) const {
  const Eigen::Matrix4d j = complex_structure();
  const Eigen::Vector4d v = j * p;
  const double r2 = p.squaredNorm();
  const double a = 4.0 / kappa_, c = deformation();
  // ∂_l G = a c ∂_l(V Vᵀ / r²)
  std::array<Eigen::Matrix4d, 4> dg;
  for (int l = 0; l < 4; ++l) {
    const Eigen::Vector4d dv = j.col(l);
    dg[l] = a * c *
            ((dv * v.transpose() + v * dv.transpose()) / r2 -
             (2.0 * p[l] / (r2 * r2)) * (v * v.transpose()));
  }
  const Eigen::Matrix4d ginv =
      (1.0 / a) * (Eigen::Matrix4d::Identity() - (c / (1.0 + c)) * (v * v.transpose()) / r2);
  ChristoffelAtPoint gamma(4, ConnectionMode::Analytic);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int jj = i; jj < 4; ++jj) {
        double s = 0.0;
        for (int l = 0; l < 4; ++l)
          s += ginv(k, l) * (dg[i](l, jj) + dg[jj](l, i) - dg[l](i, jj));
        gamma(k, i, jj) = gamma(k, jj, i) = 0.5 * s;
      }
  return gamma;
}

void BergerSphere::check_point(const Vec& p) const {
  AmbientSpace::check_point(p);
  if (std::abs(p.squaredNorm() - 1.0) > kSphereTolerance)
    throw InputError("Berger point is off the unit sphere |z|^2 + |w|^2 = 1");
}

Vec BergerSphere::constraint_normal(const Vec& p) const { return p / p.norm(); }

Vec BergerSphere::retract(const Vec& p) const { return p / p.norm(); }

double BergerSphere::orientation() const { return tau_ > 0.0 ? -1.0 : 1.0; }

VectorFieldJet BergerSphere::killing_jet(const Vec& p) const {
  const double scale = kappa_ / (4.0 * std::abs(tau_));
  const Mat jac = scale * complex_structure();
  return {jac * p, jac};
}

Vec BergerSphere::killing_flow(const Vec& p, double t) const {
  return killing_flow_differential(p, t) * p;
}

Mat BergerSphere::killing_flow_differential(const Vec&, double t) const {
  const double theta = t * kappa_ / (4.0 * std::abs(tau_));
  return std::cos(theta) * Mat::Identity(4, 4) + std::sin(theta) * Mat(complex_structure());
}

Eigen::Vector3d BergerSphere::connection(BergerFrameIndex i, BergerFrameIndex j,
                                         ConnectionTable table) const {
  const double q = 4.0 * tau_ * tau_ / kappa_;
  const double vrow = table == ConnectionTable::Printed ? q - 1.0 : q - 2.0;
  using I = BergerFrameIndex;
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  if (i == I::E1) {
    if (j == I::E2) out[2] = -1.0;
    if (j == I::V) out[1] = q;
  } else if (i == I::E2) {
    if (j == I::E1) out[2] = 1.0;
    if (j == I::V) out[0] = -q;
  } else {
    if (j == I::E1) out[1] = vrow;
    if (j == I::E2) out[0] = -vrow;
  }
  return out;
}

BergerFrame berger_frame(const Vec& p) {
  if (p.size() != 4) throw InputError("Berger frame needs a point in R^4");
  if (std::abs(p.squaredNorm() - 1.0) > kSphereTolerance)
    throw InputError("Berger frame requested off the unit sphere");
  const auto maps = BergerSphere::frame_maps();
  return {maps[0] * p, maps[1] * p, maps[2] * p};
}

std::array<VectorFieldJet, 3> berger_frame_jets(const Vec& p) {
  const BergerFrame frame = berger_frame(p);
  const auto maps = BergerSphere::frame_maps();
  return {VectorFieldJet{frame.e1, maps[0]}, VectorFieldJet{frame.e2, maps[1]},
          VectorFieldJet{frame.v, maps[2]}};
}

// ---------------------------------------------------------------------------
// Killing utilities

Vec killing_field(const AmbientSpace& space, const Vec& p) {
  space.check_point(p);
  if (!space.has_killing_field()) throw InputError(space.id() + " has no vertical Killing field");
  return space.killing_jet(p).value;
}

TauEstimate tau_estimate(const AmbientSpace& space, const Vec& p, ConnectionMode mode) {
  space.check_point(p);
  if (!space.has_killing_field() || space.dim() != 3)
    throw InputError("tau estimate needs a Killing submersion 3-space");
  const VectorFieldJet xi = space.killing_jet(p);
  const Mat g = space.metric(p);
  const int n = space.chart_dim();

  // First coordinate direction with a usable horizontal part.
  Vec x;
  for (int k = 0; k < n && x.size() == 0; ++k) {
    Vec c = project_tangent(space, p, Vec(Vec::Unit(n, k)));
    c -= c.dot(g * xi.value) * xi.value;
    const double len = std::sqrt(c.dot(g * c));
    if (len > 0.1) x = c / len;
  }
  if (x.size() == 0) throw DegenerateError("no horizontal direction found");

  auto estimate = [&](const Vec& h, double* residual) {
    const Vec w = wedge(space, p, h, xi.value);
    const double ww = w.dot(g * w);
    if (ww < 1e-20) throw DegenerateError("X wedge xi is degenerate");
    const Vec d = covariant_derivative(space, p, h, xi, mode);
    const double t = d.dot(g * w) / ww;
    if (residual) {
      const Vec r = d - t * w;
      *residual = std::sqrt(std::max(0.0, r.dot(g * r)));
    }
    return t;
  };
  TauEstimate out;
  out.tau = estimate(x, &out.residual);
  const Vec x2 = wedge(space, p, x, xi.value);
  out.independence = std::abs(estimate(x2, nullptr) - out.tau);
  return out;
}

PinchingResult pinching_ratio(const Surface2D& surface, int samples) {
  if (samples < 2) throw InputError("pinching grid needs at least 2 samples per side");
  const ChartRect r = surface.sample_domain();
  PinchingResult out;
  out.kappa_minus = std::numeric_limits<double>::infinity();
  out.kappa_plus = -std::numeric_limits<double>::infinity();
  const Vec e0 = Vec::Unit(2, 0), e1 = Vec::Unit(2, 1);
  for (int i = 0; i < samples; ++i)
    for (int j = 0; j < samples; ++j) {
      Vec p(2);
      p << r.u0 + (r.u1 - r.u0) * i / (samples - 1), r.v0 + (r.v1 - r.v0) * j / (samples - 1);
      const double k = sectional_curvature(surface, p, e0, e1);
      if (!(k > 0.0))
        throw InputError("non-positive curvature sample: K = " + fmt(k) + " at (" + fmt(p[0]) +
                         ", " + fmt(p[1]) + ")");
      out.kappa_minus = std::min(out.kappa_minus, k);
      out.kappa_plus = std::max(out.kappa_plus, k);
    }
  out.ratio = out.kappa_minus / out.kappa_plus;
  return out;
}

// ---------------------------------------------------------------------------
// Spec parsing

namespace {

struct Tokens {
  std::string head;
  std::vector<std::pair<std::string, std::string>> pairs;
};

Tokens tokenize(const std::string& spec) {
  std::string cleaned;
  for (char c : spec) cleaned += (c == '(' || c == ')' || c == '|') ? ' ' : c;
  std::istringstream is(cleaned);
  Tokens t;
  std::string word;
  while (is >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) {
      if (t.head.empty() && t.pairs.empty()) {
        t.head = word;
        continue;
      }
      // A bare word after "key=" continues that value ("base= sphere").
      if (!t.pairs.empty() && t.pairs.back().second.empty()) {
        t.pairs.back().second = word;
        continue;
      }
      throw InputError("unexpected token '" + word + "' in space spec");
    }
    t.pairs.emplace_back(word.substr(0, eq), word.substr(eq + 1));
  }
  return t;
}

double parse_number(const std::string& key, const std::string& value) {
  size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !std::isfinite(x))
    throw InputError("bad number for " + key + ": '" + value + "'");
  return x;
}

std::shared_ptr<const Surface2D> make_base(const std::string& kind,
                                           const std::map<std::string, double>& num) {
  auto get = [&](const char* key, std::optional<double> fallback = std::nullopt) {
    const auto it = num.find(key);
    if (it != num.end()) return it->second;
    if (fallback) return *fallback;
    throw InputError(std::string("base '") + kind + "' needs " + key + "=");
  };
  if (kind == "sphere") return std::make_shared<RoundSphere>(get("r", 1.0));
  if (kind == "capped")
    return std::make_shared<CappedCylinder>(get("l"), get("blend", 0.2),
                                            get("eps", CappedCylinder::kDefaultFlatCurvature));
  if (kind == "flat") return std::make_shared<FlatPlane>();
  throw InputError("unknown base surface '" + kind + "'");
}

}  // namespace

std::shared_ptr<const Surface2D> parse_base(const std::string& spec) {
  const Tokens t = tokenize(spec);
  std::map<std::string, double> num;
  for (const auto& [k, v] : t.pairs) num[k] = parse_number(k, v);
  return make_base(t.head, num);
}

std::shared_ptr<const AmbientSpace> parse_space(const std::string& spec) {
  const Tokens t = tokenize(spec);
  if (t.head.empty()) throw InputError("empty space spec");
  std::map<std::string, double> num;
  std::string base_kind, fiber_kind = "line";
  for (const auto& [k, v] : t.pairs) {
    if (k == "base") {
      base_kind = v;
    } else if (k == "fiber") {
      fiber_kind = v;
    } else {
      if (num.count(k)) throw InputError("duplicate key '" + k + "' in space spec");
      num[k] = parse_number(k, v);
    }
  }
  auto need = [&](const char* key) {
    const auto it = num.find(key);
    if (it == num.end()) throw InputError(t.head + " spec needs " + key + "=");
    return it->second;
  };
  if (t.head == "berger") return std::make_shared<BergerSphere>(need("kappa"), need("tau"));
  if (t.head == "heisenberg") return std::make_shared<Heisenberg>(need("tau"));
  if (t.head == "product") {
    if (base_kind.empty()) throw InputError("product spec needs base=");
    Fiber fiber;
    if (fiber_kind == "circle") {
      fiber.kind = Fiber::Kind::Circle;
      fiber.period = need("period");
    } else if (fiber_kind != "line") {
      throw InputError("unknown fiber '" + fiber_kind + "'");
    }
    return std::make_shared<ProductSpace>(make_base(base_kind, num), fiber);
  }
  throw InputError("unknown space '" + t.head + "'");
}

}  // namespace convexa
