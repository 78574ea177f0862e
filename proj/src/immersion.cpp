#include "convexa/immersion.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace convexa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJetStep = 1e-4;
constexpr double kDegenerateArea = 1e-9;

Vec unwrap(const Vec& d, const std::vector<double>& periods) {
  Vec out = d;
  for (size_t i = 0; i < periods.size() && i < static_cast<size_t>(d.size()); ++i)
    if (periods[i] > 0.0) out[static_cast<Eigen::Index>(i)] = std::remainder(d[static_cast<Eigen::Index>(i)], periods[i]);
  return out;
}

Vec richardson(const Vec& coarse, const Vec& fine) { return (4.0 * fine - coarse) / 3.0; }

struct Frame {
  SurfaceJet jet;
  Vec du, dv;  // tangent to the space's constraint
  Mat g;
};

Frame frame_at(const ParametricSurface& s, const AmbientSpace& space, double u, double v) {
  Frame fr;
  fr.jet = s.jet(u, v);
  space.check_point(fr.jet.point);
  if (fr.jet.du.size() != space.chart_dim())
    throw InputError("surface " + s.name() + " does not live in " + space.id());
  fr.du = project_tangent(space, fr.jet.point, fr.jet.du);
  fr.dv = project_tangent(space, fr.jet.point, fr.jet.dv);
  fr.g = space.metric(fr.jet.point);
  return fr;
}

Vec normal_from_frame(const ParametricSurface& s, const AmbientSpace& space, const Frame& fr,
                      double u, double v) {
  if (space.dim() != 3) throw InputError("unit normals need a 3-dimensional ambient space");
  const Vec w = wedge(space, fr.jet.point, fr.du, fr.dv);
  const double len = std::sqrt(std::max(0.0, w.dot(fr.g * w)));
  if (!(len > kDegenerateArea))
    throw DegenerateError("degenerate tangent plane at (" + std::to_string(u) + ", " +
                          std::to_string(v) + ")");
  Vec n = w / len;
  if (const auto& hint = s.normal_hint()) {
    if (n.dot(fr.g * (*hint)(fr.jet, u, v)) < 0.0) n = -n;
  }
  return n;
}

double space_tau(const AmbientSpace& space) {
  if (auto b = dynamic_cast<const BergerSphere*>(&space)) return b->tau();
  if (auto h = dynamic_cast<const Heisenberg*>(&space)) return h->tau();
  if (dynamic_cast<const ProductSpace*>(&space)) return 0.0;
  throw InputError("killing-bound needs a Killing submersion space, got " + space.id());
}

}  // namespace

std::string to_string(SurfaceFamily family) {
  switch (family) {
    case SurfaceFamily::Equator: return "equator";
    case SurfaceFamily::AffinePlane: return "affine-plane";
    case SurfaceFamily::VerticalPlane: return "vertical-plane";
    case SurfaceFamily::RotationalSphere: return "rotational-sphere";
    case SurfaceFamily::Graph: return "graph";
    case SurfaceFamily::Custom: return "custom";
  }
  return "custom";
}

ParametricSurface::ParametricSurface(std::string name, SurfaceFamily family, Rect domain, Map map,
                                     std::optional<JetProvider> jets)
    : name_(std::move(name)), family_(family), domain_(domain), map_(std::move(map)),
      jets_(std::move(jets)) {
  if (!(domain_.u1 > domain_.u0 && domain_.v1 > domain_.v0))
    throw InputError("surface domain must be a non-empty rectangle");
}

SurfaceJet ParametricSurface::jet(double u, double v) const {
  if (jets_) return (*jets_)(u, v);
  SurfaceJet j;
  j.point = map_(u, v);
  auto at = [&](double du, double dv) { return Vec(j.point + unwrap(map_(u + du, v + dv) - j.point, periods_)); };
  auto first = [&](double h, bool along_u) {
    const double a = along_u ? h : 0.0, b = along_u ? 0.0 : h;
    return Vec((at(a, b) - at(-a, -b)) / (2.0 * h));
  };
  auto second = [&](double h, bool along_u) {
    const double a = along_u ? h : 0.0, b = along_u ? 0.0 : h;
    return Vec((at(a, b) - 2.0 * j.point + at(-a, -b)) / (h * h));
  };
  auto mixed = [&](double h) {
    return Vec((at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h));
  };
  const double h = kJetStep;
  j.du = richardson(first(h, true), first(0.5 * h, true));
  j.dv = richardson(first(h, false), first(0.5 * h, false));
  j.duu = richardson(second(h, true), second(0.5 * h, true));
  j.dvv = richardson(second(h, false), second(0.5 * h, false));
  j.duv = richardson(mixed(h), mixed(0.5 * h));
  return j;
}

FundamentalForms first_form(const ParametricSurface& s, const AmbientSpace& space, double u,
                            double v) {
  const Frame fr = frame_at(s, space, u, v);
  FundamentalForms ff;
  ff.E = fr.du.dot(fr.g * fr.du);
  ff.F = fr.du.dot(fr.g * fr.dv);
  ff.G = fr.dv.dot(fr.g * fr.dv);
  if (!(ff.E > 0.0 && ff.E * ff.G - ff.F * ff.F > kDegenerateArea * kDegenerateArea))
    throw DegenerateError("degenerate immersion sample in " + s.name());
  return ff;
}

Vec unit_normal(const ParametricSurface& s, const AmbientSpace& space, double u, double v) {
  return normal_from_frame(s, space, frame_at(s, space, u, v), u, v);
}

ShapeReport shape_report(const ParametricSurface& s, const AmbientSpace& space, double u, double v,
                         ConnectionMode mode) {
  const Frame fr = frame_at(s, space, u, v);
  const Vec n = normal_from_frame(s, space, fr, u, v);
  const Vec& p = fr.jet.point;
  const ChristoffelAtPoint gamma = christoffel(space, p, mode);
  const Vec gn = fr.g * n;

  ShapeReport r;
  r.u = u;
  r.v = v;
  r.normal = n;
  FundamentalForms& ff = r.forms;
  ff.E = fr.du.dot(fr.g * fr.du);
  ff.F = fr.du.dot(fr.g * fr.dv);
  ff.G = fr.dv.dot(fr.g * fr.dv);
  ff.e = (fr.jet.duu + gamma.contract(fr.du, fr.du)).dot(gn);
  ff.f = (fr.jet.duv + gamma.contract(fr.du, fr.dv)).dot(gn);
  ff.g = (fr.jet.dvv + gamma.contract(fr.dv, fr.dv)).dot(gn);

  // Eigenvalues of I⁻¹ II through the Cholesky factor of I.
  Eigen::Matrix2d first, second;
  first << ff.E, ff.F, ff.F, ff.G;
  second << ff.e, ff.f, ff.f, ff.g;
  const Eigen::LLT<Eigen::Matrix2d> llt(first);
  if (llt.info() != Eigen::Success) throw DegenerateError("first fundamental form is not positive");
  const Eigen::Matrix2d linv = llt.matrixL().solve(Eigen::Matrix2d::Identity());
  Eigen::Matrix2d m = linv * second * linv.transpose();
  m = 0.5 * (m + m.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(m, Eigen::EigenvaluesOnly);
  r.k1 = eig.eigenvalues()[0];
  r.k2 = eig.eigenvalues()[1];
  r.H = 0.5 * (r.k1 + r.k2);
  r.Ke = r.k1 * r.k2;
  if (space.has_killing_field()) r.nu = gn.dot(space.killing_jet(p).value);
  return r;
}

AngleFunction angle_function(const ParametricSurface& s, const AmbientSpace& space, double u,
                             double v) {
  const Frame fr = frame_at(s, space, u, v);
  const Vec n = normal_from_frame(s, space, fr, u, v);
  if (!space.has_killing_field()) throw InputError(space.id() + " has no vertical Killing field");
  const Vec xi = space.killing_jet(fr.jet.point).value;
  AngleFunction a;
  a.nu = n.dot(fr.g * xi);
  a.T = xi - a.nu * n;
  return a;
}

std::pair<double, double> grid_sample(const Rect& r, const Grid& grid, int i, int j) {
  const double su = grid.nu > 1 ? static_cast<double>(i) / (grid.nu - 1) : 0.5;
  const double sv = grid.nv > 1 ? static_cast<double>(j) / (grid.nv - 1) : 0.5;
  return {r.u0 + (r.u1 - r.u0) * su, r.v0 + (r.v1 - r.v0) * sv};
}

ConvexityCriterion parse_criterion(const std::string& name) {
  if (name == "positive") return ConvexityCriterion::Positive;
  if (name == "killing-bound") return ConvexityCriterion::KillingBound;
  if (name == "berger-bound") return ConvexityCriterion::BergerBound;
  throw InputError("unknown convexity criterion '" + name + "'");
}

std::string to_string(ConvexityCriterion c) {
  switch (c) {
    case ConvexityCriterion::Positive: return "positive";
    case ConvexityCriterion::KillingBound: return "killing-bound";
    case ConvexityCriterion::BergerBound: return "berger-bound";
  }
  return "positive";
}

ConvexityResult convexity_predicate(const ParametricSurface& s, const AmbientSpace& space,
                                    ConvexityCriterion criterion, const Grid& grid, double slack) {
  if (grid.nu < 1 || grid.nv < 1) throw InputError("convexity grid must be non-empty");
  ConvexityResult out;
  out.criterion = criterion;
  bool strict = true;
  switch (criterion) {
    case ConvexityCriterion::Positive: out.bound = 0.0; break;
    case ConvexityCriterion::KillingBound: out.bound = std::abs(space_tau(space)); break;
    case ConvexityCriterion::BergerBound: {
      const auto* b = dynamic_cast<const BergerSphere*>(&space);
      if (!b) throw InputError("berger-bound only applies in a Berger sphere");
      out.bound = std::abs(b->kappa() - 4.0 * b->tau() * b->tau()) / (4.0 * std::abs(b->tau()));
      strict = false;
      break;
    }
  }
  out.min_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      const auto [u, v] = grid_sample(s.domain(), grid, i, j);
      ShapeReport r;
      try {
        r = shape_report(s, space, u, v);
      } catch (const DegenerateError&) {
        ++out.skipped;
        continue;
      }
      ++out.samples;
      const double margin = criterion == ConvexityCriterion::BergerBound
                                ? std::min(std::abs(r.k1), std::abs(r.k2)) - out.bound
                                : std::min(r.k1, r.k2) - out.bound;
      out.min_margin = std::min(out.min_margin, margin);
      const bool pass = strict ? margin > slack : margin >= -slack;
      if (!pass) out.failures.push_back({u, v, r.k1, r.k2, margin});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Families

double equator_alpha(double kappa, double tau, double x) {
  const double d = kappa + 4.0 * tau * tau - (kappa - 4.0 * tau * tau) * std::cos(2.0 * x);
  return std::sqrt(2.0 * kappa * tau * tau / d);
}

Vec equator_reference_normal(double kappa, double tau, double theta, double x, double y) {
  Vec p(4);
  p << std::cos(x) * std::sin(y), std::cos(x) * std::cos(y), std::sin(x) * std::sin(theta),
      std::sin(x) * std::cos(theta);
  const auto maps = BergerSphere::frame_maps();
  const double alpha = equator_alpha(kappa, tau, x);
  return -alpha * (std::cos(x) * std::sin(y + theta) * (maps[0] * p) +
                   std::cos(x) * std::cos(y + theta) * (maps[1] * p) -
                   (kappa / (4.0 * tau * tau)) * std::sin(x) * (maps[2] * p));
}

ParametricSurface equator_surface(double kappa, double tau, double theta) {
  const double st = std::sin(theta), ct = std::cos(theta);
  auto map = [=](double x, double y) {
    Vec p(4);
    p << std::cos(x) * std::sin(y), std::cos(x) * std::cos(y), std::sin(x) * st, std::sin(x) * ct;
    return p;
  };
  auto jets = [=](double x, double y) {
    const double cx = std::cos(x), sx = std::sin(x), cy = std::cos(y), sy = std::sin(y);
    SurfaceJet j;
    j.point = Vec(4);
    j.point << cx * sy, cx * cy, sx * st, sx * ct;
    j.du = Vec(4);
    j.du << -sx * sy, -sx * cy, cx * st, cx * ct;
    j.dv = Vec(4);
    j.dv << cx * cy, -cx * sy, 0.0, 0.0;
    j.duu = -j.point;
    j.duv = Vec(4);
    j.duv << -sx * cy, sx * sy, 0.0, 0.0;
    j.dvv = Vec(4);
    j.dvv << -cx * sy, -cx * cy, 0.0, 0.0;
    return j;
  };
  std::ostringstream name;
  name << "equator theta=" << theta;
  ParametricSurface s(name.str(), SurfaceFamily::Equator, {0.0, 2.0 * kPi, 0.0, 2.0 * kPi}, map,
                      jets);
  s.set_normal_hint([=](const SurfaceJet&, double x, double y) {
    return equator_reference_normal(kappa, tau, theta, x, y);
  });
  return s;
}

ParametricSurface affine_plane(double a, double b, double c, double d, double half_extent) {
  const Eigen::Vector3d n(a, b, c);
  if (!(n.norm() > 0.0)) throw InputError("affine plane needs (a,b,c) != 0");
  const Eigen::Vector3d nh = n.normalized();
  const Eigen::Vector3d p0 = d * n / n.squaredNorm();
  const Eigen::Vector3d helper =
      std::abs(nh.z()) < 0.9 ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitX();
  const Eigen::Vector3d e1 = nh.cross(helper).normalized();
  const Eigen::Vector3d e2 = nh.cross(e1);
  auto map = [=](double u, double v) { return Vec(p0 + u * e1 + v * e2); };
  auto jets = [=](double u, double v) {
    SurfaceJet j;
    j.point = p0 + u * e1 + v * e2;
    j.du = e1;
    j.dv = e2;
    j.duu = j.duv = j.dvv = Vec::Zero(3);
    return j;
  };
  std::ostringstream name;
  name << "heis-plane a=" << a << " b=" << b << " c=" << c << " d=" << d;
  ParametricSurface s(name.str(), c == 0.0 ? SurfaceFamily::VerticalPlane : SurfaceFamily::AffinePlane,
                      {-half_extent, half_extent, -half_extent, half_extent}, map, jets);
  s.set_normal_hint([=](const SurfaceJet&, double, double) { return Vec(nh); });
  return s;
}

ParametricSurface vertical_plane(double dir, double half_extent) {
  const double c = std::cos(dir), sn = std::sin(dir);
  auto map = [=](double u, double v) {
    Vec p(3);
    p << u * c, u * sn, v;
    return p;
  };
  auto jets = [=](double u, double v) {
    SurfaceJet j;
    j.point = Vec(3);
    j.point << u * c, u * sn, v;
    j.du = Vec(3);
    j.du << c, sn, 0.0;
    j.dv = Vec(3);
    j.dv << 0.0, 0.0, 1.0;
    j.duu = j.duv = j.dvv = Vec::Zero(3);
    return j;
  };
  std::ostringstream name;
  name << "vertical-plane dir=" << dir;
  return ParametricSurface(name.str(), SurfaceFamily::VerticalPlane,
                           {-half_extent, half_extent, -half_extent, half_extent}, map, jets);
}

ParametricSurface paraboloid_graph(double half_extent) {
  auto map = [](double u, double v) {
    Vec p(3);
    p << u, v, u * u + v * v;
    return p;
  };
  auto jets = [](double u, double v) {
    SurfaceJet j;
    j.point = Vec(3);
    j.point << u, v, u * u + v * v;
    j.du = Vec(3);
    j.du << 1.0, 0.0, 2.0 * u;
    j.dv = Vec(3);
    j.dv << 0.0, 1.0, 2.0 * v;
    j.duu = Vec(3);
    j.duu << 0.0, 0.0, 2.0;
    j.duv = Vec::Zero(3);
    j.dvv = j.duu;
    return j;
  };
  ParametricSurface s("graph z=x^2+y^2", SurfaceFamily::Graph,
                      {-half_extent, half_extent, -half_extent, half_extent}, map, jets);
  s.set_normal_hint([](const SurfaceJet&, double, double) { return Vec(Eigen::Vector3d::UnitZ()); });
  return s;
}

ParametricSurface product_geodesic_sphere(double sphere_radius, double R, double theta0,
                                          double phi0, double t0) {
  if (!(R > 0.0 && R / sphere_radius < 0.5 * kPi))
    throw InputError("geodesic sphere radius must lie below the injectivity radius");
  Vec center(2);
  center << theta0, phi0;
  const Eigen::Vector3d c = RoundSphere::unit_from_chart(center);
  const Eigen::Vector3d et(std::cos(theta0) * std::cos(phi0), std::cos(theta0) * std::sin(phi0),
                           -std::sin(theta0));
  const Eigen::Vector3d ep(-std::sin(phi0), std::cos(phi0), 0.0);
  auto map = [=](double beta, double phi) {
    const double rho = R * std::sin(beta) / sphere_radius;
    const Eigen::Vector3d w = std::cos(phi) * et + std::sin(phi) * ep;
    const Vec base = RoundSphere::chart_from_unit(std::cos(rho) * c + std::sin(rho) * w);
    Vec p(3);
    p << base[0], base[1], t0 - R * std::cos(beta);
    return p;
  };
  std::ostringstream name;
  name << "geodesic-sphere R=" << R;
  const double margin = 0.02;
  ParametricSurface s(name.str(), SurfaceFamily::RotationalSphere,
                      {margin, kPi - margin, 0.0, 2.0 * kPi}, map);
  s.set_chart_periods({0.0, 2.0 * kPi, 0.0});
  s.set_normal_hint([=](const SurfaceJet& j, double, double) {
    Vec d(3);
    d << theta0 - j.point[0], std::remainder(phi0 - j.point[1], 2.0 * kPi), t0 - j.point[2];
    return d;
  });
  return s;
}

ParametricSurface parse_surface(const std::string& spec, const AmbientSpace& space) {
  std::istringstream is(spec);
  std::string head, word;
  is >> head;
  if (head == "custom") throw InputError("custom surfaces are meshes; use the classify command");
  std::map<std::string, double> num;
  while (is >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) throw InputError("unexpected token '" + word + "' in surface spec");
    const std::string key = word.substr(0, eq), value = word.substr(eq + 1);
    size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !std::isfinite(x))
      throw InputError("bad number for " + key + ": '" + value + "'");
    num[key] = x;
  }
  auto get = [&](const char* key, std::optional<double> fallback = std::nullopt) {
    const auto it = num.find(key);
    if (it != num.end()) return it->second;
    if (fallback) return *fallback;
    throw InputError(head + " spec needs " + key + "=");
  };
  if (head == "equator") {
    const auto* b = dynamic_cast<const BergerSphere*>(&space);
    if (!b) throw InputError("equator surfaces live in a Berger sphere");
    return equator_surface(b->kappa(), b->tau(), get("theta", 0.0));
  }
  if (space.chart_dim() != 3 || space.constrained())
    throw InputError(head + " needs a 3-dimensional chart space");
  if (head == "heis-plane")
    return affine_plane(get("a"), get("b"), get("c"), get("d", 0.0), get("extent", 1.0));
  if (head == "vertical-plane") return vertical_plane(get("dir", 0.0), get("extent", 1.0));
  throw InputError("unknown surface '" + head + "'");
}

}  // namespace convexa
