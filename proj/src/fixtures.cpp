#include "convexa/fixtures.hpp"

#include "convexa/spaces.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace convexa {

namespace {

constexpr double kPi = std::numbers::pi;

// Exponential map of the unit sphere at the chart point (θ0, φ0), in the orthonormal frame
// (∂θ, ∂φ/sin θ0); the result is unwrapped in φ near φ0.
struct SphereExp {
  Eigen::Vector3d c, e1, e2;
  double phi0;

  SphereExp(double theta0, double phi)
      : c(RoundSphere::unit_from_chart(Eigen::Vector2d(theta0, phi))),
        e1(std::cos(theta0) * std::cos(phi), std::cos(theta0) * std::sin(phi), -std::sin(theta0)),
        e2(c.cross(e1)),
        phi0(phi) {}

  Eigen::Vector2d operator()(double x, double y) const {
    const double d = std::hypot(x, y);
    Eigen::Vector3d q = c;
    if (d > 0.0) q = std::cos(d) * c + std::sin(d) / d * (x * e1 + y * e2);
    Eigen::Vector2d p = RoundSphere::chart_from_unit(q);
    p[1] -= 2.0 * kPi * std::round((p[1] - phi0) / (2.0 * kPi));
    return p;
  }
};

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

// Closed surface of revolution from a profile β ∈ [0, π] ↦ (ρ, height), with poles at β = 0
// (top) and β = π; place(ρ cos ψ, ρ sin ψ, height) gives the chart point.
TriMesh revolution(const std::function<std::pair<double, double>(double)>& profile,
                   const std::function<Eigen::Vector3d(double, double, double)>& place, int rings,
                   int sectors) {
  require(rings >= 3 && sectors >= 3, "fixture needs at least 3 rings and 3 sectors");
  TriMesh m;
  const auto [rho_top, h_top] = profile(0.0);
  m.vertices.push_back(place(0.0, 0.0, h_top));
  (void)rho_top;
  for (int i = 1; i < rings; ++i) {
    const auto [rho, h] = profile(kPi * i / rings);
    for (int j = 0; j < sectors; ++j) {
      const double psi = 2.0 * kPi * j / sectors;
      m.vertices.push_back(place(rho * std::cos(psi), rho * std::sin(psi), h));
    }
  }
  const auto [rho_bottom, h_bottom] = profile(kPi);
  (void)rho_bottom;
  m.vertices.push_back(place(0.0, 0.0, h_bottom));
  const int south = static_cast<int>(m.vertices.size()) - 1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * sectors + ((j % sectors) + sectors) % sectors; };
  for (int j = 0; j < sectors; ++j) m.triangles.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i + 1 < rings; ++i)
    for (int j = 0; j < sectors; ++j) {
      m.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      m.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  for (int j = 0; j < sectors; ++j) m.triangles.push_back({south, ring(rings - 1, j + 1), ring(rings - 1, j)});
  return m;
}

// Torus-type grid surface, periodic in both parameters; triangles wound as (v, u).
TriMesh torus_grid(const std::function<Eigen::Vector3d(double, double)>& at, int nu, int nv) {
  require(nu >= 3 && nv >= 3, "fixture needs at least 3 samples per direction");
  TriMesh m;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) m.vertices.push_back(at(2.0 * kPi * i / nu, 2.0 * kPi * j / nv));
  auto id = [&](int i, int j) { return (i % nu) * nv + (j % nv); };
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      m.triangles.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
    }
  return m;
}

TriMesh merge(const TriMesh& a, const TriMesh& b) {
  TriMesh m = a;
  const int off = static_cast<int>(a.vertices.size());
  m.vertices.insert(m.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (const auto& t : b.triangles) m.triangles.push_back({t[0] + off, t[1] + off, t[2] + off});
  return m;
}

std::function<Eigen::Vector3d(double, double, double)> on_sphere(double theta0, double phi0) {
  const SphereExp exp(theta0, phi0);
  return [exp](double x, double y, double h) {
    const Eigen::Vector2d p = exp(x, y);
    return Eigen::Vector3d(p[0], p[1], h);
  };
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

TriMesh sphere_fixture(double R, double t0, int rings, int sectors, double theta0, double phi0) {
  require(R > 0.0 && R < 1.0, "sphere fixture radius must lie in (0, 1)");
  TriMesh m = revolution([&](double b) { return std::pair{R * std::sin(b), t0 + R * std::cos(b)}; },
                         on_sphere(theta0, phi0), rings, sectors);
  m.space = kSphereProduct;
  return m;
}

TriMesh sphere_pair_fixture(double R, double t0, int rings, int sectors) {
  require(R > 0.0 && R < 0.5, "sphere pair radius must lie in (0, 0.5)");
  TriMesh m = merge(sphere_fixture(R, t0, rings, sectors, 0.5 * kPi, -0.5 - R),
                    sphere_fixture(R, t0, rings, sectors, 0.5 * kPi, 0.5 + R));
  m.space = kSphereProduct;
  return m;
}

TriMesh egg_fixture(double R, double t0, int rings, int sectors) {
  require(R > 0.0 && R < 0.8, "egg fixture radius must lie in (0, 0.8)");
  TriMesh m = revolution(
      [&](double b) { return std::pair{R * std::sin(b) * (1.0 + 0.25 * std::cos(b)), t0 + R * std::cos(b)}; },
      on_sphere(0.5 * kPi, 0.0), rings, sectors);
  m.space = kSphereProduct;
  return m;
}

TriMesh graph_fixture(double rho0, double truncation, int rings, int sectors) {
  require(rho0 > 0.0 && rho0 < 1.5, "graph fixture disk radius must lie in (0, 1.5)");
  require(truncation > 1.0 / rho0, "truncation must exceed the minimum height 1/rho0");
  require(rings >= 2 && sectors >= 3, "fixture needs at least 2 rings and 3 sectors");
  const auto place = on_sphere(0.5 * kPi, 0.0);
  const double dmax = rho0 - 1.0 / truncation;
  TriMesh m;
  m.vertices.push_back(place(0.0, 0.0, 1.0 / rho0));
  for (int i = 1; i <= rings; ++i) {
    const double d = dmax * i / rings;
    const double h = i == rings ? truncation : 1.0 / (rho0 - d);
    for (int j = 0; j < sectors; ++j) {
      const double psi = 2.0 * kPi * j / sectors;
      m.vertices.push_back(place(d * std::cos(psi), d * std::sin(psi), h));
    }
  }
  auto ring = [&](int i, int j) { return 1 + (i - 1) * sectors + (j % sectors); };
  for (int j = 0; j < sectors; ++j) m.triangles.push_back({0, ring(1, j + 1), ring(1, j)});
  for (int i = 1; i < rings; ++i)
    for (int j = 0; j < sectors; ++j) {
      m.triangles.push_back({ring(i, j), ring(i, j + 1), ring(i + 1, j + 1)});
      m.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i + 1, j)});
    }
  m.space = kSphereProduct;
  m.truncation = truncation;
  return m;
}

TriMesh remark_tube_fixture(double l, double r0, int rings, int sectors) {
  require(l > 0.0 && r0 > 0.0 && 2.0 * r0 < l, "remark tube needs 0 < 2 r0 < l");
  TriMesh m = revolution([&](double b) { return std::pair{r0 * std::sin(b), r0 + r0 * std::cos(b)}; },
                         [](double x, double y, double h) { return Eigen::Vector3d(x, y, h); }, rings, sectors);
  m.space = "product base=capped l=" + num(l) + " blend=1 fiber=line";
  return m;
}

TriMesh torus_fixture(double Rc, double a, double t0, int nu, int nv) {
  require(Rc > 0.0 && a > 0.0 && a < Rc && Rc + a < 1.0, "torus fixture needs 0 < a < Rc, Rc + a < 1");
  const auto place = on_sphere(0.5 * kPi, 0.0);
  TriMesh m = torus_grid(
      [&](double u, double v) {
        const double r = Rc + a * std::cos(v);
        return place(r * std::cos(u), a * std::sin(v), t0 + r * std::sin(u));
      },
      nu, nv);
  m.space = kSphereProduct;
  return m;
}

TriMesh figure_eight_fixture(double A, double a, double t0, int nu, int nv) {
  require(A > 0.0 && a > 0.0 && a < 0.5 * A && A + a < 1.0, "figure-eight fixture needs 0 < 2a < A, A + a < 1");
  const auto place = on_sphere(0.5 * kPi, 0.0);
  TriMesh m = torus_grid(
      [&](double u, double v) {
        const Eigen::Vector2d c(A * std::sin(u), A * std::sin(u) * std::cos(u));
        const Eigen::Vector2d d = Eigen::Vector2d(std::cos(u), std::cos(2.0 * u)).normalized();
        const Eigen::Vector2d n(-d.y(), d.x());
        const Eigen::Vector2d q = c + a * std::cos(v) * n;
        return place(q.x(), a * std::sin(v), t0 + q.y());
      },
      nu, nv);
  m.space = kSphereProduct;
  return m;
}

TriMesh heisenberg_graph_fixture(double radius, double tau, int rings, int sectors) {
  require(radius > 0.0, "graph radius must be positive");
  require(rings >= 2 && sectors >= 3, "fixture needs at least 2 rings and 3 sectors");
  TriMesh m;
  m.vertices.emplace_back(0.0, 0.0, 0.0);
  for (int i = 1; i <= rings; ++i) {
    const double r = radius * i / rings;
    for (int j = 0; j < sectors; ++j) {
      const double psi = 2.0 * kPi * j / sectors;
      m.vertices.emplace_back(r * std::cos(psi), r * std::sin(psi), i == rings ? radius * radius : r * r);
    }
  }
  auto ring = [&](int i, int j) { return 1 + (i - 1) * sectors + (j % sectors); };
  for (int j = 0; j < sectors; ++j) m.triangles.push_back({0, ring(1, j + 1), ring(1, j)});
  for (int i = 1; i < rings; ++i)
    for (int j = 0; j < sectors; ++j) {
      m.triangles.push_back({ring(i, j), ring(i, j + 1), ring(i + 1, j + 1)});
      m.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i + 1, j)});
    }
  m.space = "heisenberg tau=" + num(tau);
  m.truncation = radius * radius;
  return m;
}

TriMesh heisenberg_vertical_plane_fixture(double extent, double tau, int n) {
  require(extent > 0.0 && n >= 2, "vertical plane fixture needs extent > 0 and n >= 2");
  TriMesh m;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      m.vertices.emplace_back(-extent + 2.0 * extent * i / n, 0.0, -extent + 2.0 * extent * j / n);
  auto id = [&](int i, int j) { return i * (n + 1) + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  m.space = "heisenberg tau=" + num(tau);
  return m;
}

std::vector<std::string> fixture_names() {
  return {"sphere", "sphere-pair", "egg",   "graph",      "remark-tube",
          "torus",  "figure-eight", "heis-graph", "heis-vertical-plane"};
}

TriMesh make_fixture(const std::string& name, double resolution) {
  require(resolution > 0.0 && resolution <= 16.0, "fixture resolution must lie in (0, 16]");
  auto n = [&](int base) { return std::max(3, static_cast<int>(std::lround(base * resolution))); };
  if (name == "sphere") return sphere_fixture(0.3, 0.7, n(50), n(100));
  if (name == "sphere-pair") return sphere_pair_fixture(0.3, 0.7, n(40), n(80));
  if (name == "egg") return egg_fixture(0.3, 0.7, n(50), n(100));
  if (name == "graph") return graph_fixture(1.0, 20.0, n(64), n(96));
  if (name == "remark-tube") return remark_tube_fixture(10.0, 3.6, n(48), n(160));
  if (name == "torus") return torus_fixture(0.3, 0.1, 0.7, n(120), n(40));
  if (name == "figure-eight") return figure_eight_fixture(0.3, 0.05, 0.7, n(160), n(24));
  if (name == "heis-graph") return heisenberg_graph_fixture(1.0, 0.5, n(32), n(64));
  if (name == "heis-vertical-plane") return heisenberg_vertical_plane_fixture(1.0, 0.5, n(24));
  throw InputError("unknown fixture '" + name + "'");
}

}  // namespace convexa
