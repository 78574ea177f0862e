#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convexa/immersion.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace convexa;

namespace {

constexpr double kPi = std::numbers::pi;

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Closed-form equator curvature, evaluated independently of the library.
double ke_closed(double kappa, double tau, double x) {
  const double d = kappa + 4 * tau * tau - (kappa - 4 * tau * tau) * std::cos(2 * x);
  const double c = std::cos(x);
  return -4 * tau * tau * std::pow(kappa - 4 * tau * tau, 2) * std::pow(c, 4) / (d * d);
}

ParametricSurface swapped(const ParametricSurface& s) {
  const Rect d = s.domain();
  auto map = [s](double u, double v) { return s(v, u); };
  auto jets = [s](double u, double v) {
    SurfaceJet j = s.jet(v, u);
    std::swap(j.du, j.dv);
    std::swap(j.duu, j.dvv);
    return j;
  };
  return ParametricSurface(s.name() + " swapped", s.family(), {d.v0, d.v1, d.u0, d.u1}, map, jets);
}

}  // namespace

TEST_CASE("equator first fundamental form") {
  for (auto [kappa, tau] : {std::pair{4.0, 0.5}, std::pair{9.0, 0.25}, std::pair{1.0, 1.0}}) {
    BergerSphere b(kappa, tau);
    const ParametricSurface eq = equator_surface(kappa, tau, 0.3);
    for (double x : {0.0, 0.4, 1.2, 2.9}) {
      for (double y : {0.0, 1.0, 4.0}) {
        const FundamentalForms ff = first_form(eq, b, x, y);
        const double alpha = equator_alpha(kappa, tau, x);
        CHECK(ff.E == doctest::Approx(4 / kappa).epsilon(1e-10));
        CHECK(std::abs(ff.F) < 1e-10);
        CHECK(ff.G == doctest::Approx(4 * tau * tau * std::cos(x) * std::cos(x) /
                                      (kappa * alpha * alpha))
                          .epsilon(1e-8));
      }
    }
  }
  CHECK(equator_alpha(4.0, 0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("equator unit normal matches the closed form") {
  for (auto [kappa, tau, theta] : {std::tuple{4.0, 1.0, 0.0}, std::tuple{4.0, 0.5, 0.7},
                                    std::tuple{9.0, -0.25, 1.3}}) {
    BergerSphere b(kappa, tau);
    const ParametricSurface eq = equator_surface(kappa, tau, theta);
    for (double x : {0.0, 0.5, -1.0, 2.0}) {
      for (double y : {0.0, 0.8, 3.0}) {
        const Vec n = unit_normal(eq, b, x, y);
        const SurfaceJet j = eq.jet(x, y);
        CHECK(std::abs(metric_apply(b, j.point, n, j.du)) < 1e-10);
        CHECK(std::abs(metric_apply(b, j.point, n, j.dv)) < 1e-10);
        CHECK(metric_apply(b, j.point, n, n) == doctest::Approx(1.0).epsilon(1e-10));
        const Vec ref = equator_reference_normal(kappa, tau, theta, x, y);
        CHECK(metric_apply(b, j.point, ref, ref) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK((n - ref).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("equator shape operator") {
  BergerSphere round(4.0, 1.0);
  const ParametricSurface eq_round = equator_surface(4.0, 1.0, 0.0);
  for (double x : {0.0, 0.3, 1.0})
    for (double y : {0.2, 2.0}) {
      const ShapeReport r = shape_report(eq_round, round, x, y);
      CHECK(std::abs(r.Ke) < 1e-7);
      CHECK(std::abs(r.k1) < 1e-7);
      CHECK(std::abs(r.k2) < 1e-7);
    }

  BergerSphere b(4.0, 0.5);
  const ParametricSurface eq = equator_surface(4.0, 0.5, 0.0);
  const ShapeReport r0 = shape_report(eq, b, 0.0, 0.4);
  CHECK(std::abs(r0.H) < 1e-7);
  CHECK(r0.Ke == doctest::Approx(-2.25).epsilon(1e-9));
  CHECK(r0.Ke == doctest::Approx(r0.k1 * r0.k2).epsilon(1e-12));
  CHECK(std::abs(shape_report(eq, b, 0.5 * kPi - 1e-3, 0.4).Ke) < 1e-8);
  CHECK_THROWS_AS(shape_report(eq, b, 0.5 * kPi, 0.4), DegenerateError);

  for (double x : {0.2, 0.9, 1.4, 2.5})
    CHECK(shape_report(eq, b, x, 1.0).Ke == doctest::Approx(ke_closed(4.0, 0.5, x)).epsilon(1e-9));
}

TEST_CASE("second fundamental form of the equator") {
  BergerSphere b(9.0, 0.25);
  const ParametricSurface eq = equator_surface(9.0, 0.25, 0.0);
  const ShapeReport r = shape_report(eq, b, 0.3, 1.1);
  CHECK(std::abs(r.forms.e) < 1e-10);
  CHECK(std::abs(r.forms.g) < 1e-10);
  // off-diagonal magnitude 4α|κ−4τ²||cos x|³/κ²
  const double alpha = equator_alpha(9.0, 0.25, 0.3);
  CHECK(std::abs(r.forms.f) ==
        doctest::Approx(4 * alpha * (9.0 - 0.25) * std::pow(std::cos(0.3), 3) / 81.0).epsilon(1e-10));
}

TEST_CASE("planes in Heisenberg space") {
  Heisenberg h(0.5);
  const ParametricSurface horizontal = affine_plane(0, 0, 1, 0);
  const Vec n = unit_normal(horizontal, h, 0.0, 0.0);
  CHECK((n - vec({0, 0, 1})).norm() < 1e-14);
  const ShapeReport r = shape_report(horizontal, h, 0.0, 0.0);
  CHECK(std::abs(r.k1) < 1e-12);
  CHECK(std::abs(r.k2) < 1e-12);
  const AngleFunction af = angle_function(horizontal, h, 0.0, 0.0);
  CHECK(std::abs(std::abs(af.nu) - 1.0) < 1e-14);
  CHECK(af.T.norm() < 1e-14);

  const ParametricSurface vertical = vertical_plane(0.0);
  for (double u : {-0.8, 0.0, 0.6})
    for (double v : {-1.0, 0.3}) {
      const AngleFunction a = angle_function(vertical, h, u, v);
      CHECK(std::abs(a.nu) < 1e-14);
      const Vec p = vertical(u, v);
      CHECK(metric_apply(h, p, a.T, a.T) == doctest::Approx(1.0).epsilon(1e-12));
      const ShapeReport s = shape_report(vertical, h, u, v);
      CHECK(std::abs(s.H) < 1e-12);
      CHECK(std::max(std::abs(s.k1), std::abs(s.k2)) <= 0.5 + 1e-12);
    }
}

TEST_CASE("angle function identities") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Heisenberg h(-0.7);
  for (int n = 0; n < 20; ++n) {
    const ParametricSurface s = affine_plane(u(rng), u(rng), u(rng), u(rng));
    const double a = u(rng), b = u(rng);
    const AngleFunction af = angle_function(s, h, a, b);
    const Vec p = s(a, b), nn = unit_normal(s, h, a, b);
    CHECK(std::abs(metric_apply(h, p, af.T, nn)) < 1e-10);
    CHECK(metric_apply(h, p, af.T, af.T) + af.nu * af.nu == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(af.nu) <= 1.0 + 1e-10);
  }
  BergerSphere b(4.0, 0.5);
  const ParametricSurface eq = equator_surface(4.0, 0.5, 0.2);
  for (double x : {0.1, 0.7, 2.0}) {
    const AngleFunction af = angle_function(eq, b, x, 0.4);
    const Vec p = eq(x, 0.4);
    CHECK(metric_apply(b, p, af.T, af.T) + af.nu * af.nu == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("reparametrization and normal flip") {
  BergerSphere b(9.0, 0.5);
  const ParametricSurface eq = equator_surface(9.0, 0.5, 0.0);
  const ParametricSurface sw = swapped(eq);
  for (double x : {0.2, 1.0})
    for (double y : {0.5, 2.5}) {
      const ShapeReport a = shape_report(eq, b, x, y);
      const ShapeReport c = shape_report(sw, b, y, x);
      // same normal up to sign: curvatures either agree or negate
      const double sign = a.normal.dot(b.metric(eq(x, y)) * c.normal) > 0 ? 1.0 : -1.0;
      CHECK((c.normal - sign * a.normal).norm() < 1e-10);
      CHECK(std::abs(sign * a.H - c.H) < 1e-7);
      CHECK(std::abs(a.Ke - c.Ke) < 1e-7);
      CHECK(std::abs(std::abs(*a.nu) - std::abs(*c.nu)) < 1e-7);
      const double lo = sign > 0 ? a.k1 : -a.k2, hi = sign > 0 ? a.k2 : -a.k1;
      CHECK(std::abs(lo - c.k1) < 1e-7);
      CHECK(std::abs(hi - c.k2) < 1e-7);
    }
}

TEST_CASE("finite-difference jets agree with analytic jets") {
  const ParametricSurface eq = equator_surface(4.0, 0.5, 0.4);
  const ParametricSurface fd("equator fd", SurfaceFamily::Custom, eq.domain(),
                             [&eq](double u, double v) { return eq(u, v); });
  const SurfaceJet a = eq.jet(0.7, 1.9), f = fd.jet(0.7, 1.9);
  CHECK((a.du - f.du).norm() < 1e-10);
  CHECK((a.dv - f.dv).norm() < 1e-10);
  CHECK((a.duu - f.duu).norm() < 1e-6);
  CHECK((a.duv - f.duv).norm() < 1e-6);
  CHECK((a.dvv - f.dvv).norm() < 1e-6);
}

TEST_CASE("geodesic sphere in S2 x R is strictly convex") {
  auto space = parse_space("product base=sphere r=1 fiber=line");
  const ParametricSurface s = product_geodesic_sphere(1.0, 0.3, 0.5 * kPi, 0.0, 0.7);
  const ConvexityResult r = convexity_predicate(s, *space, ConvexityCriterion::Positive, {24, 24});
  CHECK(r.all_pass());
  CHECK(r.samples == 24 * 24);
  CHECK(r.min_margin > 1.0);
  // near the equator of the sphere the principal curvatures approach cot-like values ≈ 1/R
  const ShapeReport mid = shape_report(s, *space, 0.5 * kPi, 0.3);
  CHECK(mid.k1 > 2.5);
  CHECK(mid.k2 < 4.0);
}

TEST_CASE("convexity predicates") {
  BergerSphere b(4.0, 0.5);
  const ParametricSurface eq = equator_surface(4.0, 0.5, 0.0);
  const ConvexityResult r = convexity_predicate(eq, b, ConvexityCriterion::BergerBound, {21, 5});
  CHECK_FALSE(r.all_pass());
  CHECK(r.bound == doctest::Approx(1.5));
  // x = 0, π, 2π attain equality and pass; every interior x fails; x = π/2, 3π/2 are singular
  CHECK(r.skipped == 2 * 5);
  CHECK(r.failures.size() == static_cast<size_t>((21 - 3 - 2) * 5));
  for (const auto& f : r.failures) CHECK(std::abs(std::cos(f.u)) < 1.0 - 1e-9);

  Heisenberg h(0.5);
  const ConvexityResult v = convexity_predicate(vertical_plane(0.3), h, ConvexityCriterion::KillingBound, {8, 8});
  CHECK(v.failures.size() == 64u);

  auto prod = parse_space("product base=sphere r=1 fiber=line");
  CHECK_THROWS_AS(convexity_predicate(vertical_plane(0.0), *prod, ConvexityCriterion::BergerBound, {8, 8}),
                  InputError);
  CHECK(parse_criterion("killing-bound") == ConvexityCriterion::KillingBound);
  CHECK_THROWS_AS(parse_criterion("concave"), InputError);
}

TEST_CASE("surface spec parsing") {
  BergerSphere b(4.0, 0.5);
  Heisenberg h(0.5);
  CHECK(parse_surface("equator theta=0.5", b).family() == SurfaceFamily::Equator);
  CHECK(parse_surface("heis-plane a=1 b=1 c=1 d=1", h).family() == SurfaceFamily::AffinePlane);
  CHECK(parse_surface("heis-plane a=0 b=1 c=0 d=0", h).family() == SurfaceFamily::VerticalPlane);
  CHECK(parse_surface("vertical-plane dir=0.3", h).family() == SurfaceFamily::VerticalPlane);
  CHECK_THROWS_AS(parse_surface("equator theta=0", h), InputError);
  CHECK_THROWS_AS(parse_surface("heis-plane a=0 b=0 c=0 d=1", h), InputError);
  CHECK_THROWS_AS(parse_surface("custom mesh=foo.off", h), InputError);
  CHECK_THROWS_AS(parse_surface("blob", h), InputError);
}
