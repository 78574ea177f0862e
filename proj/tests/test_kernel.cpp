#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convexa/kernel.hpp"
#include "convexa/spaces.hpp"

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

Vec random_s3(std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec p(4);
  for (int i = 0; i < 4; ++i) p[i] = n(rng);
  return p / p.norm();
}

VectorFieldJet constant_field(const Vec& v) { return {v, Mat::Zero(v.size(), v.size())}; }

}  // namespace

TEST_CASE("metric_apply on the Berger frame") {
  const Vec p = vec({1, 0, 0, 0});
  const BergerFrame f = berger_frame(p);
  BergerSphere round(4.0, 1.0);
  CHECK(metric_apply(round, p, f.e1, f.e1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(metric_apply(round, p, Vec::Zero(4), f.e2) == 0.0);
  // |V|^2 = 16 tau^2 / kappa^2 for the metric as written
  BergerSphere squashed(4.0, 0.5);
  CHECK(metric_apply(squashed, p, f.v, f.v) == doctest::Approx(0.25).epsilon(1e-14));

  TangentVec x{f.e1, {p, squashed.id()}}, y{f.e2, {p, squashed.id()}};
  CHECK(std::abs(metric_apply(squashed, x, y)) < 1e-15);
}

TEST_CASE("metric_apply rejects malformed input") {
  BergerSphere b(4.0, 0.5);
  CHECK_THROWS_AS(metric_apply(b, vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 1, 0})), InputError);
  CHECK_THROWS_AS(metric_apply(b, vec({1.01, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 1, 0, 0})),
                  InputError);
  Heisenberg h(0.5);
  CHECK_THROWS_AS(metric_apply(h, vec({0, 0, 0}), vec({1, 0}), vec({0, 1, 0})), InputError);
}

TEST_CASE("metric tensors are symmetric positive definite") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Heisenberg h(0.7);
  BergerSphere b(9.0, 0.25);
  for (int i = 0; i < 50; ++i) {
    const Mat gh = metric_at(h, vec({u(rng), u(rng), u(rng)})).g;
    const Mat gb = metric_at(b, random_s3(rng)).g;
    for (const Mat& g : {gh, gb}) {
      CHECK((g - g.transpose()).cwiseAbs().maxCoeff() < 1e-14);
      CHECK(Eigen::SelfAdjointEigenSolver<Mat>(g).eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("Heisenberg analytic Christoffels agree with finite differences") {
  Heisenberg h(0.5);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<Vec> pts{vec({0, 0, 0})};
  for (int i = 0; i < 20; ++i) pts.push_back(vec({u(rng), u(rng), u(rng)}));
  for (const Vec& p : pts) {
    const ChristoffelAtPoint a = christoffel(h, p, ConnectionMode::Analytic);
    const ChristoffelAtPoint f = christoffel(h, p, ConnectionMode::FiniteDifference);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a(k, i, j) - f(k, i, j)));
    CHECK(worst < 1e-6);
    CHECK(a.symmetry_defect() == 0.0);
    CHECK(f.symmetry_defect() < 1e-8);
  }
}

TEST_CASE("finite-difference Christoffels converge at second order") {
  // Nil's metric is quadratic, so central differences are exact there; use Berger.
  BergerSphere b(4.0, 0.3);
  std::mt19937 rng(23);
  const Vec p = random_s3(rng);
  const ChristoffelAtPoint a = christoffel(b, p, ConnectionMode::Analytic);
  auto err = [&](double step) {
    const ChristoffelAtPoint f = christoffel_fd(b, p, step);
    double worst = 0.0;
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(a(k, i, j) - f(k, i, j)));
    return worst;
  };
  const double ratio = err(2e-2) / err(1e-2);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("Christoffels of simple charts") {
  ProductSpace flat(std::make_shared<FlatPlane>(), Fiber{});
  const ChristoffelAtPoint g0 = christoffel(flat, vec({0.3, 1.2, -4.0}));
  const ChristoffelAtPoint g1 = christoffel(flat, vec({0.3, 1.2, -4.0}), ConnectionMode::FiniteDifference);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(g0(k, i, j) == 0.0);
        CHECK(std::abs(g1(k, i, j)) < 1e-12);
      }

  RoundSphere s2(1.0);
  const ChristoffelAtPoint gs = christoffel(s2, vec({kPi / 4, 0.3}));
  CHECK(gs(0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-14));
  const ChristoffelAtPoint gf = christoffel(s2, vec({kPi / 4, 0.3}), ConnectionMode::FiniteDifference);
  CHECK(gf(0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(gf(1, 0, 1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Berger analytic connection matches finite differences of the metric") {
  std::mt19937 rng(3);
  BergerSphere b(4.0, 0.5);
  for (int n = 0; n < 10; ++n) {
    const Vec p = random_s3(rng);
    const ChristoffelAtPoint a = christoffel(b, p, ConnectionMode::Analytic);
    const ChristoffelAtPoint f = christoffel(b, p, ConnectionMode::FiniteDifference);
    double worst = 0.0;
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(a(k, i, j) - f(k, i, j)));
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("covariant derivatives of the Berger frame") {
  BergerSphere b(4.0, 1.0);
  std::mt19937 rng(5);
  for (int n = 0; n < 10; ++n) {
    const Vec p = random_s3(rng);
    const auto jets = berger_frame_jets(p);
    const Vec d12 = covariant_derivative(b, p, jets[0].value, jets[1]);
    CHECK((d12 + jets[2].value).norm() < 1e-12);
    const Vec dvv = covariant_derivative(b, p, jets[2].value, jets[2]);
    CHECK(dvv.norm() < 1e-12);
  }
  Heisenberg h(0.5);
  const Vec c = covariant_derivative(h, vec({0, 0, 0}), vec({1, 0, 0}), constant_field(vec({1, 0, 0})));
  CHECK(c.norm() < 1e-15);
  ProductSpace flat(std::make_shared<FlatPlane>(), Fiber{});
  const Vec z = covariant_derivative(flat, vec({1, 2, 3}), vec({0.3, 0.1, 2}),
                                     constant_field(vec({1, -1, 4})));
  CHECK(z.norm() == 0.0);
  CHECK_THROWS_AS(covariant_derivative(h, vec({0, 0, 0}), vec({1, 0, 0}), VectorFieldJet{}),
                  InputError);
}

TEST_CASE("metric compatibility and torsion-freeness in coordinate fields") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Heisenberg h(-0.6);
  ProductSpace cap(std::make_shared<CappedCylinder>(10.0, 0.2), Fiber{});
  ProductSpace sph(std::make_shared<RoundSphere>(1.3), Fiber{});
  for (const AmbientSpace* space : {static_cast<const AmbientSpace*>(&h), static_cast<const AmbientSpace*>(&cap),
                                    static_cast<const AmbientSpace*>(&sph)}) {
    for (int n = 0; n < 20; ++n) {
      Vec p = vec({u(rng), u(rng), u(rng)});
      if (space != &h) p[0] = 1.5 + 0.5 * u(rng);
      const ChristoffelAtPoint gamma = christoffel(*space, p, ConnectionMode::Analytic);
      const Mat g = space->metric(p);
      const double step = 1e-5;
      for (int i = 0; i < 3; ++i) {
        Vec pp = p, pm = p;
        pp[i] += step;
        pm[i] -= step;
        const Mat dg = (space->metric(pp) - space->metric(pm)) / (2 * step);
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            double rhs = 0.0;
            for (int l = 0; l < 3; ++l) rhs += gamma(l, i, j) * g(l, k) + gamma(l, i, k) * g(j, l);
            CHECK(std::abs(dg(j, k) - rhs) < 1e-8);
            // coordinate fields commute, so torsion reduces to Γ symmetry
            CHECK(gamma(k, i, j) == gamma(k, j, i));
          }
      }
    }
  }
}

TEST_CASE("sectional curvature") {
  RoundSphere s2(1.0);
  CHECK(sectional_curvature(s2, vec({1.1, 0.4}), vec({1, 0}), vec({0, 1})) ==
        doctest::Approx(1.0).epsilon(1e-6));
  RoundSphere s2r(2.0);
  CHECK(sectional_curvature(s2r, vec({0.7, 2.0}), vec({1, 0.3}), vec({-0.2, 1})) ==
        doctest::Approx(0.25).epsilon(1e-6));

  Heisenberg h(0.5);
  CHECK(sectional_curvature(h, vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0})) ==
        doctest::Approx(-0.75).epsilon(1e-7));
  // vertical planes in Nil have curvature τ²
  CHECK(sectional_curvature(h, vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 0, 1})) ==
        doctest::Approx(0.25).epsilon(1e-7));
  // basis independence
  const Vec p = vec({0.3, -0.2, 0.9});
  const Vec x = vec({1, 0.2, -0.3}), y = vec({0.1, 1, 0.5});
  const double k0 = sectional_curvature(h, p, x, y);
  CHECK(std::abs(sectional_curvature(h, p, x + 2 * y, -0.5 * y) - k0) < 1e-6);
  CHECK(std::abs(sectional_curvature(h, p, y, x) - k0) < 1e-6);

  CappedCylinder cap(10.0, 0.2);
  CHECK(std::abs(sectional_curvature(cap, vec({0.0, 1.0}), vec({1, 0}), vec({0, 1}))) < 0.01);

  CHECK_THROWS_AS(sectional_curvature(h, p, x, 3.0 * x), DegenerateError);
}

TEST_CASE("Berger sectional curvatures") {
  std::mt19937 rng(17);
  for (auto [kappa, tau] : {std::pair{4.0, 1.0}, std::pair{4.0, 0.5}, std::pair{9.0, 0.25}}) {
    BergerSphere b(kappa, tau);
    for (int n = 0; n < 5; ++n) {
      const Vec p = random_s3(rng);
      const BergerFrame f = berger_frame(p);
      CHECK(sectional_curvature(b, p, f.e1, f.e2) ==
            doctest::Approx(kappa - 3 * tau * tau).epsilon(1e-6));
      CHECK(sectional_curvature(b, p, f.e1, f.v) == doctest::Approx(tau * tau).epsilon(1e-6));
    }
  }
}

TEST_CASE("geodesic integration") {
  ProductSpace flat(std::make_shared<FlatPlane>(), Fiber{});
  const Vec p = vec({0.1, -0.2, 0.3}), v = vec({1, 2, -2});
  const Curve line = geodesic_integrate(flat, p, v, 2.5, 0.1);
  CHECK((line.points.back() - (p + 2.5 * v / v.norm())).norm() < 1e-9);

  RoundSphere s2(1.0);
  const Vec q = vec({kPi / 2, 0.0});
  const Curve circle = geodesic_integrate(s2, q, vec({1, 0.6}), 2 * kPi, 1e-3);
  Vec end = circle.points.back();
  end[1] = std::remainder(end[1], 2 * kPi);
  CHECK((end - q).norm() < 1e-5);
  CHECK(circle.max_relative_speed_drift < 1e-6);

  Heisenberg h(0.5);
  const Curve fiber = geodesic_integrate(h, vec({1, 2, 0}), vec({0, 0, 1}), 3.0, 0.01);
  for (const Vec& x : fiber.points) CHECK(std::hypot(x[0] - 1, x[1] - 2) < 1e-8);
  CHECK(fiber.points.back()[2] == doctest::Approx(3.0).epsilon(1e-10));

  // Berger: Hopf fibers are closed geodesics of length 2π|V| = 8π|τ|/κ
  BergerSphere b(4.0, 0.5);
  std::mt19937 rng(19);
  const Vec s = random_s3(rng);
  const Curve hopf = geodesic_integrate(b, s, berger_frame(s).v, 8 * kPi * 0.5 / 4.0, 1e-3);
  CHECK((hopf.points.back() - s).norm() < 1e-6);
  for (const Vec& x : hopf.points) CHECK(std::abs(x.norm() - 1.0) < 1e-12);
  CHECK(hopf.max_relative_speed_drift < 1e-6);

  CHECK_THROWS_AS(geodesic_integrate(s2, q, vec({0.3, 1}), 10.0, 2.5), NumericalError);
  CHECK_THROWS_AS(geodesic_integrate(h, vec({0, 0, 0}), vec({0, 0, 0}), 1.0, 0.1), InputError);
  CHECK_THROWS_AS(geodesic_integrate(h, vec({0, 0, 0}), vec({1, 0, 0}), 1.0, 0.0), InputError);
}

TEST_CASE("wedge and quarter rotation") {
  Heisenberg h(0.5);
  const Vec p = vec({0.2, 0.4, -1});
  const Vec x = vec({1, 0.3, 0.2}), y = vec({-0.5, 1, 0.1});
  const Vec w = wedge(h, p, x, y);
  CHECK(std::abs(metric_apply(h, p, w, x)) < 1e-12);
  CHECK(std::abs(metric_apply(h, p, w, y)) < 1e-12);
  const double xx = metric_apply(h, p, x, x), yy = metric_apply(h, p, y, y), xy = metric_apply(h, p, x, y);
  CHECK(metric_apply(h, p, w, w) == doctest::Approx(xx * yy - xy * xy).epsilon(1e-12));

  RoundSphere s2(1.0);
  const Vec q = vec({1.0, 0.0});
  const Vec e = vec({1, 0});
  const Vec j = rotate_quarter(s2, q, e);
  CHECK(std::abs(metric_apply(s2, q, j, e)) < 1e-14);
  CHECK(metric_apply(s2, q, j, j) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((rotate_quarter(s2, q, j) + e).norm() < 1e-14);
}
