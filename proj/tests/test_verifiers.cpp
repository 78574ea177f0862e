#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convexa/verifiers.hpp"

#include <cmath>
#include <numbers>

using namespace convexa;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("equator closed form") {
  CHECK(equator_Ke_closed_form(4, 0.5, 0) == doctest::Approx(-2.25).epsilon(1e-12));
  CHECK(equator_curvature_bound(4, 0.5) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(equator_curvature_bound(4, 1) == 0.0);
  CHECK_THROWS_AS(equator_Ke_closed_form(0, 1, 0), InputError);
  CHECK_THROWS_AS(equator_curvature_bound(1, 0), InputError);

  // Ke ≤ 0, vanishing at cos x = 0, and √(−Ke) ≤ bound with equality at |cos x| = 1
  for (double kappa : {0.5, 1.0, 4.0, 9.0})
    for (double tau : {0.1, 0.25, 0.5, 1.0, 2.0}) {
      const double bound = equator_curvature_bound(kappa, tau);
      for (int i = 0; i <= 200; ++i) {
        const double x = 2 * kPi * i / 200;
        const double ke = equator_Ke_closed_form(kappa, tau, x);
        CHECK(ke <= 0.0);
        CHECK(std::sqrt(-ke) <= bound * (1 + 1e-12));
      }
      CHECK(std::abs(equator_Ke_closed_form(kappa, tau, kPi / 2)) < 1e-25);
      CHECK(std::sqrt(-equator_Ke_closed_form(kappa, tau, 0)) == doctest::Approx(bound).epsilon(1e-12));
      CHECK(std::sqrt(-equator_Ke_closed_form(kappa, tau, kPi)) == doctest::Approx(bound).epsilon(1e-12));
    }
}

TEST_CASE("verify_equator on a log grid") {
  const double kappas[] = {0.25, 1.0, 4.0, 16.0, 64.0};
  const double taus[] = {0.125, 0.25, 0.5, 1.0, 2.0};
  for (double kappa : kappas)
    for (double tau : taus)
      for (double theta : {0.0, kPi / 4, kPi / 2}) {
        const VerificationReport r = verify_equator(kappa, tau, theta, 9);
        INFO("kappa=" << kappa << " tau=" << tau << " theta=" << theta);
        CHECK(r.pass);
        CHECK(r.metrics.at("max_abs_H") < 1e-6);
        CHECK(r.slack >= -1e-6);
      }
}

TEST_CASE("verify_equator details") {
  const VerificationReport r = verify_equator(4, 0.5, 0, 21);
  CHECK(r.pass);
  CHECK(r.metrics.at("Ke_at_x0") == doctest::Approx(-2.25).epsilon(1e-4));
  CHECK(r.metrics.at("bound") == doctest::Approx(1.5));
  CHECK(r.metrics.at("attainment_gap") < 1e-4);
  CHECK(r.metrics.at("skipped") == 2 * 21);

  const VerificationReport round = verify_equator(4, 1, 0, 11);
  CHECK(round.pass);
  CHECK(round.metrics.at("max_abs_k") < 1e-6);
  CHECK(!round.notes.empty());

  // an impossible tolerance must fail rather than be ignored
  EquatorTolerances strict;
  strict.ke_relative = 1e-30;
  strict.mean_curvature = 0.0;
  CHECK_FALSE(verify_equator(4, 0.5, 0, 11, strict).pass);

  CHECK_THROWS_AS(verify_equator(4, 0.5, 0, 1), InputError);
  CHECK_THROWS_AS(verify_equator(-1, 0.5, 0, 5), InputError);
}

TEST_CASE("equator theta invariance and profile") {
  const VerificationReport r = equator_theta_invariance(9, 0.5, {0, 0.7, kPi / 2, 2.0}, 9);
  CHECK(r.pass);
  CHECK(r.max_residual < 1e-8);

  const auto rows = equator_profile(9, 0.5, 0.3, 41);
  REQUIRE(rows.size() == 41);
  for (const ProfileRow& row : rows) {
    if (std::isnan(row.k1)) continue;
    CHECK(row.H == doctest::Approx(0).epsilon(1e-6));
    CHECK(row.Ke_oracle == doctest::Approx(row.Ke_closed).epsilon(1e-4).scale(1e-10));
  }
}

TEST_CASE("II coefficient adjudication") {
  for (double kappa : {4.0, 9.0})
    for (double tau : {0.25, 0.5, 1.25}) {
      INFO("kappa=" << kappa << " tau=" << tau);
      const IIAdjudication a = adjudicate_II_coefficient(kappa, tau, 21);
      CHECK(a.matching == "implied");
      CHECK(a.report.pass);
      CHECK(a.implied_identity_residual < 1e-10);
      CHECK(a.implied_oracle_residual < 1e-4);
      CHECK(a.printed_identity_residual > 1e-2);
      CHECK(a.factor == doctest::Approx(kappa * kappa).epsilon(1e-9));
      CHECK(a.factor_deviation < 1e-6);
    }
  const IIAdjudication one = adjudicate_II_coefficient(1, 0.25, 21);
  CHECK(one.matching == "both (indistinguishable)");
  const IIAdjudication round = adjudicate_II_coefficient(4, 1, 11);
  CHECK(round.matching == "both (indistinguishable)");
}

TEST_CASE("Heisenberg plane bounds") {
  CHECK(heisenberg_plane_bound(0.5, {0, 0, 1, 0}, 21).pass);
  const VerificationReport v = heisenberg_plane_bound(0.5, {0, 1, 0, 0}, 21);
  CHECK(v.pass);
  CHECK(v.check == "heisenberg-vertical-plane");
  CHECK(v.metrics.at("max_abs_H") < 1e-7);
  const VerificationReport t = heisenberg_plane_bound(1.0, {1, 1, 1, 1}, 21);
  CHECK(t.pass);
  CHECK(t.slack >= -1e-6);
  CHECK_THROWS_AS(heisenberg_plane_bound(0.5, {0, 0, 0, 1}, 5), InputError);
}

TEST_CASE("comparability") {
  CHECK(comparability_constant(4, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(comparability_constant(4, 0.5) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK_THROWS_AS(comparability_constant(0, 1), InputError);
  for (double kappa : {1.0, 4.0, 9.0})
    for (double tau : {0.25, 1.0}) {
      const VerificationReport r = comparability_check(kappa, tau, 500, 7);
      CHECK(r.pass);
      CHECK(r.metrics.at("min_eigenvalue") >= -1e-12);
    }
}

TEST_CASE("pinching inequality") {
  const PinchingInequality a = pinching_inequality_check(1, 1);
  CHECK(a.ratio == 1.0);
  CHECK_FALSE(a.contradiction_possible);
  CHECK(a.lower == doctest::Approx(2 * kPi));
  CHECK(a.upper == doctest::Approx(kPi));
  CHECK_FALSE(a.compatible);

  const PinchingInequality b = pinching_inequality_check(0.2, 1);
  CHECK(b.contradiction_possible);
  CHECK(b.ratio == doctest::Approx(0.2));

  const PinchingInequality c = pinching_inequality_check(0.26, 1);
  CHECK_FALSE(c.contradiction_possible);
  CHECK(c.upper == doctest::Approx(6.1612).epsilon(1e-4));
  CHECK_FALSE(c.compatible);

  const PinchingInequality d = pinching_inequality_check(0.25, 1);
  CHECK(d.contradiction_possible);
  CHECK(d.compatible);

  CHECK_THROWS_AS(pinching_inequality_check(0, 1), InputError);
  CHECK_THROWS_AS(pinching_inequality_check(-1, 1), InputError);
  CHECK_THROWS_AS(pinching_inequality_check(2, 1), InputError);
}

TEST_CASE("diameter bound") {
  CHECK(bonnet_diameter_bound(2) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(bonnet_diameter_bound(2.5) == doctest::Approx(1.2566370614359172).epsilon(1e-15));
  CHECK(bonnet_diameter_bound(4) == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(disk_radius_margin(2.5) > 0.0);
  CHECK(disk_radius_margin(2) == doctest::Approx(0).scale(1));
  CHECK(disk_radius_margin(1.5) < 0.0);
  CHECK_THROWS_AS(bonnet_diameter_bound(0), InputError);
}

TEST_CASE("discrete curvature and enclosing circle") {
  const Polyline c = circle_polyline(0.4, 360);
  for (double k : discrete_curvature(c)) CHECK(k == doctest::Approx(2.5).epsilon(1e-4));
  Polyline reversed(c.rbegin(), c.rend());
  for (double k : discrete_curvature(reversed)) CHECK(k > 0.0);

  const Circle e = minimal_enclosing_circle({{0, 0}, {2, 0}, {1, 0.1}});
  CHECK(e.radius == doctest::Approx(1.0));
  CHECK(e.center.x() == doctest::Approx(1.0));
  const Circle t = minimal_enclosing_circle({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  CHECK(t.radius == doctest::Approx(1 / std::sqrt(3.0)));

  // brute-force check on the ellipse: every point inside and some pair or triple on the boundary
  const Polyline el = ellipse_polyline(0.4, 0.355, 360);
  const Circle m = minimal_enclosing_circle(el);
  for (const auto& p : el) CHECK((p - m.center).norm() <= m.radius * (1 + 1e-12));
  CHECK(m.radius == doctest::Approx(0.4).epsilon(1e-9));
  CHECK_THROWS_AS(discrete_curvature({{0, 0}, {1, 0}}), InputError);
}

TEST_CASE("convex curve radius check") {
  for (double cc : {2.2, 2.5, 4.0}) {
    const CurveRadiusCheck r = convex_curve_radius_check(circle_polyline(1 / cc, 360), cc);
    CHECK(r.certified);
    CHECK(r.enclosing.radius <= 1 / cc + r.tolerance);
  }
  const CurveRadiusCheck el = convex_curve_radius_check(ellipse_polyline(0.4, 0.355, 360), 2.2);
  CHECK(el.min_curvature >= 2.2);
  CHECK(el.certified);
  CHECK(el.enclosing.radius < 0.5);

  const Polyline big = circle_polyline(0.6, 360);
  CHECK(convex_curve_radius_check(big, 5.0 / 3.0).certified);
  CHECK_THROWS_AS(convex_curve_radius_check(big, 2.5), InputError);
  CHECK_THROWS_AS(convex_curve_radius_check(big, 1.67), InputError);
}

TEST_CASE("report json round trip") {
  VerificationReport r = verify_equator(9, 0.5, 0, 7);
  const nlohmann::json j = to_json(r);
  CHECK(j.at("check") == "equator");
  CHECK(j.contains("notes"));
  const VerificationReport back = report_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.check == r.check);
  CHECK(back.pass == r.pass);
  CHECK(back.max_residual == r.max_residual);
  CHECK(back.params == r.params);
  CHECK(back.metrics == r.metrics);

  r.slack = std::numeric_limits<double>::infinity();
  CHECK(to_json(r).at("slack").is_null());
  CHECK(std::isinf(report_from_json(to_json(r)).slack));
  CHECK_THROWS_AS(report_from_json(nlohmann::json::parse("{\"check\": 1}")), InputError);
}
