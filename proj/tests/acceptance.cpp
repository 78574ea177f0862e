// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include "convexa/fixtures.hpp"
#include "convexa/sweep.hpp"
#include "convexa/verifiers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace convexa;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Vec random_s3(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec p(4);
  for (int i = 0; i < 4; ++i) p[i] = n(rng);
  return p / p.norm();
}

const std::vector<double> kKappas{1.0, 4.0, 9.0};
const std::vector<double> kTaus{0.25, 0.5, 1.0};
const std::vector<double> kThetas{0.0, kPi / 4, kPi / 2};
constexpr int kGrid = 101;

// Criteria 1-3 share one sweep over the equator grid.
struct EquatorSweep {
  double max_h = 0.0, max_ke_rel = 0.0, max_bound_excess = -1e300, max_gap = 0.0, seconds = 0.0;
  double ke_at_origin = 0.0;
  bool all_pass = true;
  int runs = 0;
};

const EquatorSweep& equator_sweep() {
  static const EquatorSweep s = [] {
    EquatorSweep s;
    const auto start = std::chrono::steady_clock::now();
    for (double kappa : kKappas)
      for (double tau : kTaus)
        for (double theta : kThetas) {
          const VerificationReport r = verify_equator(kappa, tau, theta, kGrid);
          s.all_pass = s.all_pass && r.pass;
          s.max_h = std::max(s.max_h, r.metrics.at("max_abs_H"));
          s.max_ke_rel = std::max(s.max_ke_rel, r.metrics.at("max_rel_Ke_error"));
          s.max_bound_excess = std::max(s.max_bound_excess, r.metrics.at("max_abs_k") - r.metrics.at("bound"));
          s.max_gap = std::max(s.max_gap, r.metrics.at("attainment_gap"));
          if (kappa == 4.0 && tau == 0.5 && theta == 0.0) s.ke_at_origin = r.metrics.at("Ke_at_x0");
          ++s.runs;
        }
    s.seconds = seconds_since(start);
    return s;
  }();
  return s;
}

Outcome criterion1() {
  const EquatorSweep& s = equator_sweep();
  return {s.max_h < 1e-6 && s.seconds < 30.0,
          "max|H| = " + fmt(s.max_h) + " over " + std::to_string(s.runs) + " runs of " + std::to_string(kGrid) +
              "x" + std::to_string(kGrid) + " in " + fmt(s.seconds) + " s"};
}

Outcome criterion2() {
  const EquatorSweep& s = equator_sweep();
  const double direct = equator_profile(4.0, 0.5, 0.0, 9)[0].Ke_oracle;
  const bool origin = std::abs(s.ke_at_origin + 2.25) < 1e-4 && std::abs(direct + 2.25) < 1e-4;
  return {s.max_ke_rel < 1e-4 && origin,
          "max relative Ke error = " + fmt(s.max_ke_rel) + "; Ke(kappa=4, tau=1/2, x=0) = " + fmt(direct)};
}

Outcome criterion3() {
  const EquatorSweep& s = equator_sweep();
  return {s.max_bound_excess <= 1e-6 && s.max_gap < 1e-4,
          "max(|k_i| - bound) = " + fmt(s.max_bound_excess) + ", attainment gap at |cos x| = 1 = " + fmt(s.max_gap)};
}

Outcome criterion4() {
  double max_ke = 0.0, max_k = 0.0;
  for (double tau : {0.5, 1.0, 1.5}) {
    const double kappa = 4.0 * tau * tau;
    for (double theta : kThetas)
      for (int j = 0; j < 21; ++j)
        for (const ProfileRow& row : equator_profile(kappa, tau, theta, kGrid, 2.0 * kPi * j / 21)) {
          if (std::isnan(row.Ke_oracle)) continue;
          max_ke = std::max(max_ke, std::abs(row.Ke_oracle));
          max_k = std::max({max_k, std::abs(row.k1), std::abs(row.k2)});
        }
  }
  return {max_ke < 1e-8 && max_k < 1e-6, "kappa = 4 tau^2 for tau in {0.5, 1, 1.5}: max|Ke| = " + fmt(max_ke) +
                                            ", max|k_i| = " + fmt(max_k)};
}

Outcome criterion5() {
  bool ok = true;
  double max_factor_dev = 0.0, max_implied = 0.0, min_printed = 1e300;
  std::string names;
  for (double kappa : {4.0, 9.0})
    for (double tau : {0.25, 0.5, 1.25}) {
      const IIAdjudication a = adjudicate_II_coefficient(kappa, tau, kGrid);
      ok = ok && a.matching == "implied" && a.implied_identity_residual < 1e-4 && a.printed_identity_residual >= 1e-4 &&
           a.factor_deviation < 1e-6;
      max_factor_dev = std::max(max_factor_dev, a.factor_deviation);
      max_implied = std::max(max_implied, a.implied_identity_residual);
      min_printed = std::min(min_printed, a.printed_identity_residual);
      if (names.find(a.matching) == std::string::npos) names += (names.empty() ? "" : ",") + a.matching;
    }
  const IIAdjudication unit = adjudicate_II_coefficient(1.0, 0.25, kGrid);
  return {ok, "kappa in {4, 9}: identity holds for '" + names + "' (residual " + fmt(max_implied) +
                  ", printed " + fmt(min_printed) + "), factor/kappa^2 deviation " + fmt(max_factor_dev) +
                  "; kappa = 1 gives '" + unit.matching + "'"};
}

Outcome criterion6() {
  bool ok = true;
  int planes = 0;
  double worst_slack = 1e300, worst_h = 0.0;
  for (double tau : {0.3, 0.5, 1.0}) {
    std::vector<PlaneCoefficients> ps{{0, 0, 1, 0}, {1, 0, 0, 0}, {0.6, -0.8, 0, 0.3}};
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> offset(-0.5, 0.5);
    for (int i = 0; i < 20; ++i) {
      const double a = normal(rng), b = normal(rng), c = normal(rng);
      ps.push_back({a, b, c, offset(rng)});
    }
    for (const auto& p : ps) {
      const VerificationReport r = heisenberg_plane_bound(tau, p, 50);
      ok = ok && r.pass;
      worst_slack = std::min(worst_slack, r.slack);
      if (p.c == 0.0) worst_h = std::max(worst_h, r.metrics.at("max_abs_H"));
      ++planes;
    }
  }
  return {ok, std::to_string(planes) + " planes: min(|tau| - max|k_i|) = " + fmt(worst_slack) +
                  ", vertical max|H| = " + fmt(worst_h)};
}

Outcome criterion7() {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double max_err = 0.0;
  for (double tau : {0.3, -0.3, 0.5, -0.5}) {
    const Heisenberg h(tau);
    for (int n = 0; n < 100; ++n) {
      Vec p(3);
      p << u(rng), u(rng), u(rng);
      max_err = std::max(max_err, std::abs(tau_estimate(h, p).tau - tau));
    }
  }
  const BergerSphere round(4.0, 1.0);
  std::vector<double> est;
  for (int n = 0; n < 100; ++n) est.push_back(tau_estimate(round, random_s3(rng)).tau);
  double mean = 0.0, var = 0.0;
  for (double t : est) mean += t / est.size();
  for (double t : est) var += (t - mean) * (t - mean) / est.size();
  const double sd = std::sqrt(var);
  return {max_err < 1e-7 && sd < 1e-7, "Heisenberg max|tau_hat - tau| = " + fmt(max_err) +
                                           "; round Berger tau_hat = " + fmt(mean) + " (std " + fmt(sd) + ")"};
}

Outcome criterion8() {
  double min_eig = 1e300;
  bool ok = true;
  for (double kappa : kKappas)
    for (double tau : {0.25, 1.0}) {
      const VerificationReport r = comparability_check(kappa, tau, 10000, 29);
      ok = ok && r.pass;
      min_eig = std::min(min_eig, r.metrics.at("min_eigenvalue"));
    }
  return {ok && min_eig >= -1e-12, "min eigenvalue of a^2 g_round - g_Berger = " + fmt(min_eig) + " over 6 x 10^4 samples"};
}

Outcome criterion9() {
  const PinchingResult s = pinching_ratio(*parse_base("sphere r=1"), 64);
  const PinchingResult c = pinching_ratio(*parse_base("capped l=10 blend=1"), 64);
  return {std::abs(s.ratio - 1.0) < 1e-6 && c.ratio < 0.25,
          "round sphere |ratio - 1| = " + fmt(std::abs(s.ratio - 1.0)) + ", capped cylinder (l=10) ratio = " + fmt(c.ratio)};
}

Outcome criterion10() {
  using F = BergerFrameIndex;
  const F frame[3] = {F::E1, F::E2, F::V};
  const auto maps = BergerSphere::frame_maps();
  std::mt19937_64 rng(31);
  double compat = 0.0, torsion = 0.0, printed_torsion = 0.0;
  for (auto [kappa, tau] : {std::pair{4.0, 0.5}, std::pair{1.0, 1.0}, std::pair{9.0, -0.3}}) {
    const BergerSphere b(kappa, tau);
    for (int n = 0; n < 100; ++n) {
      const Vec p = random_s3(rng);
      const Mat g = b.metric(p);
      Vec e[3];
      for (int i = 0; i < 3; ++i) e[i] = maps[static_cast<size_t>(i)] * p;
      auto field = [&](const Eigen::Vector3d& c) { return Vec(c[0] * e[0] + c[1] * e[1] + c[2] * e[2]); };
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const Vec nij = field(b.connection(frame[i], frame[j]));
          const Vec nji = field(b.connection(frame[j], frame[i]));
          const Vec bracket = maps[static_cast<size_t>(j)] * e[i] - maps[static_cast<size_t>(i)] * e[j];
          torsion = std::max(torsion, (nij - nji - bracket).norm());
          const Vec pij = field(b.connection(frame[i], frame[j], ConnectionTable::Printed));
          const Vec pji = field(b.connection(frame[j], frame[i], ConnectionTable::Printed));
          printed_torsion = std::max(printed_torsion, (pij - pji - bracket).norm());
          for (int k = 0; k < 3; ++k) {
            const Vec nik = field(b.connection(frame[i], frame[k]));
            compat = std::max(compat, std::abs(nij.dot(g * e[k]) + e[j].dot(g * nik)));
          }
        }
    }
  }
  double fd = 0.0;
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (double tau : {0.3, 0.5, 1.0}) {
    const Heisenberg h(tau);
    for (int n = 0; n < 100; ++n) {
      Vec p(3);
      p << u(rng), u(rng), u(rng);
      const ChristoffelAtPoint a = *h.analytic_christoffel(p);
      const ChristoffelAtPoint f = christoffel_fd(h, p);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) fd = std::max(fd, std::abs(a(k, i, j) - f(k, i, j)));
    }
  }
  return {compat < 1e-8 && torsion < 1e-8 && fd < 1e-6,
          "Levi-Civita table: compatibility " + fmt(compat) + ", torsion " + fmt(torsion) +
              " (printed table torsion " + fmt(printed_torsion) + "); Heisenberg FD vs analytic " + fmt(fd)};
}

Outcome criterion11() {
  struct Case {
    const char* name;
    double resolution;
    std::function<bool(const SweepResult&)> expect;
  };
  const std::vector<Case> cases{
      {"sphere", 1.43,
       [](const SweepResult& r) {
         return r.verdict == Verdict::Sphere && r.count(EventKind::Birth) == 1 && r.count(EventKind::Death) == 1;
       }},
      {"graph", 1.28, [](const SweepResult& r) { return r.verdict == Verdict::PlaneTopEnd; }},
      {"remark-tube", 1.16,
       [](const SweepResult& r) { return r.verdict == Verdict::NonEmbedded && !r.intersections.empty(); }},
      {"torus", 1.43, [](const SweepResult& r) { return r.verdict != Verdict::Sphere; }},
  };
  bool ok = true;
  double slowest = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    const TriMesh m = make_fixture(c.name, c.resolution);
    const auto space = parse_space(m.space);
    const auto start = std::chrono::steady_clock::now();
    const SweepResult r = classify(m, *space);
    const double secs = seconds_since(start);
    slowest = std::max(slowest, secs);
    const Verdict refined = classify(refine_4to1(m, space->periods()), *space).verdict;
    const bool pass = c.expect(r) && secs < 10.0 && refined == r.verdict;
    ok = ok && pass;
    detail += std::string(detail.empty() ? "" : "; ") + c.name + " (" + std::to_string(m.triangles.size()) +
              " tris) " + to_string(r.verdict) + (refined == r.verdict ? "" : " -> refined " + to_string(refined));
    if (r.verdict == Verdict::NonEmbedded) detail += " " + std::to_string(r.intersections.size()) + " pairs";
  }
  return {ok, detail + "; slowest " + fmt(slowest) + " s"};
}

Outcome criterion12() {
  bool ok = true;
  auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  const PinchingInequality p11 = pinching_inequality_check(1.0, 1.0);
  ok = ok && !p11.contradiction_possible && same(p11.lower, 2 * kPi) && same(p11.upper, kPi) && !p11.compatible;
  const PinchingInequality p02 = pinching_inequality_check(0.2, 1.0);
  ok = ok && p02.contradiction_possible && same(p02.ratio, 0.2);
  const PinchingInequality p026 = pinching_inequality_check(0.26, 1.0);
  ok = ok && !p026.contradiction_possible && same(p026.lower, 2 * kPi) && same(p026.upper, kPi / std::sqrt(0.26)) &&
       !p026.compatible;
  ok = ok && same(bonnet_diameter_bound(2.0), kPi / 2) && same(bonnet_diameter_bound(4.0), kPi / 4) &&
       same(bonnet_diameter_bound(2.5), kPi / 2.5) && bonnet_diameter_bound(2.5) < kPi / 2 &&
       std::abs(bonnet_diameter_bound(2.5) - 1.2566) < 1e-4;
  double worst = 1e300;
  for (double c : {2.2, 2.5, 4.0}) {
    const CurveRadiusCheck r = convex_curve_radius_check(circle_polyline(1.0 / c, 360), c);
    ok = ok && r.certified;
    worst = std::min(worst, r.limit + r.tolerance - r.enclosing.radius);
  }
  char upper[32];
  std::snprintf(upper, sizeof upper, "%.5f", p026.upper);
  return {ok, std::string("pinching (1,1), (0.2,1), (0.26,1) exact (pi/sqrt(0.26) = ") + upper +
                  "), diameter bounds for c in {2, 2.5, 4} exact; circle radius margin >= " + fmt(worst)};
}

Outcome criterion13() {
  const auto base = parse_base("sphere r=1");
  bool ok = true;
  std::string detail;
  for (double r : {0.2, 0.3, 0.5}) {
    const double expected = 1.0 / std::tan(r);
    auto error = [&](int segments) {
      double e = 0.0;
      for (double k : polyline_geodesic_curvature(sphere_geodesic_circle(r, segments), *base))
        e = std::max(e, std::abs(k - expected) / expected);
      return e;
    };
    const double e360 = error(360), e720 = error(720);
    ok = ok && e360 < 0.02 && e720 < e360;
    detail += std::string(detail.empty() ? "" : "; ") + "r=" + fmt(r) + ": " + fmt(e360) + " -> " + fmt(e720);
  }
  return {ok, "relative error to cot r at 360 -> 720 segments: " + detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"equator minimality", criterion1},
      {"equator extrinsic curvature", criterion2},
      {"equator curvature bound", criterion3},
      {"round degeneration", criterion4},
      {"second fundamental form adjudication", criterion5},
      {"Heisenberg plane bounds", criterion6},
      {"Killing field equation", criterion7},
      {"comparability", criterion8},
      {"pinching fixtures", criterion9},
      {"connection integrity", criterion10},
      {"classifier fixtures", criterion11},
      {"inequality oracles", criterion12},
      {"slice geodesic curvature", criterion13},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
