#include "convexa/cli.hpp"

#include "convexa/fixtures.hpp"
#include "convexa/sweep.hpp"
#include "convexa/verifiers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace convexa {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

std::string num12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string params_string(const std::map<std::string, double>& params) {
  std::string s;
  for (const auto& [k, v] : params) s += (s.empty() ? "" : " ") + k + "=" + num12(v);
  return s;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : sep) + p;
  return s;
}

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void require_grid(int grid) {
  if (grid < 8) throw InputError("grid size must be at least 8");
}

void require_positive(double v, const std::string& what) {
  if (!(std::isfinite(v) && v > 0.0)) throw InputError(what + " must be positive");
}

// Reports ordered by check name, then by parameters.
void sort_reports(std::vector<VerificationReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    if (a.check != b.check) return a.check < b.check;
    return params_string(a.params) < params_string(b.params);
  });
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

void write_reports_csv(const std::vector<VerificationReport>& reports, std::ostream& out) {
  out << "check,params,pass,max_residual,slack,notes\n";
  for (const auto& r : reports)
    out << csv_field(r.check) << ',' << csv_field(params_string(r.params)) << ',' << (r.pass ? "true" : "false")
        << ',' << num12(r.max_residual) << ',' << num12(r.slack) << ',' << csv_field(join(r.notes, "; ")) << '\n';
}

void write_reports_text(const std::vector<VerificationReport>& reports, std::ostream& out) {
  for (const auto& r : reports) {
    out << (r.pass ? "PASS " : "FAIL ") << r.check << "  " << params_string(r.params)
        << "  max_residual=" << num12(r.max_residual) << " slack=" << num12(r.slack) << '\n';
    for (const auto& [k, v] : r.metrics) out << "    " << k << " = " << num12(v) << '\n';
    for (const auto& n : r.notes) out << "    note: " << n << '\n';
  }
}

json reports_json(const std::vector<VerificationReport>& reports) {
  json a = json::array();
  for (const auto& r : reports) a.push_back(to_json(r));
  return a;
}

// Shared output options of the report-producing subcommands.
struct OutputOptions {
  std::string format = "text";
  std::string out_dir;
  std::string name;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format on stdout")->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", out_dir, "Artifact directory for the JSON report");
    cmd->add_option("--name", name, "Artifact base name (default derived from the parameters)");
  }
};

std::string artifact_tag(const std::string& command, const std::vector<std::pair<std::string, double>>& params) {
  std::string tag = command;
  for (const auto& [k, v] : params) tag += "_" + k + num12(v);
  std::replace(tag.begin(), tag.end(), ' ', '-');
  return tag;
}

fs::path artifact_path(const OutputOptions& o, const std::string& default_name, const std::string& ext) {
  fs::create_directories(o.out_dir);
  return fs::path(o.out_dir) / ((o.name.empty() ? default_name : o.name) + ext);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << content;
}

json document(const std::string& command, const std::vector<std::string>& args,
              const std::vector<VerificationReport>& reports) {
  json doc;
  doc["metadata"] = {{"tool", "convexa"}, {"command", command}, {"arguments", args}, {"timestamp", iso_timestamp()}};
  doc["reports"] = reports_json(reports);
  return doc;
}

int emit(const std::string& command, const std::vector<std::string>& args, std::vector<VerificationReport> reports,
         const OutputOptions& o, const std::string& default_name, std::ostream& out) {
  sort_reports(reports);
  if (o.format == "json") {
    json doc = document(command, args, reports);
    doc["metadata"].erase("timestamp");
    out << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    write_reports_csv(reports, out);
  } else {
    write_reports_text(reports, out);
  }
  if (!o.out_dir.empty())
    write_file(artifact_path(o, default_name, ".json"), document(command, args, reports).dump(2) + "\n");
  return all_pass(reports) ? kExitPass : kExitFail;
}

// --space or explicit parameters for the Berger sphere.
std::pair<double, double> berger_parameters(const std::string& spec, const std::optional<double>& kappa,
                                            const std::optional<double>& tau) {
  if (!spec.empty()) {
    const auto space = parse_space(spec);
    const auto* b = dynamic_cast<const BergerSphere*>(space.get());
    if (!b) throw InputError("expected a berger space, got '" + spec + "'");
    return {b->kappa(), b->tau()};
  }
  if (!kappa || !tau) throw InputError("give --kappa and --tau, or a berger --space");
  return {*kappa, *tau};
}

double heisenberg_tau(const std::string& spec, const std::optional<double>& tau) {
  if (!spec.empty()) {
    const auto space = parse_space(spec);
    const auto* h = dynamic_cast<const Heisenberg*>(space.get());
    if (!h) throw InputError("expected a heisenberg space, got '" + spec + "'");
    return h->tau();
  }
  if (!tau) throw InputError("give --tau or a heisenberg --space");
  return *tau;
}

void write_profile_csv(const std::vector<ProfileRow>& rows, std::ostream& out) {
  out << "x,k1,k2,H,Ke_oracle,Ke_closed\n";
  for (const auto& r : rows)
    out << num12(r.x) << ',' << num12(r.k1) << ',' << num12(r.k2) << ',' << num12(r.H) << ',' << num12(r.Ke_oracle)
        << ',' << num12(r.Ke_closed) << '\n';
}

VerificationReport classification_report(const SweepResult& r, const TriMesh& mesh, int levels) {
  VerificationReport v;
  v.check = "classify";
  v.params = {{"triangles", static_cast<double>(mesh.triangles.size())}, {"levels", static_cast<double>(levels)}};
  v.pass = r.verdict == Verdict::Sphere || r.verdict == Verdict::PlaneTopEnd || r.verdict == Verdict::PlaneBottomEnd;
  v.max_residual = static_cast<double>(r.intersections.size());
  v.slack = std::numeric_limits<double>::infinity();
  v.metrics = {{"births", r.count(EventKind::Birth)},
               {"deaths", r.count(EventKind::Death)},
               {"merges", r.count(EventKind::Merge)},
               {"splits", r.count(EventKind::Split)},
               {"convexity_failures", r.count(EventKind::ConvexityFailure)},
               {"intersecting_pairs", static_cast<double>(r.intersections.size())},
               {"euler_characteristic", r.topology.euler()},
               {"mesh_components", r.mesh_components}};
  v.notes.push_back("verdict: " + to_string(r.verdict));
  if (!mesh.space.empty()) v.notes.push_back("space: " + mesh.space);
  return v;
}

json classification_json(const SweepResult& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["dt"] = r.dt;
  j["topology"] = {{"vertices", r.topology.vertices},
                   {"edges", r.topology.edges},
                   {"faces", r.topology.faces},
                   {"boundary_edges", r.topology.boundary_edges},
                   {"euler_characteristic", r.topology.euler()},
                   {"components", r.mesh_components}};
  json events = json::array();
  for (const auto& e : r.events)
    events.push_back({{"t", e.t}, {"kind", to_string(e.kind)}, {"component", e.component}, {"detail", e.detail}});
  j["events"] = events;
  j["intersecting_pairs"] = r.intersections.size();
  json pairs = json::array();
  for (size_t i = 0; i < std::min<size_t>(r.intersections.size(), 20); ++i)
    pairs.push_back({r.intersections[i].a, r.intersections[i].b});
  j["intersection_sample"] = pairs;
  j["diagnostics"] = r.diagnostics;
  return j;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Sphere:
    case Verdict::PlaneTopEnd:
    case Verdict::PlaneBottomEnd: return kExitPass;
    case Verdict::NonEmbedded: return kExitFail;
    case Verdict::Undetermined: return kExitUndetermined;
  }
  return kExitUndetermined;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature and embeddedness checks for surfaces in Killing submersions", "convexa"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (sets CONVEXA_THREADS)")->check(CLI::PositiveNumber);

  // equator-verify
  auto* eq = app.add_subcommand("equator-verify", "Minimal equators of the Berger sphere");
  std::string eq_space;
  std::optional<double> eq_kappa, eq_tau;
  double eq_theta = 0.0;
  int eq_grid = 101, eq_profile_samples = 361;
  EquatorTolerances eq_tol;
  bool eq_skip_ii = false;
  std::string eq_profile;
  OutputOptions eq_out;
  eq->add_option("--space", eq_space, "berger kappa=<f> tau=<f>");
  eq->add_option("--kappa", eq_kappa);
  eq->add_option("--tau", eq_tau);
  eq->add_option("--theta", eq_theta);
  eq->add_option("--grid", eq_grid, "Samples per axis (>= 8)");
  eq->add_option("--tol-H", eq_tol.mean_curvature);
  eq->add_option("--tol-Ke", eq_tol.ke_relative);
  eq->add_option("--tol-bound", eq_tol.bound);
  eq->add_option("--tol-attain", eq_tol.attainment);
  eq->add_flag("--skip-II", eq_skip_ii, "Skip the second fundamental form adjudication");
  eq->add_option("--profile", eq_profile, "Write the curvature profile CSV to this path");
  eq->add_option("--profile-samples", eq_profile_samples);
  eq_out.add_to(eq);

  // heis-planes
  auto* hp = app.add_subcommand("heis-planes", "Principal curvature bound of affine planes in Heisenberg space");
  std::string hp_space;
  std::optional<double> hp_tau;
  int hp_planes = 20, hp_grid = 50;
  unsigned hp_seed = 1;
  double hp_extent = 1.0;
  OutputOptions hp_out;
  hp->add_option("--space", hp_space, "heisenberg tau=<f>");
  hp->add_option("--tau", hp_tau);
  hp->add_option("--planes", hp_planes, "Random planes besides the horizontal and vertical ones");
  hp->add_option("--seed", hp_seed);
  hp->add_option("--grid", hp_grid);
  hp->add_option("--extent", hp_extent);
  hp_out.add_to(hp);

  // vertical-planes
  auto* vp = app.add_subcommand("vertical-planes", "Minimality and curvature bound of vertical planes");
  std::string vp_space;
  std::optional<double> vp_tau;
  int vp_count = 8, vp_grid = 50;
  double vp_offset = 0.0, vp_extent = 1.0;
  OutputOptions vp_out;
  vp->add_option("--space", vp_space, "heisenberg tau=<f>");
  vp->add_option("--tau", vp_tau);
  vp->add_option("--count", vp_count, "Number of directions in [0, pi)");
  vp->add_option("--offset", vp_offset, "Distance of the base lines from the origin");
  vp->add_option("--grid", vp_grid);
  vp->add_option("--extent", vp_extent);
  vp_out.add_to(vp);

  // comparability
  auto* cp = app.add_subcommand("comparability", "Berger metric against the scaled round metric");
  std::string cp_space;
  std::optional<double> cp_kappa, cp_tau;
  int cp_samples = 10000;
  unsigned cp_seed = 1;
  OutputOptions cp_out;
  cp->add_option("--space", cp_space, "berger kappa=<f> tau=<f>");
  cp->add_option("--kappa", cp_kappa);
  cp->add_option("--tau", cp_tau);
  cp->add_option("--samples", cp_samples);
  cp->add_option("--seed", cp_seed);
  cp_out.add_to(cp);

  // pinching
  auto* pn = app.add_subcommand("pinching", "Curvature pinching ratio of a base surface");
  std::string pn_base, pn_space;
  int pn_samples = 64;
  OutputOptions pn_out;
  pn->add_option("--base", pn_base, "sphere r=<f> | capped l=<f> blend=<f> | flat");
  pn->add_option("--space", pn_space, "product space whose base is sampled");
  pn->add_option("--samples", pn_samples, "Samples per axis");
  pn_out.add_to(pn);

  // inequalities
  auto* iq = app.add_subcommand("inequalities", "Pinching, diameter and convex curve inequalities");
  std::optional<double> iq_kminus, iq_kplus, iq_c, iq_curve_c;
  std::string iq_curve = "circle";
  double iq_radius = 0.4, iq_a = 0.4, iq_b = 0.355;
  int iq_segments = 360;
  OutputOptions iq_out;
  iq->add_option("--kappa-minus", iq_kminus);
  iq->add_option("--kappa-plus", iq_kplus);
  iq->add_option("--c", iq_c, "Lower curvature bound for the diameter estimate");
  iq->add_option("--curve-c", iq_curve_c, "Lower curvature bound of the closed curve");
  iq->add_option("--curve", iq_curve)->check(CLI::IsMember({"circle", "ellipse"}));
  iq->add_option("--radius", iq_radius);
  iq->add_option("--a", iq_a);
  iq->add_option("--b", iq_b);
  iq->add_option("--segments", iq_segments);
  iq_out.add_to(iq);

  // classify
  auto* cl = app.add_subcommand("classify", "Sweep classification of a triangle mesh");
  std::string cl_mesh, cl_space, cl_format = "text", cl_out_dir, cl_name;
  SweepOptions cl_opts;
  bool cl_no_convexity = false;
  cl->add_option("mesh", cl_mesh, "OFF or OBJ file")->required();
  cl->add_option("--space", cl_space, "Ambient space (overrides the file header)");
  cl->add_option("--levels", cl_opts.levels);
  cl->add_flag("--no-convexity", cl_no_convexity, "Skip the slice convexity events");
  cl->add_option("--format", cl_format)->check(CLI::IsMember({"text", "json", "csv"}));
  cl->add_option("--out", cl_out_dir, "Artifact directory for the JSON report");
  cl->add_option("--name", cl_name);

  // gen-fixture
  auto* gf = app.add_subcommand("gen-fixture", "Write a test mesh");
  std::string gf_name, gf_output;
  double gf_resolution = 1.0;
  bool gf_list = false;
  gf->add_option("name", gf_name, "Fixture name");
  gf->add_option("-o,--output", gf_output, "OFF or OBJ path");
  gf->add_option("--resolution", gf_resolution, "Scale of the ring and sector counts");
  gf->add_flag("--list", gf_list, "List fixture names");

  // report
  auto* rp = app.add_subcommand("report", "Aggregate JSON artifacts into one summary");
  std::string rp_dir, rp_format = "json", rp_output;
  rp->add_option("--dir", rp_dir, "Artifact directory")->required();
  rp->add_option("--format", rp_format)->check(CLI::IsMember({"text", "json", "csv"}));
  rp->add_option("-o,--output", rp_output, "Summary path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  if (threads > 0) setenv("CONVEXA_THREADS", std::to_string(threads).c_str(), 1);

  try {
    if (eq->parsed()) {
      const auto [kappa, tau] = berger_parameters(eq_space, eq_kappa, eq_tau);
      require_grid(eq_grid);
      require_positive(eq_tol.mean_curvature, "--tol-H");
      require_positive(eq_tol.ke_relative, "--tol-Ke");
      require_positive(eq_tol.bound, "--tol-bound");
      require_positive(eq_tol.attainment, "--tol-attain");
      std::vector<VerificationReport> reports{verify_equator(kappa, tau, eq_theta, eq_grid, eq_tol)};
      if (!eq_skip_ii) reports.push_back(adjudicate_II_coefficient(kappa, tau, eq_grid, eq_theta).report);
      const std::string tag = artifact_tag("equator", {{"k", kappa}, {"t", tau}, {"th", eq_theta}, {"g", eq_grid}});
      if (!eq_profile.empty() || !eq_out.out_dir.empty()) {
        if (eq_profile_samples < 8) throw InputError("profile needs at least 8 samples");
        std::ostringstream csv;
        write_profile_csv(equator_profile(kappa, tau, eq_theta, eq_profile_samples), csv);
        if (!eq_profile.empty()) write_file(eq_profile, csv.str());
        if (!eq_out.out_dir.empty()) write_file(artifact_path(eq_out, tag, ".profile.csv"), csv.str());
      }
      return emit("equator-verify", args, reports, eq_out, tag, out);
    }

    if (hp->parsed()) {
      const double tau = heisenberg_tau(hp_space, hp_tau);
      require_grid(hp_grid);
      require_positive(hp_extent, "--extent");
      if (hp_planes < 0) throw InputError("--planes must be nonnegative");
      std::vector<PlaneCoefficients> planes{{0, 0, 1, 0}, {1, 0, 0, 0}};
      std::mt19937_64 rng(hp_seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      std::uniform_real_distribution<double> offset(-0.5, 0.5);
      for (int i = 0; i < hp_planes; ++i) {
        const double a = normal(rng), b = normal(rng), c = normal(rng);
        planes.push_back({a, b, c, offset(rng)});
      }
      std::vector<VerificationReport> reports;
      for (const auto& p : planes) reports.push_back(heisenberg_plane_bound(tau, p, hp_grid, hp_extent));
      return emit("heis-planes", args, reports, hp_out, artifact_tag("heis-planes", {{"t", tau}, {"seed", hp_seed}}),
                  out);
    }

    if (vp->parsed()) {
      const double tau = heisenberg_tau(vp_space, vp_tau);
      require_grid(vp_grid);
      require_positive(vp_extent, "--extent");
      if (vp_count < 1) throw InputError("--count must be positive");
      std::vector<VerificationReport> reports;
      for (int k = 0; k < vp_count; ++k) {
        const double phi = kPi * k / vp_count;
        auto snap = [](double v) { return std::abs(v) < 1e-15 ? 0.0 : v; };
        reports.push_back(
            heisenberg_plane_bound(tau, {snap(std::cos(phi)), snap(std::sin(phi)), 0.0, vp_offset}, vp_grid, vp_extent));
      }
      return emit("vertical-planes", args, reports, vp_out,
                  artifact_tag("vertical-planes", {{"t", tau}, {"d", vp_offset}}), out);
    }

    if (cp->parsed()) {
      const auto [kappa, tau] = berger_parameters(cp_space, cp_kappa, cp_tau);
      return emit("comparability", args, {comparability_check(kappa, tau, cp_samples, cp_seed)}, cp_out,
                  artifact_tag("comparability", {{"k", kappa}, {"t", tau}}), out);
    }

    if (pn->parsed()) {
      std::shared_ptr<const Surface2D> base;
      if (!pn_base.empty() && !pn_space.empty()) throw InputError("give either --base or --space");
      if (!pn_base.empty()) {
        base = parse_base(pn_base);
      } else if (!pn_space.empty()) {
        const auto space = parse_space(pn_space);
        const auto* prod = dynamic_cast<const ProductSpace*>(space.get());
        if (!prod) throw InputError("pinching needs a product space or a base surface");
        base = parse_base(prod->base().id());
      } else {
        throw InputError("give --base or --space");
      }
      require_grid(pn_samples);
      const PinchingResult p = pinching_ratio(*base, pn_samples);
      VerificationReport r;
      r.check = "pinching-ratio";
      r.params = {{"samples", pn_samples}};
      r.metrics = {{"kappa_minus", p.kappa_minus}, {"kappa_plus", p.kappa_plus}, {"ratio", p.ratio}};
      r.slack = std::numeric_limits<double>::infinity();
      r.pass = std::isfinite(p.ratio);
      r.notes.push_back("base: " + base->id());
      r.notes.push_back(p.ratio > 0.25 ? "quarter-pinched" : "not quarter-pinched");
      std::string tag = "pinching_" + base->id();
      std::replace(tag.begin(), tag.end(), ' ', '_');
      return emit("pinching", args, {r}, pn_out, tag, out);
    }

    if (iq->parsed()) {
      std::vector<VerificationReport> reports;
      std::vector<std::pair<std::string, double>> tag;
      if (iq_kminus || iq_kplus) {
        if (!iq_kminus || !iq_kplus) throw InputError("give both --kappa-minus and --kappa-plus");
        const PinchingInequality p = pinching_inequality_check(*iq_kminus, *iq_kplus);
        VerificationReport r;
        r.check = "pinching-inequality";
        r.params = {{"kappa_minus", *iq_kminus}, {"kappa_plus", *iq_kplus}};
        r.metrics = {{"ratio", p.ratio},   {"lower", p.lower},
                     {"upper", p.upper},   {"contradiction_possible", p.contradiction_possible},
                     {"compatible", p.compatible}};
        r.slack = p.slack;
        r.pass = true;
        r.notes.push_back(p.contradiction_possible ? "ratio <= 1/4: the length bounds can conflict"
                                                   : "ratio > 1/4: quarter-pinched");
        r.notes.push_back(p.compatible ? "some closed geodesic length satisfies both bounds"
                                       : "no closed geodesic length satisfies both bounds");
        reports.push_back(r);
        tag.push_back({"km", *iq_kminus});
        tag.push_back({"kp", *iq_kplus});
      }
      if (iq_c) {
        VerificationReport r;
        r.check = "diameter-bound";
        r.params = {{"c", *iq_c}};
        r.metrics = {{"diameter_bound", bonnet_diameter_bound(*iq_c)}, {"disk_radius_margin", disk_radius_margin(*iq_c)}};
        r.slack = disk_radius_margin(*iq_c);
        r.pass = true;
        reports.push_back(r);
        tag.push_back({"c", *iq_c});
      }
      if (iq_curve_c) {
        if (iq_segments < 8) throw InputError("--segments must be at least 8");
        const Polyline curve =
            iq_curve == "circle" ? circle_polyline(iq_radius, iq_segments) : ellipse_polyline(iq_a, iq_b, iq_segments);
        const CurveRadiusCheck c = convex_curve_radius_check(curve, *iq_curve_c);
        VerificationReport r;
        r.check = "convex-curve-radius";
        r.params = {{"c", *iq_curve_c}, {"segments", iq_segments}};
        if (iq_curve == "circle") {
          r.params["radius"] = iq_radius;
        } else {
          r.params["a"] = iq_a;
          r.params["b"] = iq_b;
        }
        r.metrics = {{"min_curvature", c.min_curvature},
                     {"enclosing_radius", c.enclosing.radius},
                     {"limit", c.limit},
                     {"tolerance", c.tolerance}};
        r.slack = c.limit + c.tolerance - c.enclosing.radius;
        r.max_residual = std::max(0.0, -r.slack);
        r.pass = c.certified;
        r.notes.push_back("curve: " + iq_curve);
        reports.push_back(r);
        tag.push_back({"cc", *iq_curve_c});
      }
      if (reports.empty()) throw InputError("nothing to check: give --kappa-minus/--kappa-plus, --c or --curve-c");
      return emit("inequalities", args, reports, iq_out, artifact_tag("inequalities", tag), out);
    }

    if (cl->parsed()) {
      TriMesh mesh = read_mesh(cl_mesh);
      if (!cl_space.empty()) mesh.space = cl_space;
      if (mesh.space.empty()) throw InputError("mesh declares no space; pass --space");
      const auto space = parse_space(mesh.space);
      cl_opts.check_convexity = !cl_no_convexity;
      const SweepResult r = classify(mesh, *space, cl_opts);
      const VerificationReport rep = classification_report(r, mesh, cl_opts.levels);
      if (cl_format == "json") {
        json doc = document("classify", args, {rep});
        doc["metadata"].erase("timestamp");
        doc["classification"] = classification_json(r);
        out << doc.dump(2) << '\n';
      } else if (cl_format == "csv") {
        out << "t,kind,component,detail\n";
        for (const auto& e : r.events)
          out << num12(e.t) << ',' << to_string(e.kind) << ',' << e.component << ',' << csv_field(e.detail) << '\n';
      } else {
        out << "verdict: " << to_string(r.verdict) << '\n';
        out << "births " << r.count(EventKind::Birth) << ", deaths " << r.count(EventKind::Death) << ", merges "
            << r.count(EventKind::Merge) << ", splits " << r.count(EventKind::Split) << ", intersecting pairs "
            << r.intersections.size() << '\n';
        out << "euler characteristic " << r.topology.euler() << ", mesh components " << r.mesh_components
            << ", dt " << num12(r.dt) << '\n';
        for (const auto& e : r.events)
          out << "  t=" << num12(e.t) << ' ' << to_string(e.kind) << ' ' << e.component
              << (e.detail.empty() ? "" : " " + e.detail) << '\n';
        for (const auto& d : r.diagnostics) out << "  note: " << d << '\n';
      }
      if (!cl_out_dir.empty()) {
        OutputOptions o{cl_format, cl_out_dir, cl_name};
        json doc = document("classify", args, {rep});
        doc["classification"] = classification_json(r);
        write_file(artifact_path(o, "classify_" + fs::path(cl_mesh).stem().string(), ".json"), doc.dump(2) + "\n");
      }
      return verdict_exit(r.verdict);
    }

    if (gf->parsed()) {
      if (gf_list) {
        for (const auto& n : fixture_names()) out << n << '\n';
        return kExitPass;
      }
      if (gf_name.empty()) throw InputError("give a fixture name (see --list)");
      if (gf_output.empty()) throw InputError("give an output path with -o");
      require_positive(gf_resolution, "--resolution");
      const TriMesh m = make_fixture(gf_name, gf_resolution);
      write_mesh(m, gf_output);
      out << "wrote " << gf_name << ": " << m.vertices.size() << " vertices, " << m.triangles.size()
          << " triangles to " << gf_output << '\n';
      return kExitPass;
    }

    if (rp->parsed()) {
      if (!fs::is_directory(rp_dir)) throw InputError("artifact directory not found: " + rp_dir);
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(rp_dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      if (files.empty()) throw InputError("no JSON artifacts in " + rp_dir);
      std::vector<VerificationReport> reports;
      for (const auto& f : files) {
        std::ifstream in(f);
        json doc;
        try {
          doc = json::parse(in);
        } catch (const json::exception& e) {
          throw InputError("malformed artifact " + f.filename().string() + ": " + e.what());
        }
        if (!doc.contains("reports") || !doc["reports"].is_array())
          throw InputError("artifact " + f.filename().string() + " has no reports");
        for (const auto& r : doc["reports"]) reports.push_back(report_from_json(r));
      }
      sort_reports(reports);
      const int passed = static_cast<int>(std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.pass; }));
      std::ostringstream summary;
      if (rp_format == "csv") {
        write_reports_csv(reports, summary);
      } else if (rp_format == "text") {
        write_reports_text(reports, summary);
        summary << passed << " of " << reports.size() << " checks pass\n";
      } else {
        json doc;
        doc["metadata"] = {{"tool", "convexa"}, {"command", "report"}, {"artifacts", files.size()},
                           {"timestamp", iso_timestamp()}};
        doc["summary"] = {{"checks", reports.size()}, {"passed", passed},
                          {"failed", static_cast<int>(reports.size()) - passed}};
        doc["reports"] = reports_json(reports);
        summary << doc.dump(2) << '\n';
      }
      if (rp_output.empty())
        out << summary.str();
      else
        write_file(rp_output, summary.str());
      return all_pass(reports) ? kExitPass : kExitFail;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace convexa
