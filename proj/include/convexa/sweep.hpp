#pragma once

#include "convexa/immersion.hpp"
#include "convexa/mesh.hpp"
#include "convexa/spaces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace convexa {

// Height functional and footprint projection of a sweep. Horizontal sweeps use the fiber
// coordinate as height and the base coordinates as footprint. Vertical sweeps (Heisenberg)
// use the signed distance to a base line through the origin and footprint (s, z).
struct SweepFrame {
  enum class Kind { Horizontal, Vertical };
  Kind kind = Kind::Horizontal;
  double angle = 0.0;  // vertical: direction of the level-set lines is (−sin, cos)
  std::vector<double> chart_periods;
  std::vector<double> footprint_periods;

  double height(const Eigen::Vector3d& p) const;
  Eigen::Vector2d footprint(const Eigen::Vector3d& p) const;
};

SweepFrame horizontal_frame(const AmbientSpace& space);
SweepFrame vertical_frame(const AmbientSpace& space, double angle = 0.0);
// Horizontal for product spaces, vertical for Heisenberg; InputError otherwise.
SweepFrame default_frame(const AmbientSpace& space);

struct SliceComponent {
  std::vector<Eigen::Vector3d> points;  // chart points, unwrapped along the curve
  bool closed = true;
};

struct SliceCurve {
  double level = 0.0;  // after perturbation off vertex heights
  std::vector<SliceComponent> components;
};

// Marching-triangles level set of the sweep height.
SliceCurve slice(const TriMesh& mesh, const SweepFrame& frame, double t);

enum class EventKind { Birth, Death, Merge, Split, ConvexityFailure, SelfIntersection };
std::string to_string(EventKind k);

struct SweepEvent {
  double t = 0.0;
  EventKind kind = EventKind::Birth;
  int component = 0;  // index in the slice at the later level (birth, merge) or earlier one
  std::string detail;
};

struct TrackResult {
  std::vector<double> levels;
  std::vector<int> component_counts;
  std::vector<int> open_counts;
  std::vector<SweepEvent> events;
  bool ambiguous = false;
  std::vector<std::string> diagnostics;
};

// Matches components between consecutive levels by footprint overlap.
TrackResult track_components(const TriMesh& mesh, const SweepFrame& frame, double t_min, double t_max,
                             double dt);

struct IntersectingPair {
  int a = 0, b = 0;  // a < b
  bool operator==(const IntersectingPair&) const = default;
};

// Non-adjacent triangle pairs (no shared vertex) with nonempty intersection in the chart,
// including pairs that meet across a chart period.
std::vector<IntersectingPair> self_intersect(const TriMesh& mesh, const std::vector<double>& periods);

enum class Verdict { Sphere, PlaneTopEnd, PlaneBottomEnd, NonEmbedded, Undetermined };
std::string to_string(Verdict v);

struct SweepOptions {
  int levels = 256;
  bool check_convexity = true;
};

struct SweepResult {
  Verdict verdict = Verdict::Undetermined;
  std::vector<SweepEvent> events;
  std::vector<IntersectingPair> intersections;
  MeshTopology topology;
  int mesh_components = 0;
  double dt = 0.0;
  std::vector<std::string> diagnostics;

  int count(EventKind k) const;
};

SweepResult classify(const TriMesh& mesh, const AmbientSpace& space, const SweepOptions& options = {});

struct ComponentConvexity {
  int component = 0;
  bool closed = true;
  double min_curvature = 0.0;
  std::vector<double> curvature;
};

// Geodesic curvature of closed polylines in base coordinates: turning angle between the
// Christoffel-corrected tangents of the chords to the vertices `stride` steps away, over the
// mean chord length. Mesh slices alternate between points on the two edge families of each
// triangle strip, so stride 2 compares like points. Open components are reported and skipped.
std::vector<double> polyline_geodesic_curvature(const std::vector<Eigen::Vector2d>& closed,
                                                const Surface2D& base, int stride = 1);
std::vector<ComponentConvexity> slice_convexity(const SliceCurve& slice, const Surface2D& base,
                                                int stride = 1);

// Closed polyline of a geodesic circle of radius r about a point of the unit sphere, in
// polar chart coordinates.
std::vector<Eigen::Vector2d> sphere_geodesic_circle(double r, int segments, double theta0 = 1.2,
                                                    double phi0 = 0.4);

struct KillingGraphCheck {
  bool is_graph = false;
  double min_abs_nu = 0.0;
  bool nu_sign_constant = false;
  bool injective = false;
  std::string witness;
};

KillingGraphCheck killing_graph_check(const TriMesh& mesh, const AmbientSpace& space);
KillingGraphCheck killing_graph_check(const ParametricSurface& surface, const AmbientSpace& space,
                                      const Grid& grid);

// Triangulated grid samples of a parametric surface (no seam identification).
TriMesh mesh_from_surface(const ParametricSurface& surface, const Grid& grid);

struct BigraphResult {
  std::optional<double> t0;
  double symmetric_difference = 1.0;  // relative to the union of the two footprints
  double graph_defect = 1.0;          // doubly covered fraction, worst of the two halves
  double dt = 0.0;
};

// Level at which the parts above and below are graphs over the same footprint.
BigraphResult alexandrov_bigraph(const TriMesh& mesh, const AmbientSpace& space, int levels = 128,
                                 int raster = 256);

struct TiltDiagnostic {
  int component = 0;
  bool tilted = true;
  std::optional<int> up_vertex;    // a vertex whose fiber ray t > 0 stays inside
  std::optional<int> down_vertex;  // same for t < 0
};

// Fiber rays in the footprint (s, z) of vertical slices; open components are closed by the
// chord through their endpoints, which stands for the truncated end and is never crossed.
std::vector<TiltDiagnostic> tilt_diagnostic(const SliceCurve& slice, const SweepFrame& frame);

}  // namespace convexa
