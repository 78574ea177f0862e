#include "convexa/sweep.hpp"

#include "convexa/parallel.hpp"
#include "convexa/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace convexa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Box2 = Eigen::AlignedBox2d;
using Box3 = Eigen::AlignedBox3d;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

const Heisenberg* as_heisenberg(const AmbientSpace& s) { return dynamic_cast<const Heisenberg*>(&s); }
const ProductSpace* as_product(const AmbientSpace& s) { return dynamic_cast<const ProductSpace*>(&s); }

}  // namespace

// ---------------------------------------------------------------------------
// Frames

double SweepFrame::height(const Eigen::Vector3d& p) const {
  if (kind == Kind::Horizontal) return p[2];
  return std::cos(angle) * p[0] + std::sin(angle) * p[1];
}

Eigen::Vector2d SweepFrame::footprint(const Eigen::Vector3d& p) const {
  if (kind == Kind::Horizontal) return {p[0], p[1]};
  return {-std::sin(angle) * p[0] + std::cos(angle) * p[1], p[2]};
}

SweepFrame horizontal_frame(const AmbientSpace& space) {
  if (space.chart_dim() != 3 || space.constrained() || space.fiber_coordinate() != 2)
    throw InputError("horizontal sweep needs a product space or Heisenberg space, got " + space.id());
  SweepFrame f;
  f.kind = SweepFrame::Kind::Horizontal;
  f.chart_periods = space.periods();
  f.footprint_periods = {f.chart_periods[0], f.chart_periods[1]};
  return f;
}

SweepFrame vertical_frame(const AmbientSpace& space, double angle) {
  if (!as_heisenberg(space)) throw InputError("vertical sweep is implemented for Heisenberg space only");
  SweepFrame f;
  f.kind = SweepFrame::Kind::Vertical;
  f.angle = angle;
  f.chart_periods = space.periods();
  f.footprint_periods = {0.0, 0.0};
  return f;
}

SweepFrame default_frame(const AmbientSpace& space) {
  if (as_product(space)) return horizontal_frame(space);
  if (as_heisenberg(space)) return vertical_frame(space);
  throw InputError("classification needs a product space or Heisenberg space, got " + space.id());
}

// ---------------------------------------------------------------------------
// Slicing

SliceCurve slice(const TriMesh& mesh, const SweepFrame& frame, double t) {
  const size_t nv = mesh.vertices.size();
  std::vector<double> h(nv);
  for (size_t i = 0; i < nv; ++i) h[i] = frame.height(mesh.vertices[i]);
  for (int tries = 0; std::find(h.begin(), h.end(), t) != h.end(); ++tries) {
    if (tries > 1000) throw NumericalError("cannot perturb slice level off vertex heights");
    t += 1e-9;
  }

  std::map<std::pair<int, int>, int> point_of_edge;
  std::vector<Eigen::Vector3d> points;
  std::vector<std::array<int, 2>> nbr;
  auto point_on = [&](int a, int b) {
    const std::pair<int, int> e = a < b ? std::pair{a, b} : std::pair{b, a};
    if (const auto it = point_of_edge.find(e); it != point_of_edge.end()) return it->second;
    const Eigen::Vector3d& pa = mesh.vertices[static_cast<size_t>(e.first)];
    const Eigen::Vector3d pb = unwrap_near(pa, mesh.vertices[static_cast<size_t>(e.second)], frame.chart_periods);
    const double ha = h[static_cast<size_t>(e.first)], hb = h[static_cast<size_t>(e.second)];
    points.push_back(pa + (t - ha) / (hb - ha) * (pb - pa));
    nbr.push_back({-1, -1});
    const int id = static_cast<int>(points.size()) - 1;
    point_of_edge.emplace(e, id);
    return id;
  };
  auto link = [&](int p, int q) {
    for (int r : {p, q}) {
      auto& slot = nbr[static_cast<size_t>(r)];
      const int other = r == p ? q : p;
      if (slot[0] < 0) slot[0] = other;
      else if (slot[1] < 0) slot[1] = other;
      else throw InputError("non-manifold mesh: slice point with more than two neighbours");
    }
  };
  for (const auto& tri : mesh.triangles) {
    int found[2], n = 0;
    for (int k = 0; k < 3; ++k) {
      const int a = tri[static_cast<size_t>(k)], b = tri[static_cast<size_t>((k + 1) % 3)];
      if ((h[static_cast<size_t>(a)] - t) * (h[static_cast<size_t>(b)] - t) < 0.0) found[n++] = point_on(a, b);
    }
    if (n == 2) link(found[0], found[1]);
  }

  SliceCurve out;
  out.level = t;
  std::vector<char> used(points.size(), 0);
  auto walk = [&](int start, bool closed) {
    SliceComponent c;
    c.closed = closed;
    int prev = -1, cur = start;
    while (cur >= 0 && !used[static_cast<size_t>(cur)]) {
      used[static_cast<size_t>(cur)] = 1;
      const Eigen::Vector3d p = c.points.empty()
                                    ? points[static_cast<size_t>(cur)]
                                    : unwrap_near(c.points.back(), points[static_cast<size_t>(cur)], frame.chart_periods);
      c.points.push_back(p);
      const auto& nb = nbr[static_cast<size_t>(cur)];
      const int next = nb[0] != prev ? nb[0] : nb[1];
      prev = cur;
      cur = next;
    }
    out.components.push_back(std::move(c));
  };
  for (size_t i = 0; i < points.size(); ++i)
    if (!used[i] && (nbr[i][0] < 0 || nbr[i][1] < 0)) walk(static_cast<int>(i), false);
  for (size_t i = 0; i < points.size(); ++i)
    if (!used[i]) walk(static_cast<int>(i), true);
  return out;
}

// ---------------------------------------------------------------------------
// Component tracking

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::Birth: return "birth";
    case EventKind::Death: return "death";
    case EventKind::Merge: return "merge";
    case EventKind::Split: return "split";
    case EventKind::ConvexityFailure: return "convexity-failure";
    case EventKind::SelfIntersection: return "self-intersection";
  }
  return "unknown";
}

namespace {

struct Footprint {
  std::vector<Eigen::Vector2d> pts;
  bool closed = true;
  Box2 box;
};

Footprint footprint_of(const SliceComponent& c, const SweepFrame& frame) {
  Footprint f;
  f.closed = c.closed;
  for (const auto& p : c.points) {
    f.pts.push_back(frame.footprint(p));
    f.box.extend(f.pts.back());
  }
  return f;
}

bool point_in_polygon(const Eigen::Vector2d& q, const std::vector<Eigen::Vector2d>& poly) {
  bool inside = false;
  for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y() > q.y()) != (b.y() > q.y()) &&
        q.x() < (b.x() - a.x()) * (q.y() - a.y()) / (b.y() - a.y()) + a.x())
      inside = !inside;
  }
  return inside;
}

bool segments_cross(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                    const Eigen::Vector2d& q2) {
  return orient2d(q1, q2, p1) * orient2d(q1, q2, p2) <= 0 && orient2d(p1, p2, q1) * orient2d(p1, p2, q2) <= 0 &&
         Box2(p1.cwiseMin(p2), p1.cwiseMax(p2)).intersects(Box2(q1.cwiseMin(q2), q1.cwiseMax(q2)));
}

double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  const double s = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + s * ab)).norm();
}

double polyline_distance(const Footprint& a, const Footprint& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a.pts)
    for (size_t j = 0; j + 1 < b.pts.size(); ++j) best = std::min(best, segment_distance(p, b.pts[j], b.pts[j + 1]));
  for (const auto& p : b.pts)
    for (size_t j = 0; j + 1 < a.pts.size(); ++j) best = std::min(best, segment_distance(p, a.pts[j], a.pts[j + 1]));
  if (a.pts.size() == 1 || b.pts.size() == 1)
    for (const auto& p : a.pts)
      for (const auto& q : b.pts) best = std::min(best, (p - q).norm());
  return best;
}

Footprint shifted_near(const Footprint& ref, const Footprint& f, const std::vector<double>& periods) {
  Footprint out = f;
  const Eigen::Vector2d d = ref.box.center() - f.box.center();
  Eigen::Vector2d shift = Eigen::Vector2d::Zero();
  for (int i = 0; i < 2; ++i) {
    const double p = periods[static_cast<size_t>(i)];
    if (p > 0.0) shift[i] = p * std::round(d[i] / p);
  }
  if (shift.isZero()) return out;
  out.box = Box2();
  for (auto& q : out.pts) {
    q += shift;
    out.box.extend(q);
  }
  return out;
}

bool footprints_overlap(const Footprint& a, const Footprint& b_raw, const std::vector<double>& periods,
                        double open_tolerance) {
  const Footprint b = shifted_near(a, b_raw, periods);
  if (!a.closed || !b.closed) {
    Box2 grown = a.box;
    grown.extend(a.box.min() - Eigen::Vector2d::Constant(open_tolerance));
    grown.extend(a.box.max() + Eigen::Vector2d::Constant(open_tolerance));
    if (!grown.intersects(b.box)) return false;
    return polyline_distance(a, b) <= open_tolerance;
  }
  if (!a.box.intersects(b.box)) return false;
  if (point_in_polygon(a.pts[0], b.pts) || point_in_polygon(b.pts[0], a.pts)) return true;
  const size_t na = a.pts.size(), nb = b.pts.size();
  for (size_t i = 0; i < na; ++i) {
    const auto& p1 = a.pts[i];
    const auto& p2 = a.pts[(i + 1) % na];
    const Box2 ea(p1.cwiseMin(p2), p1.cwiseMax(p2));
    if (!ea.intersects(b.box)) continue;
    for (size_t j = 0; j < nb; ++j)
      if (segments_cross(p1, p2, b.pts[j], b.pts[(j + 1) % nb])) return true;
  }
  return false;
}

double median_footprint_edge(const TriMesh& mesh, const SweepFrame& frame) {
  std::vector<double> len;
  for (const auto& tri : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      const auto& a = mesh.vertices[static_cast<size_t>(tri[static_cast<size_t>(k)])];
      const auto b = unwrap_near(a, mesh.vertices[static_cast<size_t>(tri[static_cast<size_t>((k + 1) % 3)])],
                                 frame.chart_periods);
      len.push_back((frame.footprint(a) - frame.footprint(b)).norm());
    }
  if (len.empty()) return 0.0;
  std::nth_element(len.begin(), len.begin() + static_cast<long>(len.size() / 2), len.end());
  return len[len.size() / 2];
}

struct Tracked {
  TrackResult result;
  std::vector<SliceCurve> slices;
};

Tracked track_impl(const TriMesh& mesh, const SweepFrame& frame, double t_min, double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("dt must be positive");
  if (!(t_max > t_min)) throw InputError("t_max must exceed t_min");
  const int n = static_cast<int>(std::ceil((t_max - t_min) / dt - 1e-9)) + 1;
  if (n > 1000000) throw InputError("too many sweep levels");
  Tracked tr;
  TrackResult& r = tr.result;
  r.levels.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) r.levels[static_cast<size_t>(k)] = std::min(t_min + k * dt, t_max);
  tr.slices.resize(static_cast<size_t>(n));
  std::vector<std::vector<Footprint>> fps(static_cast<size_t>(n));
  parallel_for(static_cast<size_t>(n), [&](size_t k) {
    tr.slices[k] = slice(mesh, frame, r.levels[k]);
    for (const auto& c : tr.slices[k].components) fps[k].push_back(footprint_of(c, frame));
  });
  for (size_t k = 0; k < static_cast<size_t>(n); ++k) {
    r.component_counts.push_back(static_cast<int>(fps[k].size()));
    r.open_counts.push_back(static_cast<int>(
        std::count_if(fps[k].begin(), fps[k].end(), [](const Footprint& f) { return !f.closed; })));
  }
  const double open_tol = 4.0 * median_footprint_edge(mesh, frame);

  for (size_t k = 0; k + 1 < static_cast<size_t>(n); ++k) {
    const auto& A = fps[k];
    const auto& B = fps[k + 1];
    const double tm = 0.5 * (r.levels[k] + r.levels[k + 1]);
    std::vector<std::vector<int>> a_to_b(A.size()), b_to_a(B.size());
    for (size_t i = 0; i < A.size(); ++i)
      for (size_t j = 0; j < B.size(); ++j)
        if (footprints_overlap(A[i], B[j], frame.footprint_periods, open_tol)) {
          a_to_b[i].push_back(static_cast<int>(j));
          b_to_a[j].push_back(static_cast<int>(i));
        }
    for (size_t j = 0; j < B.size(); ++j) {
      if (b_to_a[j].empty()) r.events.push_back({tm, EventKind::Birth, static_cast<int>(j), ""});
      else if (b_to_a[j].size() > 1)
        r.events.push_back({tm, EventKind::Merge, static_cast<int>(j),
                            std::to_string(b_to_a[j].size()) + " components merge"});
    }
    for (size_t i = 0; i < A.size(); ++i) {
      if (a_to_b[i].empty()) r.events.push_back({tm, EventKind::Death, static_cast<int>(i), ""});
      else if (a_to_b[i].size() > 1)
        r.events.push_back({tm, EventKind::Split, static_cast<int>(i),
                            "splits into " + std::to_string(a_to_b[i].size())});
    }
    // a matching group with several components on both sides has no consistent reading
    bool tangled = false;
    for (size_t i = 0; i < A.size() && !tangled; ++i)
      if (a_to_b[i].size() > 1)
        for (int j : a_to_b[i]) tangled = tangled || b_to_a[static_cast<size_t>(j)].size() > 1;
    if (tangled) {
      if (!r.ambiguous) r.diagnostics.push_back("ambiguous component matching first near t = " + fmt(tm));
      r.ambiguous = true;
    }
  }
  std::stable_sort(r.events.begin(), r.events.end(), [](const SweepEvent& a, const SweepEvent& b) {
    return a.t != b.t ? a.t < b.t : a.component < b.component;
  });
  return tr;
}

}  // namespace

TrackResult track_components(const TriMesh& mesh, const SweepFrame& frame, double t_min, double t_max,
                             double dt) {
  return track_impl(mesh, frame, t_min, t_max, dt).result;
}

// ---------------------------------------------------------------------------
// Self-intersection

namespace {

struct Bvh {
  struct Node {
    Box3 box;
    int left = -1, right = -1;
    int begin = 0, end = 0;
  };
  std::vector<Node> nodes;
  std::vector<int> order;
  const std::vector<Box3>* boxes = nullptr;

  explicit Bvh(const std::vector<Box3>& b) : boxes(&b) {
    order.resize(b.size());
    std::iota(order.begin(), order.end(), 0);
    if (!b.empty()) build(0, static_cast<int>(b.size()));
  }

  int build(int begin, int end) {
    Node node;
    node.begin = begin;
    node.end = end;
    for (int i = begin; i < end; ++i) node.box.extend((*boxes)[static_cast<size_t>(order[static_cast<size_t>(i)])]);
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(node);
    if (end - begin <= 4) return id;
    int axis = 0;
    node.box.sizes().maxCoeff(&axis);
    const int mid = (begin + end) / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end, [&](int a, int b) {
      return (*boxes)[static_cast<size_t>(a)].center()[axis] < (*boxes)[static_cast<size_t>(b)].center()[axis];
    });
    const int l = build(begin, mid);
    const int r = build(mid, end);
    nodes[static_cast<size_t>(id)].left = l;
    nodes[static_cast<size_t>(id)].right = r;
    return id;
  }

  template <class Fn>
  void query(const Box3& q, Fn&& fn) const {
    if (nodes.empty()) return;
    std::vector<int> stack{0};
    while (!stack.empty()) {
      const Node& n = nodes[static_cast<size_t>(stack.back())];
      stack.pop_back();
      if (!n.box.intersects(q)) continue;
      if (n.left < 0) {
        for (int i = n.begin; i < n.end; ++i) {
          const int t = order[static_cast<size_t>(i)];
          if ((*boxes)[static_cast<size_t>(t)].intersects(q)) fn(t);
        }
      } else {
        stack.push_back(n.left);
        stack.push_back(n.right);
      }
    }
  }
};

std::vector<Eigen::Vector3d> period_shifts(const std::vector<double>& periods) {
  std::vector<Eigen::Vector3d> shifts{Eigen::Vector3d::Zero()};
  for (size_t axis = 0; axis < 3 && axis < periods.size(); ++axis) {
    if (!(periods[axis] > 0.0)) continue;
    std::vector<Eigen::Vector3d> next;
    for (const auto& s : shifts)
      for (int k : {0, -1, 1}) {
        Eigen::Vector3d v = s;
        v[static_cast<Eigen::Index>(axis)] += k * periods[axis];
        next.push_back(v);
      }
    shifts = std::move(next);
  }
  return shifts;
}

}  // namespace

std::vector<IntersectingPair> self_intersect(const TriMesh& mesh, const std::vector<double>& periods) {
  const size_t nt = mesh.triangles.size();
  std::vector<std::array<Eigen::Vector3d, 3>> corners(nt);
  std::vector<Box3> boxes(nt);
  for (size_t t = 0; t < nt; ++t) {
    auto c = triangle_corners(mesh, static_cast<int>(t), periods);
    // canonical representative: first corner inside the fundamental domain
    Eigen::Vector3d shift = Eigen::Vector3d::Zero();
    for (size_t i = 0; i < 3 && i < periods.size(); ++i)
      if (periods[i] > 0.0) shift[static_cast<Eigen::Index>(i)] = -periods[i] * std::floor(c[0][static_cast<Eigen::Index>(i)] / periods[i]);
    for (auto& p : c) {
      p += shift;
      boxes[t].extend(p);
    }
    corners[t] = c;
  }
  const Bvh bvh(boxes);
  const auto shifts = period_shifts(periods);
  std::vector<std::vector<IntersectingPair>> found(nt);
  parallel_for(nt, [&](size_t i) {
    const auto& ti = mesh.triangles[i];
    for (const auto& s : shifts) {
      const Box3 q(boxes[i].min() + s, boxes[i].max() + s);
      bvh.query(q, [&](int j) {
        if (static_cast<size_t>(j) <= i) return;
        const auto& tj = mesh.triangles[static_cast<size_t>(j)];
        for (int a : ti)
          for (int b : tj)
            if (a == b) return;
        const auto& A = corners[i];
        const auto& B = corners[static_cast<size_t>(j)];
        if (triangles_intersect(A[0] + s, A[1] + s, A[2] + s, B[0], B[1], B[2]))
          found[i].push_back({static_cast<int>(i), j});
      });
    }
  });
  std::vector<IntersectingPair> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  std::sort(out.begin(), out.end(), [](const IntersectingPair& x, const IntersectingPair& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Geodesic curvature of slices

std::vector<double> polyline_geodesic_curvature(const std::vector<Eigen::Vector2d>& closed,
                                                const Surface2D& base, int stride) {
  const size_t n = closed.size();
  if (stride < 1) throw InputError("curvature stencil stride must be positive");
  const size_t s = static_cast<size_t>(stride);
  if (n < 3 * s) throw InputError("closed polyline too short for the curvature stencil");
  const std::vector<double> periods = base.periods();
  auto wrap = [&](Eigen::Vector2d d) {
    for (size_t a = 0; a < periods.size() && a < 2; ++a)
      if (periods[a] > 0.0) d[a] -= periods[a] * std::round(d[a] / periods[a]);
    return d;
  };
  std::vector<double> turning(n), length(n);
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& p = closed[i];
    const Vec pv = p;
    const Mat g = base.metric(pv);
    const ChristoffelAtPoint gamma = christoffel(base, pv);
    const Vec din = wrap(p - closed[(i + n - s) % n]);
    const Vec dout = wrap(closed[(i + s) % n] - p);
    // tangents at p of the geodesics through the neighbouring vertices
    const Vec v = din - 0.5 * gamma.contract(din, din);
    const Vec w = dout + 0.5 * gamma.contract(dout, dout);
    const double cross = std::sqrt(g.determinant()) * (v[0] * w[1] - v[1] * w[0]);
    turning[i] = std::atan2(cross, v.dot(g * w));
    length[i] = 0.5 * (std::sqrt(v.dot(g * v)) + std::sqrt(w.dot(g * w)));
    if (!(length[i] > 0.0)) throw InputError("polyline has repeated vertices");
    total += turning[i];
  }
  const double orientation = total < 0.0 ? -1.0 : 1.0;
  std::vector<double> k(n);
  for (size_t i = 0; i < n; ++i) k[i] = orientation * turning[i] / length[i];
  return k;
}

std::vector<ComponentConvexity> slice_convexity(const SliceCurve& s, const Surface2D& base, int stride) {
  std::vector<ComponentConvexity> out;
  for (size_t c = 0; c < s.components.size(); ++c) {
    const SliceComponent& comp = s.components[c];
    ComponentConvexity r;
    r.component = static_cast<int>(c);
    r.closed = comp.closed;
    if (!comp.closed || comp.points.size() < 3 * static_cast<size_t>(std::max(stride, 1))) {
      r.closed = comp.closed;
      r.min_curvature = kNaN;
      out.push_back(r);
      continue;
    }
    std::vector<Eigen::Vector2d> pts;
    for (const auto& p : comp.points) pts.emplace_back(p[0], p[1]);
    r.curvature = polyline_geodesic_curvature(pts, base, stride);
    r.min_curvature = *std::min_element(r.curvature.begin(), r.curvature.end());
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Eigen::Vector2d> sphere_geodesic_circle(double r, int segments, double theta0, double phi0) {
  if (!(r > 0.0 && r < kPi) || segments < 3) throw InputError("geodesic circle needs 0 < r < pi and >= 3 segments");
  const Eigen::Vector3d c = RoundSphere::unit_from_chart(Eigen::Vector2d(theta0, phi0));
  const Eigen::Vector3d e1 = Eigen::Vector3d(std::cos(theta0) * std::cos(phi0), std::cos(theta0) * std::sin(phi0),
                                             -std::sin(theta0));
  const Eigen::Vector3d e2 = c.cross(e1);
  std::vector<Eigen::Vector2d> out;
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * kPi * i / segments;
    const Eigen::Vector3d q = std::cos(r) * c + std::sin(r) * (std::cos(a) * e1 + std::sin(a) * e2);
    Eigen::Vector2d p = RoundSphere::chart_from_unit(q);
    if (!out.empty()) p[1] -= 2.0 * kPi * std::round((p[1] - out.back()[1]) / (2.0 * kPi));
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Killing graphs

namespace {

struct Projection {
  std::vector<Eigen::Vector2d> vertex;                  // projected, unwrapped near vertex 0
  std::vector<std::array<Eigen::Vector2d, 3>> corners;  // per triangle
  std::vector<std::array<double, 3>> fiber;
};

Projection project_mesh(const TriMesh& mesh, const std::vector<double>& periods, int fc) {
  Projection p;
  const int a = fc == 0 ? 1 : 0, b = fc == 2 ? 1 : 2;
  auto proj = [&](const Eigen::Vector3d& x) { return Eigen::Vector2d(x[a], x[b]); };
  const Eigen::Vector3d ref = mesh.vertices.empty() ? Eigen::Vector3d::Zero() : mesh.vertices[0];
  for (const auto& v : mesh.vertices) p.vertex.push_back(proj(unwrap_near(ref, v, periods)));
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    auto c = triangle_corners(mesh, static_cast<int>(t), periods);
    const Eigen::Vector3d shift = unwrap_near(ref, c[0], periods) - c[0];
    std::array<Eigen::Vector2d, 3> pc;
    std::array<double, 3> fv;
    for (int k = 0; k < 3; ++k) {
      pc[static_cast<size_t>(k)] = proj(c[static_cast<size_t>(k)] + shift);
      fv[static_cast<size_t>(k)] = c[static_cast<size_t>(k)][fc];
    }
    p.corners.push_back(pc);
    p.fiber.push_back(fv);
  }
  return p;
}

// Empty when π is injective on the mesh, else a witness.
std::string injectivity_witness(const TriMesh& mesh, const std::vector<double>& periods, int fc) {
  const Projection pr = project_mesh(mesh, periods, fc);
  double total = 0.0;
  int count = 0;
  for (const auto& c : pr.corners)
    for (int k = 0; k < 3; ++k) {
      total += (c[static_cast<size_t>(k)] - c[static_cast<size_t>((k + 1) % 3)]).norm();
      ++count;
    }
  const double cell = count > 0 ? total / count : 0.0;
  if (!(cell > 1e-14)) return "projection collapses the mesh";
  auto cell_of = [&](const Eigen::Vector2d& q) {
    return std::pair<long, long>{static_cast<long>(std::floor(q.x() / cell)), static_cast<long>(std::floor(q.y() / cell))};
  };
  std::map<std::pair<long, long>, std::vector<int>> grid;
  std::vector<char> flat(pr.corners.size(), 0);
  int degenerate = 0;
  for (size_t t = 0; t < pr.corners.size(); ++t) {
    const auto& c = pr.corners[t];
    const double area = 0.5 * std::abs((c[1] - c[0]).x() * (c[2] - c[0]).y() - (c[1] - c[0]).y() * (c[2] - c[0]).x());
    if (area <= 1e-14 * cell * cell) {
      flat[t] = 1;
      ++degenerate;
      continue;
    }
    Box2 box;
    for (const auto& q : c) box.extend(q);
    const auto lo = cell_of(box.min()), hi = cell_of(box.max());
    for (long i = lo.first; i <= hi.first; ++i)
      for (long j = lo.second; j <= hi.second; ++j) grid[{i, j}].push_back(static_cast<int>(t));
  }
  if (degenerate == static_cast<int>(pr.corners.size())) return "projection collapses every triangle";
  std::vector<std::string> witness(mesh.vertices.size());
  parallel_for(mesh.vertices.size(), [&](size_t v) {
    const auto it = grid.find(cell_of(pr.vertex[v]));
    if (it == grid.end()) return;
    const Eigen::Vector2d q = pr.vertex[v];
    for (int t : it->second) {
      const auto& tri = mesh.triangles[static_cast<size_t>(t)];
      if (tri[0] == static_cast<int>(v) || tri[1] == static_cast<int>(v) || tri[2] == static_cast<int>(v)) continue;
      const auto& c = pr.corners[static_cast<size_t>(t)];
      const Eigen::Vector2d e1 = c[1] - c[0], e2 = c[2] - c[0], d = q - c[0];
      const double det = e1.x() * e2.y() - e1.y() * e2.x();
      const double l1 = (d.x() * e2.y() - d.y() * e2.x()) / det;
      const double l2 = (e1.x() * d.y() - e1.y() * d.x()) / det;
      const double l0 = 1.0 - l1 - l2;
      const double tol = 1e-9;
      if (l0 > tol && l1 > tol && l2 > tol) {
        const auto& f = pr.fiber[static_cast<size_t>(t)];
        const double fiber = l0 * f[0] + l1 * f[1] + l2 * f[2];
        const double own = mesh.vertices[v][fc];
        if (std::abs(fiber - own) > 1e-9) {
          witness[v] = "vertex " + std::to_string(v) + " and triangle " + std::to_string(t) +
                       " share a base point at fiber values " + fmt(own) + " and " + fmt(fiber);
          return;
        }
      }
    }
  });
  for (const auto& w : witness)
    if (!w.empty()) return w;
  return "";
}

void require_killing_projection(const AmbientSpace& space) {
  if (!space.has_killing_field() || !space.fiber_coordinate())
    throw InputError("Killing-graph check needs a space with a fiber coordinate, got " + space.id());
}

void finish_graph_check(KillingGraphCheck& r, const std::vector<double>& nu, const std::string& injective_witness) {
  const double tol = 1e-9;
  r.min_abs_nu = std::numeric_limits<double>::infinity();
  int pos = 0, neg = 0;
  size_t first_small = nu.size();
  for (size_t i = 0; i < nu.size(); ++i) {
    r.min_abs_nu = std::min(r.min_abs_nu, std::abs(nu[i]));
    if (nu[i] > tol) ++pos;
    else if (nu[i] < -tol) ++neg;
    else if (first_small == nu.size()) first_small = i;
  }
  if (nu.empty()) r.min_abs_nu = 0.0;
  r.nu_sign_constant = !nu.empty() && (pos == static_cast<int>(nu.size()) || neg == static_cast<int>(nu.size()));
  r.injective = injective_witness.empty();
  r.is_graph = r.nu_sign_constant && r.injective;
  if (first_small < nu.size()) r.witness = "angle function vanishes at sample " + std::to_string(first_small);
  else if (!r.nu_sign_constant) r.witness = "angle function changes sign";
  else if (!r.injective) r.witness = injective_witness;
}

}  // namespace

KillingGraphCheck killing_graph_check(const TriMesh& mesh, const AmbientSpace& space) {
  require_killing_projection(space);
  const auto periods = space.periods();
  validate_mesh(mesh, periods);
  const int fc = *space.fiber_coordinate();
  std::vector<double> nu(mesh.triangles.size());
  parallel_for(mesh.triangles.size(), [&](size_t t) {
    const auto c = triangle_corners(mesh, static_cast<int>(t), periods);
    const Vec centroid = (c[0] + c[1] + c[2]) / 3.0;
    const Eigen::Vector3d omega = (c[1] - c[0]).cross(c[2] - c[0]);
    const Mat g = space.metric(centroid);
    const Vec xi = killing_field(space, centroid);
    const double norm = std::sqrt(omega.dot(g.ldlt().solve(Vec(omega))));
    nu[t] = (mesh.outward ? 1.0 : -1.0) * omega.dot(xi) / norm;
  });
  KillingGraphCheck r;
  finish_graph_check(r, nu, injectivity_witness(mesh, periods, fc));
  return r;
}

TriMesh mesh_from_surface(const ParametricSurface& surface, const Grid& grid) {
  if (grid.nu < 2 || grid.nv < 2) throw InputError("surface mesh needs a grid of at least 2 x 2");
  TriMesh m;
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      const auto [u, v] = grid_sample(surface.domain(), grid, i, j);
      const Vec p = surface(u, v);
      if (p.size() != 3) throw InputError("surface mesh needs a three-dimensional chart");
      m.vertices.emplace_back(p[0], p[1], p[2]);
    }
  auto id = [&](int i, int j) { return i * grid.nv + j; };
  for (int i = 0; i + 1 < grid.nu; ++i)
    for (int j = 0; j + 1 < grid.nv; ++j) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

KillingGraphCheck killing_graph_check(const ParametricSurface& surface, const AmbientSpace& space,
                                      const Grid& grid) {
  require_killing_projection(space);
  if (grid.nu < 2 || grid.nv < 2) throw InputError("grid needs at least 2 x 2 samples");
  std::vector<double> nu(static_cast<size_t>(grid.nu) * static_cast<size_t>(grid.nv));
  parallel_for(static_cast<size_t>(grid.nu), [&](size_t i) {
    for (int j = 0; j < grid.nv; ++j) {
      const auto [u, v] = grid_sample(surface.domain(), grid, static_cast<int>(i), j);
      double value = 0.0;
      try {
        value = angle_function(surface, space, u, v).nu;
      } catch (const DegenerateError&) {
        value = 0.0;
      }
      nu[i * static_cast<size_t>(grid.nv) + static_cast<size_t>(j)] = value;
    }
  });
  const TriMesh m = mesh_from_surface(surface, grid);
  KillingGraphCheck r;
  finish_graph_check(r, nu, injectivity_witness(m, space.periods(), *space.fiber_coordinate()));
  return r;
}

// ---------------------------------------------------------------------------
// Bi-graph search

namespace {

using Poly2 = std::vector<Eigen::Vector2d>;

// Part of a triangle with height ≥ t (above) or ≤ t (below), as a convex polygon in
// chart coordinates.
std::vector<Eigen::Vector3d> clip_triangle(const std::array<Eigen::Vector3d, 3>& c, double t, bool above) {
  std::vector<Eigen::Vector3d> out;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d& a = c[static_cast<size_t>(k)];
    const Eigen::Vector3d& b = c[static_cast<size_t>((k + 1) % 3)];
    const double da = above ? a[2] - t : t - a[2];
    const double db = above ? b[2] - t : t - b[2];
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) out.push_back(a + da / (da - db) * (b - a));
  }
  return out;
}

void rasterize(const Poly2& poly, const Box2& frame, int n, std::vector<uint8_t>& counts) {
  if (poly.size() < 3) return;
  double area = 0.0;
  Box2 box;
  for (size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    area += a.x() * b.y() - a.y() * b.x();
    box.extend(a);
  }
  if (std::abs(area) < 1e-300) return;
  const double sgn = area > 0 ? 1.0 : -1.0;
  const Eigen::Vector2d h = frame.sizes() / n;
  const int i0 = std::max(0, static_cast<int>(std::floor((box.min().x() - frame.min().x()) / h.x() - 0.5)));
  const int i1 = std::min(n - 1, static_cast<int>(std::ceil((box.max().x() - frame.min().x()) / h.x() - 0.5)));
  const int j0 = std::max(0, static_cast<int>(std::floor((box.min().y() - frame.min().y()) / h.y() - 0.5)));
  const int j1 = std::min(n - 1, static_cast<int>(std::ceil((box.max().y() - frame.min().y()) / h.y() - 0.5)));
  for (int i = i0; i <= i1; ++i)
    for (int j = j0; j <= j1; ++j) {
      const Eigen::Vector2d q = frame.min() + Eigen::Vector2d((i + 0.5) * h.x(), (j + 0.5) * h.y());
      bool inside = true;
      for (size_t k = 0; k < poly.size() && inside; ++k) {
        const auto& a = poly[k];
        const auto& b = poly[(k + 1) % poly.size()];
        inside = sgn * ((b - a).x() * (q - a).y() - (b - a).y() * (q - a).x()) >= 0.0;
      }
      if (inside) {
        auto& c = counts[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
        if (c < 255) ++c;
      }
    }
}

}  // namespace

BigraphResult alexandrov_bigraph(const TriMesh& mesh, const AmbientSpace& space, int levels, int raster) {
  const SweepFrame frame = horizontal_frame(space);
  validate_mesh(mesh, frame.chart_periods);
  const MeshTopology top = mesh_topology(mesh);
  if (top.boundary_edges != 0 || top.euler() != 2)
    throw InputError("bi-graph search needs a closed sphere-type mesh");
  if (levels < 2 || raster < 8) throw InputError("bi-graph search needs levels >= 2 and raster >= 8");

  const Eigen::Vector3d ref = mesh.vertices[static_cast<size_t>(mesh.triangles[0][0])];
  std::vector<std::array<Eigen::Vector3d, 3>> corners;
  Box2 frame_box;
  double hmin = std::numeric_limits<double>::infinity(), hmax = -hmin;
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    auto c = triangle_corners(mesh, static_cast<int>(t), frame.chart_periods);
    const Eigen::Vector3d shift = unwrap_near(ref, c[0], frame.chart_periods) - c[0];
    for (auto& p : c) {
      p += shift;
      frame_box.extend(Eigen::Vector2d(p[0], p[1]));
      hmin = std::min(hmin, p[2]);
      hmax = std::max(hmax, p[2]);
    }
    corners.push_back(c);
  }
  const Eigen::Vector2d pad = 1e-6 * frame_box.sizes() + Eigen::Vector2d::Constant(1e-12);
  frame_box.extend(frame_box.min() - pad);
  frame_box.extend(frame_box.max() + pad);

  BigraphResult best;
  best.dt = (hmax - hmin) / levels;
  struct Score {
    double symdiff = 1.0, defect = 1.0;
  };
  std::vector<Score> scores(static_cast<size_t>(levels));
  const size_t cells = static_cast<size_t>(raster) * static_cast<size_t>(raster);
  parallel_for(static_cast<size_t>(levels), [&](size_t k) {
    const double t = hmin + (static_cast<double>(k) + 0.5) * best.dt;
    std::vector<uint8_t> up(cells, 0), down(cells, 0);
    for (const auto& c : corners) {
      const double lo = std::min({c[0][2], c[1][2], c[2][2]});
      const double hi = std::max({c[0][2], c[1][2], c[2][2]});
      for (bool above : {true, false}) {
        if (above ? hi < t : lo > t) continue;
        Poly2 poly;
        for (const auto& p : clip_triangle(c, t, above)) poly.emplace_back(p[0], p[1]);
        rasterize(poly, frame_box, raster, above ? up : down);
      }
    }
    size_t u1 = 0, l1 = 0, u2 = 0, l2 = 0, either = 0, xor_count = 0;
    for (size_t i = 0; i < cells; ++i) {
      const bool a = up[i] > 0, b = down[i] > 0;
      u1 += a;
      l1 += b;
      u2 += up[i] > 1;
      l2 += down[i] > 1;
      either += a || b;
      xor_count += a != b;
    }
    Score& s = scores[k];
    if (either == 0 || u1 == 0 || l1 == 0) return;
    s.symdiff = static_cast<double>(xor_count) / static_cast<double>(either);
    s.defect = std::max(static_cast<double>(u2) / static_cast<double>(u1), static_cast<double>(l2) / static_cast<double>(l1));
  });
  double best_score = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < scores.size(); ++k) {
    const Score& s = scores[k];
    const double score = s.symdiff + s.defect;
    if (score < best_score) {
      best_score = score;
      best.symmetric_difference = s.symdiff;
      best.graph_defect = s.defect;
      best.t0 = hmin + (static_cast<double>(k) + 0.5) * best.dt;
    }
  }
  if (!(best.symmetric_difference < 0.01 && best.graph_defect < 0.01)) best.t0.reset();
  return best;
}

// ---------------------------------------------------------------------------
// Tilt diagnostic

std::vector<TiltDiagnostic> tilt_diagnostic(const SliceCurve& s, const SweepFrame& frame) {
  if (frame.kind != SweepFrame::Kind::Vertical) throw InputError("tilt diagnostic needs a vertical sweep frame");
  std::vector<TiltDiagnostic> out;
  for (size_t c = 0; c < s.components.size(); ++c) {
    const auto& comp = s.components[c];
    TiltDiagnostic d;
    d.component = static_cast<int>(c);
    Poly2 poly;
    for (const auto& p : comp.points) poly.push_back(frame.footprint(p));
    const size_t n = poly.size();
    if (n < 3) {
      out.push_back(d);
      continue;
    }
    Box2 box;
    for (const auto& q : poly) box.extend(q);
    const double eta = 1e-7 * std::max(1.0, box.sizes().norm());
    const size_t edges = comp.closed ? n : n - 1;
    auto ray_stays_inside = [&](size_t v, double dir) {
      const Eigen::Vector2d q = poly[v] + Eigen::Vector2d(0.0, dir * eta);
      if (!point_in_polygon(q, poly)) return false;
      const double x = poly[v].x();
      for (size_t e = 0; e < edges; ++e) {
        const size_t a = e, b = (e + 1) % n;
        if (a == v || b == v) continue;
        const auto& pa = poly[a];
        const auto& pb = poly[b];
        if ((pa.x() <= x) == (pb.x() <= x)) continue;
        const double z = pa.y() + (x - pa.x()) / (pb.x() - pa.x()) * (pb.y() - pa.y());
        if (dir * (z - poly[v].y()) > eta) return false;
      }
      return true;
    };
    for (size_t v = 0; v < n; ++v) {
      if (!d.up_vertex && ray_stays_inside(v, 1.0)) d.up_vertex = static_cast<int>(v);
      if (!d.down_vertex && ray_stays_inside(v, -1.0)) d.down_vertex = static_cast<int>(v);
    }
    d.tilted = !d.up_vertex && !d.down_vertex;
    out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Sphere: return "Sphere";
    case Verdict::PlaneTopEnd: return "PlaneTopEnd";
    case Verdict::PlaneBottomEnd: return "PlaneBottomEnd";
    case Verdict::NonEmbedded: return "NonEmbedded";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

int SweepResult::count(EventKind k) const {
  return static_cast<int>(std::count_if(events.begin(), events.end(), [k](const SweepEvent& e) { return e.kind == k; }));
}

namespace {

int connected_components(const TriMesh& mesh) {
  std::vector<int> parent(mesh.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
    return x;
  };
  std::vector<char> used(mesh.vertices.size(), 0);
  for (const auto& t : mesh.triangles) {
    for (int v : t) used[static_cast<size_t>(v)] = 1;
    parent[static_cast<size_t>(find(t[1]))] = find(t[0]);
    parent[static_cast<size_t>(find(t[2]))] = find(t[0]);
  }
  std::set<int> roots;
  for (size_t v = 0; v < mesh.vertices.size(); ++v)
    if (used[v]) roots.insert(find(static_cast<int>(v)));
  return static_cast<int>(roots.size());
}

enum class EndKind { None, Top, Bottom };

}  // namespace

SweepResult classify(const TriMesh& mesh, const AmbientSpace& space, const SweepOptions& options) {
  if (options.levels < 8) throw InputError("classification needs at least 8 sweep levels");
  const SweepFrame frame = default_frame(space);
  const auto& periods = frame.chart_periods;
  validate_mesh(mesh, periods);
  if (mesh.triangles.empty()) throw InputError("empty mesh");

  SweepResult r;
  r.topology = mesh_topology(mesh);
  r.mesh_components = connected_components(mesh);
  r.intersections = self_intersect(mesh, periods);

  const int fc = *space.fiber_coordinate();
  double hmin = std::numeric_limits<double>::infinity(), hmax = -hmin;
  double fmin = hmin, fmax = -hmin;
  for (const auto& tri : mesh.triangles)
    for (int v : tri) {
      const auto& p = mesh.vertices[static_cast<size_t>(v)];
      hmin = std::min(hmin, frame.height(p));
      hmax = std::max(hmax, frame.height(p));
      fmin = std::min(fmin, p[fc]);
      fmax = std::max(fmax, p[fc]);
    }

  EndKind end = EndKind::None;
  if (r.topology.boundary_edges > 0) {
    if (!mesh.truncation) throw InputError("mesh has boundary but declares no truncation height");
    const double trunc = *mesh.truncation;
    const double tol = 1e-9 * std::max(1.0, std::abs(trunc));
    for (const auto& loop : boundary_loops(mesh))
      for (int v : loop)
        if (std::abs(mesh.vertices[static_cast<size_t>(v)][fc] - trunc) > tol)
          throw InputError("mesh boundary away from the truncation height (interior boundary)");
    if (trunc >= fmax - tol) end = EndKind::Top;
    else if (trunc <= fmin + tol) end = EndKind::Bottom;
    else throw InputError("truncation height lies inside the mesh height range");
  }

  const double range = hmax - hmin;
  if (!(range > 0.0)) throw InputError("mesh has no extent in the sweep direction");
  double t0 = hmin - range / options.levels, t1 = hmax + range / options.levels;
  const bool horizontal = frame.kind == SweepFrame::Kind::Horizontal;
  if (horizontal && end == EndKind::Top) t1 = *mesh.truncation - 0.5 * range / options.levels;
  if (horizontal && end == EndKind::Bottom) t0 = *mesh.truncation + 0.5 * range / options.levels;
  r.dt = (t1 - t0) / options.levels;
  const Tracked tr = track_impl(mesh, frame, t0, t1, r.dt);
  r.events = tr.result.events;
  r.diagnostics = tr.result.diagnostics;

  if (!r.intersections.empty()) {
    double tmin = std::numeric_limits<double>::infinity();
    for (const auto& pair : r.intersections)
      for (int t : {pair.a, pair.b}) {
        const auto c = triangle_corners(mesh, t, periods);
        tmin = std::min(tmin, frame.height((c[0] + c[1] + c[2]) / 3.0));
      }
    r.events.push_back({tmin, EventKind::SelfIntersection, 0,
                        std::to_string(r.intersections.size()) + " intersecting triangle pairs"});
  }

  if (options.check_convexity && horizontal) {
    if (const ProductSpace* prod = as_product(space)) {
      bool failing = false;
      for (size_t k = 0; k < tr.slices.size(); ++k) {
        double worst = std::numeric_limits<double>::infinity();
        int where = -1;
        for (const auto& cc : slice_convexity(tr.slices[k], prod->base(), 2)) {
          if (!cc.closed || cc.curvature.size() < 8) continue;
          if (cc.min_curvature < worst) {
            worst = cc.min_curvature;
            where = cc.component;
          }
        }
        const bool now = where >= 0 && worst <= 0.0;
        if (now && !failing)
          r.events.push_back({tr.result.levels[k], EventKind::ConvexityFailure, where,
                              "min geodesic curvature " + fmt(worst)});
        failing = now;
      }
    }
  }
  std::stable_sort(r.events.begin(), r.events.end(), [](const SweepEvent& a, const SweepEvent& b) {
    return a.t != b.t ? a.t < b.t : a.component < b.component;
  });

  const int births = r.count(EventKind::Birth), deaths = r.count(EventKind::Death);
  const int merges = r.count(EventKind::Merge), splits = r.count(EventKind::Split);
  std::ostringstream summary;
  summary << "births " << births << ", deaths " << deaths << ", merges " << merges << ", splits " << splits
          << ", euler characteristic " << r.topology.euler() << ", mesh components " << r.mesh_components;
  r.diagnostics.push_back(summary.str());

  int nonempty = 0;
  for (int c : tr.result.component_counts) nonempty += c > 0;

  if (!r.intersections.empty()) {
    r.verdict = Verdict::NonEmbedded;
  } else if (tr.result.ambiguous) {
    r.verdict = Verdict::Undetermined;
  } else if (nonempty < 8) {
    r.verdict = Verdict::Undetermined;
    r.diagnostics.push_back("too few nonempty sweep levels (truncation too tight or mesh too thin)");
  } else if (end == EndKind::None) {
    const bool sphere = births == 1 && deaths == 1 && merges == 0 && splits == 0 &&
                        r.topology.euler() == 2 && r.mesh_components == 1;
    r.verdict = sphere ? Verdict::Sphere : Verdict::Undetermined;
    if (!sphere) r.diagnostics.push_back("closed mesh does not sweep as a single sphere");
  } else {
    const int want_births = horizontal && end == EndKind::Bottom ? 0 : 1;
    const int want_deaths = horizontal ? (end == EndKind::Top ? 0 : 1) : 1;
    const bool plane = births == want_births && deaths == want_deaths && merges == 0 && splits == 0 &&
                       r.topology.euler() == 1 && r.mesh_components == 1;
    if (plane) r.verdict = end == EndKind::Top ? Verdict::PlaneTopEnd : Verdict::PlaneBottomEnd;
    else {
      r.verdict = Verdict::Undetermined;
      r.diagnostics.push_back("truncated mesh does not sweep as a single disk with one end");
    }
  }
  return r;
}

}  // namespace convexa
