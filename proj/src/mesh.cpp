#include "convexa/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace convexa {

namespace {

using Edge = std::pair<int, int>;

Edge key(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    const double x = std::stod(s, &used);
    if (trim(s.substr(used)).empty() && std::isfinite(x)) return x;
  } catch (const std::exception&) {
  }
  throw InputError("malformed " + what + ": '" + s + "'");
}

// Header comment: returns true when the line was a comment (consumed).
bool read_header_comment(const std::string& line, TriMesh& m) {
  const std::string t = trim(line);
  if (t.empty() || t[0] != '#') return false;
  const std::string body = trim(t.substr(1));
  auto value_of = [&](const std::string& tag) -> std::optional<std::string> {
    if (body.rfind(tag, 0) != 0) return std::nullopt;
    return trim(body.substr(tag.size()));
  };
  if (auto v = value_of("space:")) m.space = *v;
  else if (auto v = value_of("truncation:")) m.truncation = parse_double(*v, "truncation height");
  else if (auto v = value_of("orientation:")) {
    if (*v == "outward") m.outward = true;
    else if (*v == "inward") m.outward = false;
    else throw InputError("orientation must be outward or inward");
  }
  return true;
}

int parse_index(const std::string& tok, int count, bool one_based) {
  const std::string head = tok.substr(0, tok.find('/'));
  long v = 0;
  try {
    size_t used = 0;
    v = std::stol(head, &used);
    if (used != head.size()) throw InputError("");
  } catch (const std::exception&) {
    throw InputError("malformed face index '" + tok + "'");
  }
  if (one_based) v = v < 0 ? count + v : v - 1;
  if (v < 0 || v >= count) throw InputError("face index out of range: " + tok);
  return static_cast<int>(v);
}

}  // namespace

Eigen::Vector3d unwrap_near(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                            const std::vector<double>& periods) {
  Eigen::Vector3d out = b;
  for (size_t i = 0; i < periods.size() && i < 3; ++i) {
    const double p = periods[i];
    if (p > 0.0) out[i] -= p * std::round((out[i] - a[i]) / p);
  }
  return out;
}

std::array<Eigen::Vector3d, 3> triangle_corners(const TriMesh& m, int t,
                                                const std::vector<double>& periods) {
  const auto& tri = m.triangles[static_cast<size_t>(t)];
  const Eigen::Vector3d& a = m.vertices[static_cast<size_t>(tri[0])];
  return {a, unwrap_near(a, m.vertices[static_cast<size_t>(tri[1])], periods),
          unwrap_near(a, m.vertices[static_cast<size_t>(tri[2])], periods)};
}

void validate_mesh(const TriMesh& m, const std::vector<double>& periods) {
  const int n = static_cast<int>(m.vertices.size());
  for (const auto& v : m.vertices)
    if (!v.allFinite()) throw InputError("mesh vertex with non-finite coordinates");
  std::map<Edge, int> directed;
  for (size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    for (int i : tri)
      if (i < 0 || i >= n) throw InputError("triangle index out of range");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw InputError("triangle with repeated vertex");
    const auto c = triangle_corners(m, static_cast<int>(t), periods);
    if (0.5 * (c[1] - c[0]).cross(c[2] - c[0]).norm() <= 1e-12)
      throw InputError("degenerate triangle " + std::to_string(t));
    for (int k = 0; k < 3; ++k) {
      const Edge e{tri[static_cast<size_t>(k)], tri[static_cast<size_t>((k + 1) % 3)]};
      // three faces on one edge force a repeated direction, so this also catches non-manifold edges
      if (++directed[e] > 1) throw InputError("mesh is non-manifold or inconsistently oriented");
    }
  }
}

MeshTopology mesh_topology(const TriMesh& m) {
  std::map<Edge, int> edges;
  std::vector<char> used(m.vertices.size(), 0);
  for (const auto& tri : m.triangles)
    for (int k = 0; k < 3; ++k) {
      used[static_cast<size_t>(tri[static_cast<size_t>(k)])] = 1;
      ++edges[key(tri[static_cast<size_t>(k)], tri[static_cast<size_t>((k + 1) % 3)])];
    }
  MeshTopology top;
  top.vertices = static_cast<int>(std::count(used.begin(), used.end(), 1));
  top.edges = static_cast<int>(edges.size());
  top.faces = static_cast<int>(m.triangles.size());
  for (const auto& [e, c] : edges)
    if (c == 1) ++top.boundary_edges;
  return top;
}

std::vector<std::vector<int>> boundary_loops(const TriMesh& m) {
  std::map<Edge, int> count;
  for (const auto& tri : m.triangles)
    for (int k = 0; k < 3; ++k)
      ++count[key(tri[static_cast<size_t>(k)], tri[static_cast<size_t>((k + 1) % 3)])];
  // boundary edges keep the triangle's winding so loops chain head to tail
  std::map<int, int> next;
  for (const auto& tri : m.triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = tri[static_cast<size_t>(k)], b = tri[static_cast<size_t>((k + 1) % 3)];
      if (count[key(a, b)] == 1) next[a] = b;
    }
  std::vector<std::vector<int>> loops;
  std::map<int, bool> seen;
  for (const auto& [start, unused] : next) {
    (void)unused;
    if (seen[start]) continue;
    std::vector<int> loop;
    int v = start;
    while (!seen[v]) {
      seen[v] = true;
      loop.push_back(v);
      const auto it = next.find(v);
      if (it == next.end()) break;
      v = it->second;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

TriMesh refine_4to1(const TriMesh& m, const std::vector<double>& periods) {
  TriMesh out = m;
  out.triangles.clear();
  std::map<Edge, int> mid;
  auto midpoint = [&](int a, int b) {
    const Edge e = key(a, b);
    if (const auto it = mid.find(e); it != mid.end()) return it->second;
    const Eigen::Vector3d& pa = m.vertices[static_cast<size_t>(e.first)];
    const Eigen::Vector3d pb = unwrap_near(pa, m.vertices[static_cast<size_t>(e.second)], periods);
    out.vertices.push_back(0.5 * (pa + pb));
    const int id = static_cast<int>(out.vertices.size()) - 1;
    mid.emplace(e, id);
    return id;
  };
  for (const auto& t : m.triangles) {
    const int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
    out.triangles.push_back({t[0], ab, ca});
    out.triangles.push_back({ab, t[1], bc});
    out.triangles.push_back({ca, bc, t[2]});
    out.triangles.push_back({ab, bc, ca});
  }
  return out;
}

TriMesh translate_fiber(const TriMesh& m, int coordinate, double shift) {
  if (coordinate < 0 || coordinate > 2) throw InputError("coordinate index out of range");
  TriMesh out = m;
  for (auto& v : out.vertices) v[coordinate] += shift;
  if (out.truncation) *out.truncation += shift;
  return out;
}

// ---------------------------------------------------------------------------

TriMesh read_off(std::istream& in) {
  TriMesh m;
  std::vector<std::string> tokens;
  std::string line;
  bool magic = false;
  while (std::getline(in, line)) {
    if (read_header_comment(line, m)) continue;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    std::istringstream ls(body);
    std::string tok;
    while (ls >> tok) {
      if (!magic) {
        if (tok != "OFF") throw InputError("OFF file must start with 'OFF'");
        magic = true;
        continue;
      }
      tokens.push_back(tok);
    }
  }
  if (!magic) throw InputError("empty OFF file");
  size_t pos = 0;
  auto next = [&](const std::string& what) -> const std::string& {
    if (pos >= tokens.size()) throw InputError("truncated OFF file: expected " + what);
    return tokens[pos++];
  };
  const double nv = parse_double(next("vertex count"), "vertex count");
  const double nf = parse_double(next("face count"), "face count");
  parse_double(next("edge count"), "edge count");
  if (nv < 0 || nf < 0 || nv != std::floor(nv) || nf != std::floor(nf))
    throw InputError("invalid OFF counts");
  const int n = static_cast<int>(nv);
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d v;
    for (int k = 0; k < 3; ++k) v[k] = parse_double(next("vertex coordinate"), "vertex coordinate");
    m.vertices.push_back(v);
  }
  for (int f = 0; f < static_cast<int>(nf); ++f) {
    const std::string& c = next("face size");
    if (c != "3") throw InputError("only triangular faces are supported");
    std::array<int, 3> t{};
    for (int k = 0; k < 3; ++k) t[static_cast<size_t>(k)] = parse_index(next("face index"), n, false);
    m.triangles.push_back(t);
  }
  if (pos != tokens.size()) throw InputError("trailing data in OFF file");
  return m;
}

TriMesh read_obj(std::istream& in) {
  TriMesh m;
  std::string line;
  std::vector<std::array<std::string, 3>> faces;
  while (std::getline(in, line)) {
    if (read_header_comment(line, m)) continue;
    std::istringstream ls(trim(line));
    std::string tag;
    if (!(ls >> tag)) continue;
    std::vector<std::string> rest;
    std::string tok;
    while (ls >> tok) rest.push_back(tok);
    if (tag == "v") {
      if (rest.size() < 3) throw InputError("OBJ vertex needs three coordinates");
      m.vertices.emplace_back(parse_double(rest[0], "vertex coordinate"),
                              parse_double(rest[1], "vertex coordinate"),
                              parse_double(rest[2], "vertex coordinate"));
    } else if (tag == "f") {
      if (rest.size() != 3) throw InputError("only triangular faces are supported");
      faces.push_back({rest[0], rest[1], rest[2]});
    } else if (tag == "vn" || tag == "vt" || tag == "o" || tag == "g" || tag == "s" ||
               tag == "usemtl" || tag == "mtllib") {
      continue;
    } else {
      throw InputError("unsupported OBJ record '" + tag + "'");
    }
  }
  const int n = static_cast<int>(m.vertices.size());
  for (const auto& f : faces)
    m.triangles.push_back({parse_index(f[0], n, true), parse_index(f[1], n, true),
                           parse_index(f[2], n, true)});
  return m;
}

TriMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open mesh file " + path);
  const auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == "off") return read_off(in);
  if (ext == "obj") return read_obj(in);
  throw InputError("unknown mesh extension '" + ext + "' (expected .off or .obj)");
}

namespace {

void write_header(const TriMesh& m, std::ostream& out) {
  if (!m.space.empty()) out << "# space: " << m.space << '\n';
  if (m.truncation) out << "# truncation: " << *m.truncation << '\n';
  if (!m.outward) out << "# orientation: inward\n";
}

}  // namespace

void write_off(const TriMesh& m, std::ostream& out) {
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "OFF\n";
  write_header(m, out);
  out << m.vertices.size() << ' ' << m.triangles.size() << " 0\n";
  for (const auto& v : m.vertices) out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& t : m.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_obj(const TriMesh& m, std::ostream& out) {
  out.precision(std::numeric_limits<double>::max_digits10);
  write_header(m, out);
  for (const auto& v : m.vertices) out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& t : m.triangles)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_mesh(const TriMesh& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write mesh file " + path);
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "obj") write_obj(m, out);
  else if (ext == "off") write_off(m, out);
  else throw InputError("unknown mesh extension '" + ext + "' (expected .off or .obj)");
}

}  // namespace convexa
