#pragma once

#include "convexa/kernel.hpp"

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace convexa {

// Triangle mesh whose vertices are chart points of the ambient space. Periodic chart
// coordinates may be stored unwrapped; every geometric operation re-unwraps per triangle.
struct TriMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::string space;                 // spec of the ambient space, "" if unbound
  std::optional<double> truncation;  // height at which an unbounded surface was cut
  bool outward = true;               // orientation flag: triangle winding gives the outer normal
};

struct MeshTopology {
  int vertices = 0;  // referenced vertices only
  int edges = 0;
  int faces = 0;
  int boundary_edges = 0;
  int euler() const { return vertices - edges + faces; }
};

// Shift b by multiples of the chart periods so it lies closest to a.
Eigen::Vector3d unwrap_near(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                            const std::vector<double>& periods);
// Triangle corners unwrapped relative to the first corner.
std::array<Eigen::Vector3d, 3> triangle_corners(const TriMesh& m, int t,
                                                const std::vector<double>& periods);

// Throws InputError on out-of-range indices, edges with more than two triangles,
// inconsistent orientation, or triangles of area ≤ 1e−12.
void validate_mesh(const TriMesh& m, const std::vector<double>& periods);
MeshTopology mesh_topology(const TriMesh& m);

// Boundary loops as vertex index cycles.
std::vector<std::vector<int>> boundary_loops(const TriMesh& m);

// Splits every triangle 4-to-1 at (unwrapped) edge midpoints.
TriMesh refine_4to1(const TriMesh& m, const std::vector<double>& periods);

TriMesh translate_fiber(const TriMesh& m, int coordinate, double shift);

// OFF and OBJ with header comments `# space: <spec>` and `# truncation: <height>`.
TriMesh read_mesh(const std::string& path);
TriMesh read_off(std::istream& in);
TriMesh read_obj(std::istream& in);
void write_mesh(const TriMesh& m, const std::string& path);
void write_off(const TriMesh& m, std::ostream& out);
void write_obj(const TriMesh& m, std::ostream& out);

}  // namespace convexa
