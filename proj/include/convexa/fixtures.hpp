#pragma once

#include "convexa/mesh.hpp"

#include <string>
#include <vector>

namespace convexa {

// Test surfaces for the sweep classifier, meshed in chart coordinates of their ambient
// space (recorded in TriMesh::space). Resolution parameters are ring and sector counts.

inline const char* kSphereProduct = "product base=sphere r=1 fiber=line";

// Geodesic sphere of radius R about (θ0, φ0, t0) in S²×ℝ.
TriMesh sphere_fixture(double R = 0.3, double t0 = 0.7, int rings = 50, int sectors = 100,
                       double theta0 = 1.5707963267948966, double phi0 = 0.0);
// Two disjoint geodesic spheres side by side at the same height.
TriMesh sphere_pair_fixture(double R = 0.3, double t0 = 0.7, int rings = 40, int sectors = 80);
// Convex surface of revolution, wider above its mid-height: ρ = R sin β (1 + ¼ cos β).
TriMesh egg_fixture(double R = 0.3, double t0 = 0.7, int rings = 50, int sectors = 100);
// t = 1/(ρ0 − d) over the geodesic disk of radius ρ0, cut at the truncation height.
TriMesh graph_fixture(double rho0 = 1.0, double truncation = 20.0, int rings = 64, int sectors = 96);
// Round-profile tube of circles of radius ≤ r0 on the capped cylinder; immersed once r0 > π.
TriMesh remark_tube_fixture(double l = 10.0, double r0 = 3.6, int rings = 48, int sectors = 160);
// Torus standing on its rim: center circle of radius Rc in a vertical plane, tube radius a.
TriMesh torus_fixture(double Rc = 0.3, double a = 0.1, double t0 = 0.7, int nu = 120, int nv = 40);
// Tube of radius a about a figure-eight in a vertical plane.
TriMesh figure_eight_fixture(double A = 0.3, double a = 0.05, double t0 = 0.7, int nu = 160, int nv = 24);
// Heisenberg graph z = x² + y² over the disk of the given radius, cut at z = radius².
TriMesh heisenberg_graph_fixture(double radius = 1.0, double tau = 0.5, int rings = 32, int sectors = 64);
// Heisenberg vertical plane y = 0 over [−extent, extent]².
TriMesh heisenberg_vertical_plane_fixture(double extent = 1.0, double tau = 0.5, int n = 24);

std::vector<std::string> fixture_names();
// Default-parameter fixture by name; resolution scales ring and sector counts.
TriMesh make_fixture(const std::string& name, double resolution = 1.0);

}  // namespace convexa
