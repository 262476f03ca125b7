#pragma once

#include <vector>

#include "pantskit/errors.hpp"
#include "pantskit/uhs.hpp"

namespace pantskit {

using Mat2 = Eigen::Matrix2d;

// Flat torus C / (Z + Z z0) with the marked closed geodesic normalized to the
// segment 0 -> 1.
struct FlatTorus {
  Complex z0;
};

struct TriEdge {
  int v[2] = {-1, -1};
  int tri[2] = {-1, -1};
};

struct TriFace {
  int v[3] = {-1, -1, -1};
  // e[s] joins corners s and s+1 (mod 3)
  int e[3] = {-1, -1, -1};
  // unwrapped corner coordinates, counterclockwise; congruent to the
  // referenced vertex coordinates modulo the lattice
  Complex p[3];
};

// Quotient of the hexagonal lattice triangulation under an affine map chosen
// so the marked geodesic runs along lattice edges.  Every triangle is the
// image of a unit equilateral scaled by 2^{-depth}, so all triangles are
// congruent and subdivision preserves their similarity class.
struct TorusTriangulation {
  Complex z0;
  double epsilon = 0.0;
  int N = 0;
  Complex omega;    // hex lattice point closest to N z0
  int omega_a = 0;  // omega = omega_a + omega_b (1 + sqrt(3) i) / 2
  int omega_b = 0;
  Mat2 T;           // real-linear, (N, omega) |-> (N, N z0)
  int depth = 0;
  double r = 0.0;   // shortest edge length
  std::vector<Complex> vertices;
  std::vector<TriEdge> edges;
  std::vector<TriFace> triangles;
};

// Builds the almost-equilateral triangulation: picks the smallest admissible
// lattice scale (then doubles it for margin), maps the hexagonal grid onto
// the torus, and bisects edges until none is longer than epsilon.
TorusTriangulation almost_equilateral(const FlatTorus& torus, double epsilon);

// Midpoint subdivision: same construction one depth deeper.
TorusTriangulation subdivide(const TorusTriangulation& tri);

struct TriangulationReport {
  double min_edge = 0.0;
  double max_edge = 0.0;
  double edge_ratio = 0.0;
  double max_angle_deviation = 0.0;  // from pi/3
  bool geodesic_in_skeleton = false;
  int geodesic_edges = 0;
  int euler_characteristic = 0;
  bool incidence_ok = true;
  int offending_triangle = -1;
  int offending_edge = -1;
  bool pass = false;
};

// Recomputes every edge length and inner angle from the stored coordinates
// and checks the contract: edge ratio below 1 + 2 epsilon with shortest edge
// below epsilon, all angles within epsilon of pi/3, marked geodesic covered
// by edges, consistent incidence with Euler characteristic 0.
TriangulationReport verify_triangulation(const TorusTriangulation& tri, double epsilon);

}  // namespace pantskit
