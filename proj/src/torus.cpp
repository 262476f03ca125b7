#include "pantskit/torus.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace pantskit {

namespace {

const double kHexIm = std::sqrt(3.0) / 2.0;
constexpr double kCoordTol = 1e-9;

Complex hex_point(int a, int b) { return Complex(a + 0.5 * b, kHexIm * b); }

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int floor_mod(int a, int b) { return a - floor_div(a, b) * b; }

struct GridMap {
  Mat2 Tn;  // T / N
  int S = 1;

  Complex point(int i, int j) const {
    const Complex u = hex_point(i, j);
    const Vec2 v = Tn * Vec2(u.real(), u.imag()) / double(S);
    return Complex(v.x(), v.y());
  }
};

// Fills the incidence lists for the S-times-refined grid.  Vertices are the
// classes of Z^2 modulo the deck vectors (SN, 0) and (Sa, Sb); each class has
// a unique representative with i in [0, SN), j in [0, Sb).
void build_lists(TorusTriangulation& out, const GridMap& map, int a, int b) {
  const int SN = map.S * out.N;
  const int Sa = map.S * a;
  const int Sb = map.S * b;
  const int V = SN * Sb;

  out.vertices.resize(V);
  out.edges.assign(3 * V, TriEdge{});
  out.triangles.assign(2 * V, TriFace{});

  for (int j = 0; j < Sb; ++j)
    for (int i = 0; i < SN; ++i) out.vertices[j * SN + i] = map.point(i, j);

  auto vid_right = [&](int i, int j) { return j * SN + (i + 1 == SN ? 0 : i + 1); };
  auto vid_up = [&](int i, int j) {
    if (j + 1 < Sb) return (j + 1) * SN + i;
    return floor_mod(i - Sa, SN);
  };

  for (int j = 0; j < Sb; ++j) {
    for (int i = 0; i < SN; ++i) {
      const int vc = j * SN + i;
      const int vr = vid_right(i, j);
      const int vu = vid_up(i, j);
      const int vru = (j + 1 < Sb) ? vid_right(i, j + 1) : floor_mod(i + 1 - Sa, SN);
      const int vd = (j > 0) ? (j - 1) * SN + i : (Sb - 1) * SN + floor_mod(i + Sa, SN);
      const int vl = j * SN + (i == 0 ? SN - 1 : i - 1);

      const Complex pc = map.point(i, j);
      const Complex pr = map.point(i + 1, j);
      const Complex pu = map.point(i, j + 1);
      const Complex pru = map.point(i + 1, j + 1);

      TriFace& up = out.triangles[2 * vc];
      up.v[0] = vc;
      up.v[1] = vr;
      up.v[2] = vu;
      up.p[0] = pc;
      up.p[1] = pr;
      up.p[2] = pu;
      up.e[0] = 3 * vc + 0;
      up.e[1] = 3 * vc + 2;
      up.e[2] = 3 * vc + 1;

      TriFace& dn = out.triangles[2 * vc + 1];
      dn.v[0] = vr;
      dn.v[1] = vru;
      dn.v[2] = vu;
      dn.p[0] = pr;
      dn.p[1] = pru;
      dn.p[2] = pu;
      dn.e[0] = 3 * vr + 1;
      dn.e[1] = 3 * vu + 0;
      dn.e[2] = 3 * vc + 2;

      TriEdge& eh = out.edges[3 * vc + 0];
      eh.v[0] = vc;
      eh.v[1] = vr;
      eh.tri[0] = 2 * vc;
      eh.tri[1] = 2 * vd + 1;

      TriEdge& ev = out.edges[3 * vc + 1];
      ev.v[0] = vc;
      ev.v[1] = vu;
      ev.tri[0] = 2 * vc;
      ev.tri[1] = 2 * vl + 1;

      TriEdge& ed = out.edges[3 * vc + 2];
      ed.v[0] = vr;
      ed.v[1] = vu;
      ed.tri[0] = 2 * vc;
      ed.tri[1] = 2 * vc + 1;
    }
  }
}

TorusTriangulation build(Complex z0, double epsilon, int depth_override) {
  const double y0 = z0.imag();

  TorusTriangulation out;
  out.z0 = z0;
  out.epsilon = epsilon;

  // smallest scale exceeding both admissibility thresholds, doubled for margin
  const double thresh = std::max(1.0 / y0, 6.0 / (epsilon * y0));
  out.N = 2 * (static_cast<int>(std::floor(thresh)) + 1);

  // hex lattice point closest to N z0; ties broken by coefficient order
  const Complex target = double(out.N) * z0;
  const double bf = target.imag() / kHexIm;
  const double af = target.real() - 0.5 * bf;
  double best = HUGE_VAL;
  for (int db = -2; db <= 2; ++db) {
    for (int da = -2; da <= 2; ++da) {
      const int aa = static_cast<int>(std::floor(af)) + da;
      const int bb = static_cast<int>(std::floor(bf)) + db;
      const double d = std::abs(target - hex_point(aa, bb));
      if (d < best || (d == best && std::make_pair(aa, bb) <
                                        std::make_pair(out.omega_a, out.omega_b))) {
        best = d;
        out.omega_a = aa;
        out.omega_b = bb;
      }
    }
  }
  out.omega = hex_point(out.omega_a, out.omega_b);
  if (out.omega_b <= 0)
    throw Error(ErrorCode::GeometryInfeasible, "lattice anchor fell below the real axis");

  Mat2 B, C;
  B << double(out.N), out.omega.real(), 0.0, out.omega.imag();
  C << double(out.N), target.real(), 0.0, target.imag();
  out.T = C * B.inverse();

  GridMap map{out.T / double(out.N), 1};
  const Complex e1 = map.point(1, 0);
  const Complex e2 = map.point(0, 1);
  const double base_max = std::max({std::abs(e1), std::abs(e2), std::abs(e2 - e1)});
  const double base_min = std::min({std::abs(e1), std::abs(e2), std::abs(e2 - e1)});

  out.depth = 0;
  if (depth_override >= 0) {
    out.depth = depth_override;
  } else {
    double m = base_max;
    while (m > epsilon) {
      m *= 0.5;
      ++out.depth;
    }
  }
  map.S = 1 << out.depth;
  out.r = base_min / double(map.S);

  build_lists(out, map, out.omega_a, out.omega_b);
  return out;
}

}  // namespace

TorusTriangulation almost_equilateral(const FlatTorus& torus, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 0.1)
    throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 0.1]");
  if (!std::isfinite(torus.z0.real()) || !std::isfinite(torus.z0.imag()) ||
      !(torus.z0.imag() > 0.0))
    throw Error(ErrorCode::MalformedComplex, "modulus needs a positive imaginary part");
  return build(torus.z0, epsilon, -1);
}

TorusTriangulation subdivide(const TorusTriangulation& tri) {
  return build(tri.z0, tri.epsilon, tri.depth + 1);
}

namespace {

// integer coefficients of w in the basis (1, z0), or failure
bool lattice_coeffs(Complex w, Complex z0, double* alpha, double* beta) {
  const double bf = w.imag() / z0.imag();
  const double af = w.real() - bf * z0.real();
  *alpha = std::nearbyint(af);
  *beta = std::nearbyint(bf);
  return std::abs(af - *alpha) <= kCoordTol && std::abs(bf - *beta) <= kCoordTol;
}

}  // namespace

TriangulationReport verify_triangulation(const TorusTriangulation& tri, double epsilon) {
  const int V = static_cast<int>(tri.vertices.size());
  const int E = static_cast<int>(tri.edges.size());
  const int F = static_cast<int>(tri.triangles.size());
  if (V == 0 || E == 0 || F == 0)
    throw Error(ErrorCode::MalformedComplex, "empty incidence lists");
  if (!(tri.z0.imag() > 0.0))
    throw Error(ErrorCode::MalformedComplex, "modulus needs a positive imaginary part");

  for (const TriFace& f : tri.triangles)
    for (int s = 0; s < 3; ++s)
      if (f.v[s] < 0 || f.v[s] >= V || f.e[s] < 0 || f.e[s] >= E)
        throw Error(ErrorCode::MalformedComplex, "triangle references an unknown simplex");
  for (const TriEdge& e : tri.edges)
    if (e.v[0] < 0 || e.v[0] >= V || e.v[1] < 0 || e.v[1] >= V || e.tri[0] < 0 ||
        e.tri[0] >= F || e.tri[1] < 0 || e.tri[1] >= F)
      throw Error(ErrorCode::MalformedComplex, "edge references an unknown simplex");

  TriangulationReport rep;
  rep.euler_characteristic = V - E + F;

  std::vector<double> edge_len(E, -1.0);
  std::vector<int> edge_seen(E, 0);

  auto flag_triangle = [&](int t) {
    rep.incidence_ok = false;
    if (rep.offending_triangle < 0) rep.offending_triangle = t;
  };

  for (int t = 0; t < F; ++t) {
    const TriFace& f = tri.triangles[t];
    for (int s = 0; s < 3; ++s) {
      const Complex pa = f.p[s];
      const Complex pb = f.p[(s + 1) % 3];
      const Complex pc = f.p[(s + 2) % 3];

      double al, be;
      if (!lattice_coeffs(pa - tri.vertices[f.v[s]], tri.z0, &al, &be)) flag_triangle(t);

      const int eid = f.e[s];
      const TriEdge& e = tri.edges[eid];
      const bool ends_match = (e.v[0] == f.v[s] && e.v[1] == f.v[(s + 1) % 3]) ||
                              (e.v[1] == f.v[s] && e.v[0] == f.v[(s + 1) % 3]);
      if (!ends_match || (e.tri[0] != t && e.tri[1] != t)) flag_triangle(t);

      const double len = std::abs(pb - pa);
      ++edge_seen[eid];
      if (edge_len[eid] < 0.0) {
        edge_len[eid] = len;
      } else if (std::abs(edge_len[eid] - len) > kCoordTol) {
        rep.incidence_ok = false;
        if (rep.offending_edge < 0) rep.offending_edge = eid;
      }

      const Complex u = pb - pa;
      const Complex w = pc - pa;
      const double cross = u.real() * w.imag() - u.imag() * w.real();
      const double dot = u.real() * w.real() + u.imag() * w.imag();
      if (!(cross > 0.0)) {
        flag_triangle(t);
        continue;
      }
      const double dev = std::abs(std::atan2(cross, dot) - M_PI / 3.0);
      if (dev > rep.max_angle_deviation) {
        rep.max_angle_deviation = dev;
        if (dev >= epsilon && rep.offending_triangle < 0) rep.offending_triangle = t;
      }
    }
  }

  for (int k = 0; k < E; ++k)
    if (edge_seen[k] != 2) {
      rep.incidence_ok = false;
      if (rep.offending_edge < 0) rep.offending_edge = k;
    }

  rep.min_edge = HUGE_VAL;
  for (int k = 0; k < E; ++k) {
    if (edge_len[k] < 0.0) continue;
    rep.min_edge = std::min(rep.min_edge, edge_len[k]);
    rep.max_edge = std::max(rep.max_edge, edge_len[k]);
  }
  rep.edge_ratio = rep.max_edge / rep.min_edge;
  for (int k = 0; k < E && rep.offending_edge < 0; ++k)
    if (edge_len[k] >= (1.0 + 2.0 * epsilon) * rep.min_edge) rep.offending_edge = k;

  // edges whose endpoints both translate onto the marked line Im = 0 must
  // chain into a cover of the circle [0, 1)
  struct Span {
    double start, len;
  };
  std::vector<Span> marked;
  for (int t = 0; t < F; ++t) {
    const TriFace& f = tri.triangles[t];
    for (int s = 0; s < 3; ++s) {
      const int eid = f.e[s];
      if (tri.edges[eid].tri[0] != t) continue;  // visit each edge once
      const Complex pa = f.p[s];
      const Complex pb = f.p[(s + 1) % 3];
      const double bf = pa.imag() / tri.z0.imag();
      const double beta = std::nearbyint(bf);
      if (std::abs(bf - beta) > kCoordTol) continue;
      if (std::abs(pb.imag() / tri.z0.imag() - beta) > kCoordTol) continue;
      const double xa = pa.real() - beta * tri.z0.real();
      const double xb = pb.real() - beta * tri.z0.real();
      const double lo = std::min(xa, xb);
      marked.push_back({lo - std::floor(lo + kCoordTol), std::abs(xb - xa)});
    }
  }
  rep.geodesic_edges = static_cast<int>(marked.size());
  std::sort(marked.begin(), marked.end(),
            [](const Span& a, const Span& b) { return a.start < b.start; });
  if (!marked.empty() && std::abs(marked.front().start) <= 1e-7) {
    double end = 0.0;
    bool chain = true;
    for (const Span& sp : marked) {
      if (std::abs(sp.start - end) > 1e-7) {
        chain = false;
        break;
      }
      end = sp.start + sp.len;
    }
    rep.geodesic_in_skeleton = chain && std::abs(end - 1.0) <= 1e-7;
  }

  rep.pass = rep.incidence_ok && rep.euler_characteristic == 0 &&
             rep.geodesic_in_skeleton && rep.min_edge < epsilon &&
             rep.edge_ratio < 1.0 + 2.0 * epsilon && rep.max_angle_deviation < epsilon;
  return rep;
}

}  // namespace pantskit
