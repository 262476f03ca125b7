#include "pantskit/mobius.hpp"

#include <cmath>

namespace pantskit {

void Isometry::normalize() {
  const Complex dt = det();
  if (std::abs(dt) < 1e-300) throw Error(ErrorCode::DegenerateConfiguration, "singular matrix");
  m /= std::sqrt(dt);
}

UhsPoint apply_isometry(const Isometry& g, const UhsPoint& p) {
  const Complex zeta = p.zeta();
  const Complex cz_d = g.c() * zeta + g.d();
  const double D = std::norm(cz_d) + std::norm(g.c()) * p.z * p.z;
  if (D < 1e-300) throw Error(ErrorCode::DegenerateConfiguration, "image at infinity");
  const Complex zim = ((g.a() * zeta + g.b()) * std::conj(cz_d) + g.a() * std::conj(g.c()) * p.z * p.z) / D;
  return {zim, p.z / D};
}

namespace {

// Curve derivative data for g acting near j: image zeta = P/D, z = 1/D with
// P = b conj(d) + a conj(c), D = |c|^2 + |d|^2.
struct PD {
  Complex P;
  double D;
};

PD pd_of(const Mat2c& m) {
  const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  return {b * std::conj(d) + a * std::conj(c), std::norm(c) + std::norm(d)};
}

Mat2c tangent_generator(const Vec3& v) {
  // v_x Mx + v_y My + v_z Mz with Mz = diag(1/2,-1/2), Mx = [[0,1/2],[1/2,0]],
  // My = [[0,i/2],[-i/2,0]]; exp(t M) flows j along v.
  Mat2c g;
  const Complex i(0.0, 1.0);
  g << 0.5 * v.z(), 0.5 * (v.x() + i * v.y()), 0.5 * (v.x() - i * v.y()), -0.5 * v.z();
  return g;
}

Mat2c point_shift(const UhsPoint& p) {
  // Maps j to p, coordinate axes to coordinate axes.
  Mat2c t;
  const double r = std::sqrt(p.z);
  t << r, p.zeta() / r, 0.0, 1.0 / r;
  return t;
}

}  // namespace

Vec3 pushforward(const Isometry& g, const UhsPoint& p, const Vec3& v) {
  const Mat2c h = g.m * point_shift(p);
  const PD base = pd_of(h);
  const Mat2c hd = h * tangent_generator(v);
  const Complex a = h(0, 0), b = h(0, 1), c = h(1, 0), d = h(1, 1);
  const Complex ad = hd(0, 0), bd = hd(0, 1), cd = hd(1, 0), dd = hd(1, 1);
  const Complex Pd = bd * std::conj(d) + b * std::conj(dd) + ad * std::conj(c) + a * std::conj(cd);
  const double Dd = 2.0 * (cd * std::conj(c)).real() + 2.0 * (dd * std::conj(d)).real();
  const Complex zdot = (Pd * base.D - base.P * Dd) / base.D;
  const double hdot = -Dd / base.D;
  Vec3 out(zdot.real(), zdot.imag(), hdot);
  const double n = out.norm();
  const double vn = v.norm();
  if (n < 1e-300) return out;
  return out * (vn / n);
}

std::optional<ComplexLength> try_complex_translation_length(const Isometry& g) {
  Complex tr = g.trace();
  const Complex dt = g.det();
  // Long matrix products drift off det = 1 by ~e^l * eps through entry
  // rounding while their trace stays relatively accurate; renormalizing by
  // such a drifted det would corrupt the trace.  Only rescale when the input
  // is genuinely non-unit (e.g. an unnormalized adjugate).
  if (std::abs(dt - 1.0) > 1e-6) tr /= std::sqrt(dt);
  if (tr.real() < 0.0 || (tr.real() == 0.0 && tr.imag() < 0.0)) tr = -tr;
  const Complex hl = std::acosh(tr / 2.0);
  const double l = 2.0 * hl.real();
  // Below ~1e-6 the length is indistinguishable from parabolic in double
  // precision (cosh(l/2) - 1 sinks under the trace roundoff).
  if (!(l > 1e-6)) return std::nullopt;
  double theta = 2.0 * hl.imag();
  theta = std::remainder(theta, 2.0 * M_PI);
  if (theta <= -M_PI) theta += 2.0 * M_PI;
  return ComplexLength{l, theta};
}

ComplexLength complex_translation_length(const Isometry& g) {
  auto cl = try_complex_translation_length(g);
  if (!cl) throw Error(ErrorCode::NotLoxodromic, "no positive translation length");
  return *cl;
}

namespace {

// Projective difference p_u q_v - p_v q_u with infinity as (1:0).
Complex proj_diff(const Complex& u, bool u_inf, const Complex& v, bool v_inf) {
  const Complex pu = u_inf ? Complex(1, 0) : u;
  const Complex qu = u_inf ? Complex(0, 0) : Complex(1, 0);
  const Complex pv = v_inf ? Complex(1, 0) : v;
  const Complex qv = v_inf ? Complex(0, 0) : Complex(1, 0);
  return pu * qv - pv * qu;
}

bool same_endpoint(const Complex& u, bool u_inf, const Complex& v, bool v_inf) {
  if (u_inf != v_inf) return false;
  if (u_inf) return true;
  return std::abs(u - v) < 1e-12;
}

}  // namespace

Complex complex_distance_between_lines(const OrientedLine& l1, const OrientedLine& l2) {
  const bool same_from = same_endpoint(l1.from, l1.from_inf, l2.from, l2.from_inf);
  const bool same_to = same_endpoint(l1.to, l1.to_inf, l2.to, l2.to_inf);
  if (same_from && same_to) return {0.0, 0.0};
  if (same_from || same_to || same_endpoint(l1.from, l1.from_inf, l2.to, l2.to_inf) ||
      same_endpoint(l1.to, l1.to_inf, l2.from, l2.from_inf)) {
    throw Error(ErrorCode::DegenerateConfiguration, "lines share an ideal endpoint");
  }
  const Complex num = proj_diff(l1.from, l1.from_inf, l2.from, l2.from_inf) *
                      proj_diff(l1.to, l1.to_inf, l2.to, l2.to_inf);
  const Complex den = proj_diff(l1.from, l1.from_inf, l2.to, l2.to_inf) *
                      proj_diff(l1.to, l1.to_inf, l2.from, l2.from_inf);
  const Complex x = num / den;  // tanh^2(sigma/2)
  Complex sigma = 2.0 * std::atanh(std::sqrt(x));
  if (sigma.real() < 0.0) sigma = -sigma;
  double im = std::remainder(sigma.imag(), 2.0 * M_PI);
  if (im <= -M_PI) im += 2.0 * M_PI;
  return {sigma.real(), im};
}

Mat2c su2_from_quaternion(double w, double x, double y, double z) {
  const Complex i(0.0, 1.0);
  Mat2c u;
  u << w + i * z, -y + i * x, y + i * x, w - i * z;
  return u;
}

Mat2c su2_from_rotation(const Mat3& r) {
  const double trace = r(0, 0) + r(1, 1) + r(2, 2);
  double w, x, y, z;
  if (trace > 0.0) {
    double s = std::sqrt(trace + 1.0) * 2.0;
    w = 0.25 * s;
    x = (r(2, 1) - r(1, 2)) / s;
    y = (r(0, 2) - r(2, 0)) / s;
    z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    w = (r(2, 1) - r(1, 2)) / s;
    x = 0.25 * s;
    y = (r(0, 1) + r(1, 0)) / s;
    z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
    w = (r(0, 2) - r(2, 0)) / s;
    x = (r(0, 1) + r(1, 0)) / s;
    y = 0.25 * s;
    z = (r(1, 2) + r(2, 1)) / s;
  } else {
    double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
    w = (r(1, 0) - r(0, 1)) / s;
    x = (r(0, 2) + r(2, 0)) / s;
    y = (r(1, 2) + r(2, 1)) / s;
    z = 0.25 * s;
  }
  return su2_from_quaternion(w, x, y, z);
}

Mat3 rotation_from_su2(const Mat2c& u) {
  const double w = 0.5 * (u(0, 0) + u(1, 1)).real();
  const double z = 0.5 * (u(0, 0) - u(1, 1)).imag();
  const double y = 0.5 * (u(1, 0) - u(0, 1)).real();
  const double x = 0.5 * (u(1, 0) + u(0, 1)).imag();
  Mat3 r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

Mat2c u_x(double angle) { return su2_from_quaternion(std::cos(angle / 2), std::sin(angle / 2), 0, 0); }
Mat2c u_y(double angle) { return su2_from_quaternion(std::cos(angle / 2), 0, std::sin(angle / 2), 0); }
Mat2c u_z(double angle) { return su2_from_quaternion(std::cos(angle / 2), 0, 0, std::sin(angle / 2)); }

Isometry segment_op(Complex w) {
  const Complex e = std::exp(w / 2.0);
  return Isometry(e, 0.0, 0.0, 1.0 / e);
}

Isometry perp_op(Complex sigma) {
  const Complex ch = std::cosh(sigma / 2.0);
  const Complex sh = std::sinh(sigma / 2.0);
  return Isometry(ch, sh, sh, ch);
}

double rotation_angle(const Mat3& r) {
  // atan2 of (sin, cos) stays accurate near 0 where acos of the trace loses
  // half the significand.
  const double c = 0.5 * (r.trace() - 1.0);
  const Vec3 v(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  return std::atan2(0.5 * v.norm(), c);
}

}  // namespace pantskit
