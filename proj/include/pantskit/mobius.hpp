#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "pantskit/uhs.hpp"

namespace pantskit {

using Mat2c = Eigen::Matrix2cd;

// Unit-determinant Moebius matrix [[a,b],[c,d]] acting on the upper half
// space; equality is modulo global sign.
struct Isometry {
  Mat2c m;

  Isometry() : m(Mat2c::Identity()) {}
  explicit Isometry(const Mat2c& mm) : m(mm) {}
  Isometry(Complex a, Complex b, Complex c, Complex d) {
    m << a, b, c, d;
  }

  Complex a() const { return m(0, 0); }
  Complex b() const { return m(0, 1); }
  Complex c() const { return m(1, 0); }
  Complex d() const { return m(1, 1); }

  Isometry operator*(const Isometry& rhs) const { return Isometry(m * rhs.m); }
  Isometry inverse() const {
    Mat2c inv;
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return Isometry(inv);
  }
  Complex trace() const { return m(0, 0) + m(1, 1); }
  // Extended precision guards against cancellation when entries are ~e^{l/2}.
  Complex det() const {
    using CL = std::complex<long double>;
    const CL dt = CL(m(0, 0)) * CL(m(1, 1)) - CL(m(0, 1)) * CL(m(1, 0));
    return Complex(static_cast<double>(dt.real()), static_cast<double>(dt.imag()));
  }

  // Rescales so det = 1 exactly (up to rounding); throws DegenerateConfiguration
  // if the matrix is singular.
  void normalize();
};

UhsPoint apply_isometry(const Isometry& g, const UhsPoint& p);

// Pushforward of a tangent vector at p under g, computed from the derivative
// of the Moebius extension.  Exact for the generators, composition-tested.
Vec3 pushforward(const Isometry& g, const UhsPoint& p, const Vec3& v);

struct ComplexLength {
  double l = 0.0;      // translation length, > 0
  double theta = 0.0;  // rotation angle in (-pi, pi]
  Complex value() const { return {l, theta}; }
};

// 2 cosh((l + i theta)/2) = +-trace; trace normalized to Re >= 0 (tie: Im >= 0).
// Throws NotLoxodromic for elliptic/parabolic/identity input.
ComplexLength complex_translation_length(const Isometry& g);
std::optional<ComplexLength> try_complex_translation_length(const Isometry& g);

// Oriented geodesic given by ordered ideal endpoints.  Either endpoint may be
// infinity (flag); the pair must be distinct.
struct OrientedLine {
  Complex from{};
  Complex to{};
  bool from_inf = false;
  bool to_inf = false;

  static OrientedLine through(Complex a, Complex b) { return {a, b, false, false}; }
  static OrientedLine vertical(Complex foot) { return {foot, foot, false, true}; }
};

// Complex distance between oriented lines: real part = distance (0 if they
// meet), imaginary part = angle about the oriented common perpendicular,
// right-handed, valued in (-pi, pi].  Cross-ratio based.  Throws
// DegenerateConfiguration when the lines share an ideal endpoint.
Complex complex_distance_between_lines(const OrientedLine& l1, const OrientedLine& l2);

// --- SU(2) <-> SO(3) and the standard one-parameter families -------------

// Quaternion w + xi + yj + zk as [[w+iz, -y+ix],[y+ix, w-iz]].
Mat2c su2_from_quaternion(double w, double x, double y, double z);
Mat2c su2_from_rotation(const Mat3& r);
Mat3 rotation_from_su2(const Mat2c& u);

// Rotations about the coordinate axes of the tangent space at j = (0,0,1).
Mat2c u_x(double angle);
Mat2c u_y(double angle);
Mat2c u_z(double angle);

// Translation along the vertical axis with twist: diag(e^{w/2}, e^{-w/2}).
Isometry segment_op(Complex w);
// Translation by sigma along the horizontal axis through j (the x-direction).
Isometry perp_op(Complex sigma);

// Rotation angle of an SO(3) element, in [0, pi].
double rotation_angle(const Mat3& r);

}  // namespace pantskit
