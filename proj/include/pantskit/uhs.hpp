#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pantskit/errors.hpp"

namespace pantskit {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Complex = std::complex<double>;

// Point of the upper half-space model, z > 0.  The ideal point at infinity is
// the cusp direction throughout: horospheres about it are the planes z = const.
struct UhsPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  UhsPoint() = default;
  UhsPoint(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
  UhsPoint(Complex zeta, double height) : x(zeta.real()), y(zeta.imag()), z(height) {}

  Complex zeta() const { return {x, y}; }
  Vec3 as_vec() const { return {x, y, z}; }
};

// cosh d = 1 + (|dxy|^2 + dz^2) / (2 z_p z_q), evaluated through
// d = 2 asinh(sqrt(s / (4 z_p z_q))) so that nearby points lose no precision.
double uhs_distance(const UhsPoint& p, const UhsPoint& q);

// Same distance with all magnitudes carried as logarithms; usable when the
// separation or the height ratio overflows doubles.  Agrees with uhs_distance
// to 1e-9 relative on the window d in [20, 40].
double uhs_distance_log(double log_s, double log_zp, double log_zq);

double height_above_horosphere(const UhsPoint& p, double reference_height);

// Unit tangent at p of the geodesic from p toward q.
Vec3 geodesic_direction(const UhsPoint& p, const UhsPoint& q);

// Distance from p to the geodesic with ideal endpoints a, b (finite complex).
double distance_to_line(const UhsPoint& p, Complex a, Complex b);

}  // namespace pantskit
