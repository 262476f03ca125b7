#include "pantskit/uhs.hpp"

#include <cmath>

namespace pantskit {

double uhs_distance(const UhsPoint& p, const UhsPoint& q) {
  if (p.z <= 0.0 || q.z <= 0.0) throw Error(ErrorCode::OutOfDomain, "point height must be positive");
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double dz = p.z - q.z;
  const double s = dx * dx + dy * dy + dz * dz;
  return 2.0 * std::asinh(std::sqrt(s / (4.0 * p.z * q.z)));
}

double uhs_distance_log(double log_s, double log_zp, double log_zq) {
  // d = 2 asinh(e^h) with h = (log s - log 4 - log zp - log zq) / 2
  const double h = 0.5 * (log_s - std::log(4.0) - log_zp - log_zq);
  if (h > 0.0) {
    return 2.0 * (h + std::log1p(std::sqrt(1.0 + std::exp(-2.0 * h))));
  }
  return 2.0 * std::asinh(std::exp(h));
}

double height_above_horosphere(const UhsPoint& p, double reference_height) {
  if (reference_height <= 0.0) throw Error(ErrorCode::OutOfDomain, "reference height must be positive");
  const double h = std::log(p.z / reference_height);
  return h > 0.0 ? h : 0.0;
}

Vec3 geodesic_direction(const UhsPoint& p, const UhsPoint& q) {
  // Normalize p to (0,0,1): w -> (w - zeta_p) / z_p on the boundary.
  const double qx = (q.x - p.x) / p.z;
  const double qy = (q.y - p.y) / p.z;
  const double qz = q.z / p.z;
  const double h = std::hypot(qx, qy);
  if (h < 1e-300) {
    if (std::abs(qz - 1.0) < 1e-300) throw Error(ErrorCode::DegenerateConfiguration, "coincident points");
    return {0.0, 0.0, qz > 1.0 ? 1.0 : -1.0};
  }
  const double c = (h * h + qz * qz - 1.0) / (2.0 * h);
  const double norm = std::sqrt(1.0 + c * c);
  return {qx / (h * norm), qy / (h * norm), c / norm};
}

double distance_to_line(const UhsPoint& p, Complex a, Complex b) {
  if (std::abs(a - b) < 1e-300) throw Error(ErrorCode::DegenerateConfiguration, "line endpoints coincide");
  // Send a -> 0, b -> infinity via g = [[1,-a],[1,-b]]/s with s^2 = a-b;
  // then sinh d = |zeta'| / z'.
  const Complex s = std::sqrt(a - b);
  const Complex zeta = p.zeta();
  const Complex cg = 1.0 / s;
  const Complex dg = -b / s;
  const Complex ag = 1.0 / s;
  const Complex bg = -a / s;
  const double denom = std::norm(cg * zeta + dg) + std::norm(cg) * p.z * p.z;
  const Complex zim = ((ag * zeta + bg) * std::conj(cg * zeta + dg) + ag * std::conj(cg) * p.z * p.z) / denom;
  const double him = p.z / denom;
  return std::asinh(std::abs(zim) / him);
}

}  // namespace pantskit
